"""Generators, domains between them, and the index formulas.

The corner condition is one integer linear system per diagram: rows are
intersection points, columns are regions other than the basepoint
region, entries from the quadrant pattern at each point.  A domain
between generators is a solution with the indicator difference of the
generators as right-hand side; periodic domains are the kernel.  The
system is diagonalized once per diagram and reused for every query.

CORNER_TARGET_SIGN fixes the global direction of the corner condition
(which of the two generators a positive count flows from).  Its value
is pinned by the requirement that the distinguished generator of an
open book is a cycle of the differential; the floer tests assert this
on every fixture.
"""

from fractions import Fraction

from . import exactla
from .diagram import euler_measure, point_measure
from .errors import FormulaMismatch, NonIntegerIndex

CORNER_TARGET_SIGN = -1


class Generator:
    """A matching: one intersection point per curve of each family.

    points[i] lies on alpha curve i+1; the permutation sends each alpha
    index to the beta index of its chosen point.
    """

    __slots__ = ("diagram", "points", "perm")

    def __init__(self, diagram, points):
        self.diagram = diagram
        self.points = tuple(points)
        self.perm = tuple(diagram.points[p].beta for p in self.points)

    def label(self):
        return "{%s}" % ",".join(self.points)

    def __eq__(self, other):
        return isinstance(other, Generator) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __lt__(self, other):
        return self.points < other.points

    def __repr__(self):
        return "Generator(%s)" % ",".join(self.points)


def cycle_count(x):
    """Number of cycles of the generator's permutation, fixed points included."""
    perm = x.perm if hasattr(x, "perm") else tuple(x)
    g = len(perm)
    seen = [False] * g
    cycles = 0
    for start in range(g):
        if seen[start]:
            continue
        cycles += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i] - 1
    return cycles


class Domain:
    """Integer multiplicities over all regions, from source to target."""

    __slots__ = ("diagram", "coefficients", "source", "target")

    def __init__(self, diagram, coefficients, source, target):
        self.diagram = diagram
        self.coefficients = tuple(int(c) for c in coefficients)
        self.source = source
        self.target = target

    @property
    def basepoint_coefficient(self):
        return self.coefficients[self.diagram.basepoint_region]

    @property
    def is_positive(self):
        return all(c >= 0 for c in self.coefficients)

    def __repr__(self):
        return "Domain(%s -> %s, %s)" % (self.source, self.target, self.coefficients)


class PeriodicDomain:
    """Kernel element of the corner system with basepoint coefficient 0."""

    __slots__ = ("diagram", "coefficients")

    def __init__(self, diagram, coefficients):
        self.diagram = diagram
        self.coefficients = tuple(int(c) for c in coefficients)

    def as_domain(self, x):
        return Domain(self.diagram, self.coefficients, x, x)


def compose(d1, d2):
    if d1.diagram is not d2.diagram or d1.target != d2.source:
        raise ValueError("domains are not composable")
    coeffs = [a + b for a, b in zip(d1.coefficients, d2.coefficients)]
    return Domain(d1.diagram, coeffs, d1.source, d2.target)


# -- the corner-condition system ----------------------------------------


class _CornerSystem:
    def __init__(self, diagram):
        self.diagram = diagram
        self.names = diagram.canonical_point_names()
        self.name_index = {n: i for i, n in enumerate(self.names)}
        self.z = diagram.basepoint_region
        self.cols = [r.id for r in diagram.regions if r.id != self.z]
        matrix = []
        for name in self.names:
            row = diagram.alt_row(name)
            matrix.append([row.get(c, 0) for c in self.cols])
        self.matrix = matrix
        self.U, self.S, self.V = exactla.integer_diagonalize(matrix)
        m, n = len(self.names), len(self.cols)
        rank = 0
        while rank < min(m, n) and self.S[rank][rank] != 0:
            rank += 1
        self.rank = rank
        kernel = [[self.V[i][j] for i in range(n)] for j in range(rank, n)]
        self.kernel = [self._expand(vec) for vec in kernel]

    def _expand(self, reduced):
        full = [0] * len(self.diagram.regions)
        for c, value in zip(self.cols, reduced):
            full[c] = value
        return full

    def delta(self, x, y):
        rhs = [0] * len(self.names)
        for p in y.points:
            rhs[self.name_index[p]] += CORNER_TARGET_SIGN
        for p in x.points:
            rhs[self.name_index[p]] -= CORNER_TARGET_SIGN
        return rhs

    def solve(self, rhs):
        m, n = len(self.names), len(self.cols)
        c = exactla._mat_vec(self.U, rhs)
        y = [0] * n
        for t in range(self.rank):
            d = self.S[t][t]
            if c[t] % d:
                return None
            y[t] = c[t] // d
        for i in range(self.rank, m):
            if c[i] != 0:
                return None
        return self._expand(exactla._mat_vec(self.V, y))

    def spinc_label(self, x):
        rhs = [0] * len(self.names)
        for p in x.points:
            rhs[self.name_index[p]] += 1
        c = exactla._mat_vec(self.U, rhs)
        head = tuple(c[t] % abs(self.S[t][t]) for t in range(self.rank))
        tail = tuple(c[i] for i in range(self.rank, len(self.names)))
        return head + tail


def _corner_system(diagram):
    system = getattr(diagram, "_corner_system", None)
    if system is None:
        system = _CornerSystem(diagram)
        diagram._corner_system = system
    return system


# -- operations ---------------------------------------------------------


def enumerate_generators(diagram):
    """All matchings, grouped by class and ordered lexicographically."""
    if diagram.degenerate:
        return []
    cached = getattr(diagram, "_generator_cache", None)
    if cached is not None:
        return list(cached)
    g = diagram.g_count
    by_alpha = {i: sorted(diagram.alpha_orders[i]) for i in range(1, g + 1)}
    out = []
    chosen = []
    used_beta = set()

    def recurse(i):
        if i > g:
            out.append(Generator(diagram, list(chosen)))
            return
        for name in by_alpha[i]:
            b = diagram.points[name].beta
            if b in used_beta:
                continue
            used_beta.add(b)
            chosen.append(name)
            recurse(i + 1)
            chosen.pop()
            used_beta.remove(b)

    recurse(1)
    out.sort()
    classes, _ = spinc_classes(diagram, _generators=out)
    flat = []
    for cls in classes:
        flat.extend(cls)
    diagram._generator_cache = flat
    return list(flat)


def spinc_classes(diagram, _generators=None):
    """Partition of the generators by domain solvability.

    Returns (classes, contact_index): classes is a list of generator
    lists, each sorted, ordered by their least member; contact_index
    names the class containing the distinguished open-book generator
    when the diagram records one.
    """
    if diagram.degenerate:
        return [], None
    gens = _generators
    if gens is None:
        gens = enumerate_generators(diagram)
    system = _corner_system(diagram)
    buckets = {}
    for x in sorted(set(gens)):
        buckets.setdefault(system.spinc_label(x), []).append(x)
    classes = sorted(buckets.values(), key=lambda cls: cls[0].points)
    contact_index = None
    if diagram.contact_points:
        key = tuple(sorted(diagram.contact_points,
                           key=lambda p: diagram.points[p].alpha))
        for k, cls in enumerate(classes):
            if any(x.points == key for x in cls):
                contact_index = k
                break
    return classes, contact_index


def domain_between(x, y):
    """A domain with basepoint coefficient 0 from x to y, plus the lattice.

    Returns (domain | None, lattice) where lattice is the list of
    periodic-domain basis elements of the diagram.
    """
    diagram = x.diagram
    system = _corner_system(diagram)
    lattice = periodic_domains(diagram)
    solution = system.solve(system.delta(x, y))
    if solution is None:
        return None, lattice
    return Domain(diagram, solution, x, y), lattice


def periodic_domains(diagram):
    """Basis of the lattice of periodic domains (basepoint coefficient 0)."""
    system = _corner_system(diagram)
    return [PeriodicDomain(diagram, vec) for vec in system.kernel]


def weak_admissibility(diagram):
    """True iff every nonzero periodic domain has both signs."""
    basis = periodic_domains(diagram)
    if not basis:
        return True
    nregions = len(diagram.regions)
    k = len(basis)
    ineqs = []
    for r in range(nregions):
        ineqs.append(([b.coefficients[r] for b in basis], 0))
    total = [sum(b.coefficients[r] for r in range(nregions)) for b in basis]
    ineqs.append((total, -1))
    # a rational ray with all coefficients >= 0 and positive total exists
    # exactly when some nonzero periodic domain is non-negative
    return not exactla.fm_feasible(ineqs, k)


def maslov(domain):
    """e(D) + n_source(D) + n_target(D); integer for genuine classes."""
    total = euler_measure(domain)
    for p in domain.source.points:
        total += point_measure(p, domain)
    for p in domain.target.points:
        total += point_measure(p, domain)
    if total.denominator != 1:
        raise NonIntegerIndex(
            "index %s is not an integer; the corner condition is violated"
            % total)
    return int(total)


def j_plus(domain):
    """The non-negative even grading of counted domains.

    Evaluated through two arithmetic routes that must agree: the direct
    point-measure form and the index form.
    """
    direct = Fraction(0)
    for p in domain.source.points:
        direct += point_measure(p, domain)
    for p in domain.target.points:
        direct += point_measure(p, domain)
    direct -= euler_measure(domain)
    direct += cycle_count(domain.source) - cycle_count(domain.target)

    via_index = maslov(domain) - 2 * euler_measure(domain) \
        + cycle_count(domain.source) - cycle_count(domain.target)

    if direct != via_index:
        raise FormulaMismatch(
            "index routes disagree: %s vs %s" % (direct, via_index))
    if direct.denominator != 1:
        raise NonIntegerIndex(
            "grading %s is not an integer; the corner condition is violated"
            % direct)
    return int(direct)

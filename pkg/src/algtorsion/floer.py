"""The hat chain complex over the two-element field, weighted by half J+.

Counting happens on nice diagrams only: there every positive index-1
domain avoiding the basepoint region is an empty embedded bigon or
square, so the count is finite combinatorics.  For each ordered pair of
generators the solution set of the corner condition is a particular
solution plus the periodic lattice; positivity and the index constraint
cut out a finite polytope whose lattice points are enumerated exactly.

Each counted domain carries weight k with 2k equal to its J+ value.
The differential splits as the sum of its weight-homogeneous parts,
stored as one matrix per weight.
"""

import warnings
from fractions import Fraction

import numpy as np

from . import exactla
from .diagram import content_hash, euler_measure, point_measure
from .errors import (
    AdmissibilityWarning,
    DifferentialNotSquareZero,
    InvariantViolation,
    LeibnizViolation,
    NoProvenance,
    NotNice,
    OddJPlus,
    ParseError,
)
from .homotopy import (
    Domain,
    Generator,
    _corner_system,
    maslov,
    j_plus,
    periodic_domains,
    spinc_classes,
    weak_admissibility,
)


def is_nice(diagram):
    """(flag, offending region ids): every non-basepoint region must be a
    disk with at most four corners."""
    if diagram.degenerate:
        return True, []
    offending = []
    for region in diagram.regions:
        if region.id == diagram.basepoint_region:
            continue
        if not (region.is_disk and region.corner_count <= 4):
            offending.append(region.id)
    return not offending, offending


def contact_generator(diagram):
    """The distinguished generator recorded by the open-book construction."""
    points = diagram.contact_points
    if not points:
        raise NoProvenance("diagram does not record open-book contact points")
    for name in points:
        if name not in diagram.points:
            raise NoProvenance("recorded contact point %r is not in the diagram"
                               % name)
    ordered = sorted(points, key=lambda p: diagram.points[p].alpha)
    alphas = [diagram.points[p].alpha for p in ordered]
    if alphas != list(range(1, diagram.g_count + 1)):
        raise NoProvenance("contact points do not select one point per curve")
    x = Generator(diagram, ordered)
    if x.perm != tuple(range(1, diagram.g_count + 1)):
        raise NoProvenance("contact points do not pair matching curves")
    return x


class WeightedComplex:
    """Generators of one class plus the weight-split differential.

    deltas[k][i][j] = 1 exactly when generator j flows to generator i
    through an odd number of weight-k domains.
    """

    def __init__(self, diagram, generators, deltas, spinc_index=0):
        self.diagram = diagram
        self.generators = tuple(generators)
        n = len(self.generators)
        self.deltas = {int(k): np.array(m, dtype=np.uint8) % 2
                       for k, m in deltas.items()
                       if np.any(np.array(m, dtype=np.uint8) % 2)}
        for m in self.deltas.values():
            if m.shape != (n, n):
                raise ValueError("differential block has wrong shape")
        self.max_weight = max(self.deltas, default=0)
        self.spinc_index = int(spinc_index)
        self.basepoint = None if diagram.degenerate else diagram.basepoint_region

    def __len__(self):
        return len(self.generators)

    def delta(self, k):
        n = len(self.generators)
        return self.deltas.get(k, np.zeros((n, n), dtype=np.uint8))

    def total(self):
        n = len(self.generators)
        out = np.zeros((n, n), dtype=np.uint8)
        for m in self.deltas.values():
            out ^= m
        return out

    def index_of(self, generator):
        for i, g in enumerate(self.generators):
            if g == generator:
                return i
        raise ValueError("generator %r is not in this class" % (generator,))

    def verify_square_zero(self):
        total = self.total()
        if np.any(exactla.gf2_mul(total, total)):
            raise DifferentialNotSquareZero(
                "total differential does not square to zero")

    def verify_graded_leibniz(self):
        n = len(self.generators)
        for k in range(2 * self.max_weight + 1):
            acc = np.zeros((n, n), dtype=np.uint8)
            for i in range(k + 1):
                acc ^= exactla.gf2_mul(self.delta(i), self.delta(k - i))
            if np.any(acc):
                raise LeibnizViolation(
                    "graded pieces of the squared differential do not vanish "
                    "at weight %d" % k)

    def triplets(self):
        """Sorted sparse entries (source index, target index, weight)."""
        out = []
        for k in sorted(self.deltas):
            m = self.deltas[k]
            for tgt, src in zip(*np.nonzero(m)):
                out.append((int(src), int(tgt), int(k)))
        out.sort()
        return out

    def weights_seen(self):
        return sorted(self.deltas)


# -- counting -------------------------------------------------------------


def _resolve_class(diagram, spinc_class):
    if isinstance(spinc_class, int):
        classes, _ = spinc_classes(diagram)
        if not 0 <= spinc_class < len(classes):
            raise ValueError("no class with index %d" % spinc_class)
        return list(classes[spinc_class]), spinc_class
    gens = sorted(set(spinc_class))
    if not gens:
        raise ValueError("empty generator class")
    classes, _ = spinc_classes(diagram)
    for i, cls in enumerate(classes):
        if gens[0] in cls:
            if gens != cls:
                raise ValueError("generators do not form a full class")
            return list(cls), i
    raise ValueError("generators not found in the diagram")


def _mu_shift(vec, x, y):
    """Index contribution of adding the coefficient vector to a domain
    from x to y."""
    carrier = Domain(x.diagram, vec, x, y)
    total = euler_measure(carrier)
    for p in x.points:
        total += point_measure(p, carrier)
    for p in y.points:
        total += point_measure(p, carrier)
    return total


def _is_empty(domain):
    x = set(domain.source.points)
    y = set(domain.target.points)
    for p in sorted(x | y):
        value = point_measure(p, domain)
        if p in x and p in y:
            if value != 0:
                return False
        elif value != Fraction(1, 4):
            return False
    return True


def _counted_domains(diagram, x, y):
    """Positive index-1 empty domains from x to y missing the basepoint."""
    system = _corner_system(diagram)
    basis = [p.coefficients for p in periodic_domains(diagram)]
    particular = system.solve(system.delta(x, y))
    if particular is None:
        return []
    nregions = len(diagram.regions)
    base = Domain(diagram, particular, x, y)
    mu0 = _mu_shift(particular, x, y)
    out = []
    if not basis:
        candidates = [particular]
    else:
        k = len(basis)
        ineqs = []
        for r in range(nregions):
            ineqs.append(([b[r] for b in basis], particular[r]))
        slopes = [_mu_shift(b, x, y) for b in basis]
        ineqs.append((slopes, mu0 - 1))
        ineqs.append(([-s for s in slopes], 1 - mu0))
        try:
            points = exactla.enumerate_lattice_points(ineqs, k)
        except exactla.UnboundedPolyhedron:
            raise InvariantViolation(
                "unbounded family of positive domains; the diagram is not "
                "weakly admissible")
        candidates = []
        for t in points:
            vec = list(particular)
            for coeff, b in zip(t, basis):
                for r in range(nregions):
                    vec[r] += coeff * b[r]
            candidates.append(vec)
    for vec in candidates:
        domain = Domain(diagram, vec, x, y)
        if not domain.is_positive:
            continue
        if domain.basepoint_coefficient != 0:
            continue
        if maslov(domain) != 1:
            continue
        if not _is_empty(domain):
            continue
        out.append(domain)
    return out


def differential(diagram, spinc_class):
    """Assemble the weighted complex of one class by counting empty
    embedded bigons and squares mod 2."""
    nice, offending = is_nice(diagram)
    if not nice:
        raise NotNice("diagram has non-bigon/square regions away from the "
                      "basepoint: %s" % offending, offending)
    generators, spinc_index = _resolve_class(diagram, spinc_class)
    if not weak_admissibility(diagram):
        warnings.warn("diagram is not weakly admissible; counts may be "
                      "meaningless", AdmissibilityWarning, stacklevel=2)
    n = len(generators)
    parity = {}
    for ix, x in enumerate(generators):
        for iy, y in enumerate(generators):
            if ix == iy:
                continue
            for domain in _counted_domains(diagram, x, y):
                jp = j_plus(domain)
                if jp % 2:
                    raise OddJPlus("counted domain from %s to %s has odd "
                                   "J+ value %d" % (x.label(), y.label(), jp))
                if jp < 0:
                    raise InvariantViolation(
                        "counted domain from %s to %s has negative J+ value %d"
                        % (x.label(), y.label(), jp))
                key = (ix, iy, jp // 2)
                parity[key] = parity.get(key, 0) ^ 1
    deltas = {}
    for (ix, iy, k), bit in sorted(parity.items()):
        if not bit:
            continue
        if k not in deltas:
            deltas[k] = np.zeros((n, n), dtype=np.uint8)
        deltas[k][iy][ix] = 1
    return WeightedComplex(diagram, generators, deltas, spinc_index)


def homology(complex_):
    """Rank of ker/im of the total differential over the two-element field."""
    complex_.verify_square_zero()
    n = len(complex_.generators)
    r = exactla.gf2_rank(complex_.total())
    return n - 2 * r


# -- sparse dump and reload -------------------------------------------------


def dump_complex(complex_):
    """Sparse triplet text: header naming the diagram hash, then one
    `source target weight` line per entry."""
    lines = ["# diagram %s spinc %d generators %d"
             % (content_hash(complex_.diagram), complex_.spinc_index,
                len(complex_.generators))]
    for src, tgt, k in complex_.triplets():
        lines.append("%d %d %d" % (src, tgt, k))
    return "\n".join(lines) + "\n"


def load_complex(text, diagram):
    """Rebuild a dumped complex against the same diagram."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("# diagram "):
        raise ParseError("missing complex header")
    fields = lines[0].split()
    if len(fields) != 7 or fields[3] != "spinc" or fields[5] != "generators":
        raise ParseError("malformed complex header")
    if fields[2] != content_hash(diagram):
        raise ParseError("complex dump does not match the diagram")
    spinc_index = int(fields[4])
    count = int(fields[6])
    classes, _ = spinc_classes(diagram)
    if not 0 <= spinc_index < len(classes):
        raise ParseError("dump names a class the diagram does not have")
    generators = classes[spinc_index]
    if len(generators) != count:
        raise ParseError("dump generator count does not match the diagram")
    n = count
    deltas = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ParseError("malformed triplet %r" % ln)
        src, tgt, k = (int(v) for v in parts)
        if not (0 <= src < n and 0 <= tgt < n and k >= 0):
            raise ParseError("triplet out of range %r" % ln)
        if k not in deltas:
            deltas[k] = np.zeros((n, n), dtype=np.uint8)
        deltas[k][tgt][src] ^= 1
    return WeightedComplex(diagram, generators, deltas, spinc_index)

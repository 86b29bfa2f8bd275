"""Open books and their pointed Heegaard diagrams.

An open book is a page (compact oriented surface with boundary), an arc
basis cutting the page into a single polygon, and a monodromy.  Two
pages are built in: the annulus (g=0, b=2) and the once-punctured torus
(g=1, b=1).  A monodromy is a word in right-handed Dehn twists along a
small catalog of named curves, or an explicit normal-coordinate word
per basis arc.

Pages carry exact rational coordinates.  The annulus is S^1 x [0,1]
with the angle taken mod 1; the punctured torus is R^2/Z^2 minus an
open square hole centered at (1/2, 1/2).  Arcs are polylines and twists
are piecewise-affine shears supported in bands away from the boundary,
so twist images stay polylines with rational vertices and every
intersection is computed exactly.

The diagram doubles the page: the Heegaard surface is the page copy at
level 1/2 glued along the binding to an orientation-reversed copy at
level 0.  Each alpha curve doubles a basis arc; each beta curve is the
pushoff on the 1/2 copy glued to its monodromy image on the 0 copy.
Traversal on the 0 copy runs backwards and crossing signs there flip.
Faces of each copy are traced combinatorially from crossing orders and
signs; complementary regions of the closed surface are unions of page
pieces glued across binding gaps, and non-disk regions are emitted as
explicit face groups.  The basepoint sits in the region touching the
binding just past the start of the first pushoff, outside every
pushoff strip, and the pushoff crossings x_i form the distinguished
generator recorded with the diagram.
"""

import functools
import math
from fractions import Fraction

from . import diagram as dg
from .diagram import Point
from .errors import (
    InvalidArcBasis,
    InvalidMonodromy,
    ParseError,
    UnknownCurve,
    UnsupportedPage,
)


# -- exact polyline helpers ---------------------------------------------


def _normalize_path(path):
    """Drop repeated vertices and straighten collinear interior ones."""
    pts = [(Fraction(p[0]), Fraction(p[1])) for p in path]
    out = [pts[0]]
    for p in pts[1:]:
        if p != out[-1]:
            out.append(p)
    if len(out) < 2:
        raise AssertionError("degenerate arc")
    i = 1
    while i + 1 < len(out):
        (x0, y0), (x1, y1), (x2, y2) = out[i - 1], out[i], out[i + 1]
        if (x1 - x0) * (y2 - y1) == (y1 - y0) * (x2 - x1):
            del out[i]
        else:
            i += 1
    return out


def _insert_breaks(path, axis, offsets):
    """Subdivide segments where coordinate `axis` crosses k + offset."""
    out = [path[0]]
    for p, q in zip(path, path[1:]):
        c0, c1 = p[axis], q[axis]
        if c0 != c1:
            vs = []
            for off in offsets:
                v = math.floor(min(c0, c1) - off) + off
                while v <= min(c0, c1):
                    v += 1
                while v < max(c0, c1):
                    vs.append(v)
                    v += 1
            vs.sort(reverse=c0 > c1)
            for v in vs:
                t = (v - c0) / (c1 - c0)
                out.append((p[0] + t * (q[0] - p[0]),
                            p[1] + t * (q[1] - p[1])))
        out.append(q)
    return out


def _stair(u):
    """Staircase shear profile: constant off the band, slope 8 inside."""
    k = math.floor(u)
    f = u - k
    if f <= Fraction(1, 8):
        return Fraction(k)
    if f >= Fraction(1, 4):
        return Fraction(k + 1)
    return k + (f - Fraction(1, 8)) * 8


# -- page models --------------------------------------------------------


class _AnnulusPage:
    """S^1 x [0,1]; one basis arc a1 = {theta = 0} oriented upward."""

    name = "annulus"
    g = 0
    b = 2
    curves = ("core",)
    EPS = Fraction(1, 16)

    def a_paths(self):
        return {1: [(Fraction(0), Fraction(0)), (Fraction(0), Fraction(1))]}

    def pushoffs(self):
        # endpoints pushed along the binding orientation: +theta on the
        # r=0 circle, -theta on the r=1 circle
        return {1: [(self.EPS, Fraction(0)), (-self.EPS, Fraction(1))]}

    def boundary_position(self, v):
        th, r = v
        if r == 0:
            return (0, th % 1)
        if r == 1:
            return (1, (-th) % 1)
        raise AssertionError("point not on the binding")

    def twist(self, name, n, path):
        if name != "core":
            raise UnknownCurve("annulus page has no curve %r" % (name,))
        lo, hi = Fraction(3, 8), Fraction(5, 8)
        path = _insert_breaks(path, 1, (lo, hi))

        def ramp(r):
            if r <= lo:
                return Fraction(0)
            if r >= hi:
                return Fraction(1)
            return (r - lo) * 4

        return _normalize_path([(th + n * ramp(r), r) for th, r in path])

    def crossings(self, path):
        """Crossings with a1, in order along the path: (a, param, sign)."""
        for v in path:
            if v[0] % 1 == 0:
                raise AssertionError("vertex on a basis arc")
        out = []
        for p, q in zip(path, path[1:]):
            th0, th1 = p[0], q[0]
            if th0 == th1:
                continue
            step = 1 if th1 > th0 else -1
            m = math.floor(th0) + 1 if step > 0 else math.ceil(th0) - 1
            while (m < th1) if step > 0 else (m > th1):
                t = (m - th0) / (th1 - th0)
                r = p[1] + t * (q[1] - p[1])
                if not 0 < r < 1:
                    raise AssertionError("crossing at the binding")
                # page sign of (a-tangent, strand-tangent): -sign(dtheta)
                out.append((1, r, -step))
                m += step
        return out


class _PuncturedTorusPage:
    """R^2/Z^2 minus the open square hole of half-width 3/16 at (1/2, 1/2)."""

    name = "ptorus"
    g = 1
    b = 1
    curves = ("x", "y", "boundary")
    H = Fraction(3, 16)
    EPS = Fraction(1, 32)

    def a_paths(self):
        H, half = self.H, Fraction(1, 2)
        return {
            1: [(half + H, half), (half + 1 - H, half)],
            2: [(half, half + H), (half, half + 1 - H)],
        }

    def pushoffs(self):
        # the binding runs clockwise around the hole, so each pushed
        # endpoint trails its a-endpoint in that direction
        H, E, half = self.H, self.EPS, Fraction(1, 2)
        return {
            1: [(half + H, half - E), (half + 1 - H, half + E)],
            2: [(half + E, half + H), (half - E, half + 1 - H)],
        }

    def boundary_position(self, v):
        H, half = self.H, Fraction(1, 2)
        x, y = v[0] % 1, v[1] % 1
        per = 8 * H
        if x == half + H and half - H <= y <= half + H:
            return (0, ((half + H) - y) / per)
        if y == half - H and half - H <= x <= half + H:
            return (0, (2 * H + (half + H) - x) / per)
        if x == half - H and half - H <= y <= half + H:
            return (0, (4 * H + y - (half - H)) / per)
        if y == half + H and half - H <= x <= half + H:
            return (0, (6 * H + x - (half - H)) / per)
        raise AssertionError("point not on the binding")

    def twist(self, name, n, path):
        lo, hi = Fraction(1, 8), Fraction(1, 4)
        if name == "x":
            path = _insert_breaks(path, 1, (lo, hi))
            return _normalize_path([(x + n * _stair(y), y) for x, y in path])
        if name == "y":
            path = _insert_breaks(path, 0, (lo, hi))
            return _normalize_path([(x, y - n * _stair(x)) for x, y in path])
        raise UnknownCurve("punctured torus page has no curve %r" % (name,))

    def crossings(self, path):
        H, half = self.H, Fraction(1, 2)
        for v in path:
            if v[0] % 1 == half or v[1] % 1 == half:
                raise AssertionError("vertex on a basis arc line")
        out = []
        for p, q in zip(path, path[1:]):
            hits = []
            for axis, a_idx in ((1, 1), (0, 2)):
                c0, c1 = p[axis], q[axis]
                if c0 == c1:
                    continue
                step = 1 if c1 > c0 else -1
                if step > 0:
                    m = math.floor(c0 - half) + half + 1
                else:
                    m = math.ceil(c0 - half) + half - 1
                while (m < c1) if step > 0 else (m > c1):
                    t = (m - c0) / (c1 - c0)
                    other = p[1 - axis] + t * (q[1 - axis] - p[1 - axis])
                    d = (other - (half + H)) % 1
                    if d == 0 or d >= 1 - 2 * H:
                        raise AssertionError("path meets the hole")
                    # a1 is crossed where y moves, a2 where x moves
                    sgn = step if axis == 1 else -step
                    hits.append((t, a_idx, d, sgn))
                    m += step
            hits.sort()
            for k in range(1, len(hits)):
                if hits[k][0] == hits[k - 1][0]:
                    raise AssertionError("crossing collision")
            out.extend((a_idx, d, sgn) for _, a_idx, d, sgn in hits)
        return out


_PAGES = {(0, 2): _AnnulusPage, (1, 1): _PuncturedTorusPage}


def page_model(g, b):
    """The built-in page with the given genus and boundary count."""
    cls = _PAGES.get((int(g), int(b)))
    if cls is None:
        raise UnsupportedPage(
            "no built-in page with g=%s b=%s (have: annulus g=0 b=2, "
            "punctured torus g=1 b=1)" % (g, b))
    return cls()


# -- monodromy words ----------------------------------------------------


def _expand_word(page, word):
    out = []
    for name, n in word:
        if name not in page.curves:
            raise UnknownCurve(
                "page %r has no curve %r (catalog: %s)"
                % (page.name, name, ", ".join(page.curves)))
        n = int(n)
        if n == 0:
            continue
        if name == "boundary":
            # boundary-parallel twist via the chain relation on the
            # two handle curves
            unit = [("x", 1), ("y", 1)] if n > 0 else [("y", -1), ("x", -1)]
            out.extend(unit * (6 * abs(n)))
        else:
            out.append((name, n))
    return out


def pushoff_arcs(page):
    """Pushoffs b_i of the basis arcs, one positive crossing with a_i each.

    Also checks that the basis arcs cut the page into a single polygon.
    """
    circles, _, _ = _marks(page, None)
    probe = _PageTrace({i: [] for i in page.a_paths()}, {}, {}, circles)
    if probe.piece_count != 1 or probe.cap_count != page.b:
        raise InvalidArcBasis(
            "the %d basis arcs cut the page into %d pieces, not a polygon"
            % (len(page.a_paths()), probe.piece_count))
    return {j: _normalize_path(p) for j, p in page.pushoffs().items()}


def apply_monodromy(page, word, arcs=None):
    """Image of the pushoff arcs under the twist word, applied left to right."""
    arcs = pushoff_arcs(page) if arcs is None else dict(arcs)
    for name, n in _expand_word(page, word):
        arcs = {j: page.twist(name, n, p) for j, p in arcs.items()}
    return arcs


def normal_words(page, arcs):
    """Signed crossing word of each arc against the basis, in arc order."""
    return {j: [(a, sgn) for a, _, sgn in page.crossings(arcs[j])]
            for j in sorted(arcs)}


def reduce_words(words):
    """Freely reduce crossing words: adjacent opposite crossings of one
    basis arc bound a disk in the cut polygon and cancel."""
    out = {}
    for j in sorted(words):
        red = []
        for tok in words[j]:
            if red and red[-1][0] == tok[0] and red[-1][1] == -tok[1]:
                red.pop()
            else:
                red.append(tuple(tok))
        out[j] = red
    return out


# -- combinatorial page tracing -----------------------------------------


def _marks(page, b_paths):
    """Arc endpoints on the binding circles, in boundary order."""
    slots = {ci: [] for ci in range(page.b)}
    items = [("a", i, p) for i, p in sorted(page.a_paths().items())]
    if b_paths is not None:
        items += [("b", j, p) for j, p in sorted(b_paths.items())]
    for role, idx, path in items:
        for end, v in ((0, path[0]), (1, path[-1])):
            ci, pos = page.boundary_position(v)
            slots[ci].append((pos, (role, idx, end)))
    circles, mark_at, pos_of = [], {}, {}
    for ci in range(page.b):
        slots[ci].sort()
        poss = [p for p, _ in slots[ci]]
        if len(set(poss)) != len(poss):
            raise AssertionError("coincident arc endpoints on the binding")
        ms = [mk for _, mk in slots[ci]]
        circles.append(ms)
        for k, mk in enumerate(ms):
            mark_at[mk] = (ci, k)
            pos_of[mk] = (ci, poss[k])
    return circles, mark_at, pos_of


class _PageTrace:
    """Faces of an arc system on one page copy.

    Vertices are crossings (4-valent) and endpoint marks on the binding
    (3-valent); edges are arc pieces and binding gaps.  Rotations follow
    the same convention as the diagram module, binding gaps keep the
    page on the left, and faces are traced on the right of each dart.
    Orbits running forward along a whole binding circle are the caps
    glued off the page and are discarded; the rest are the page pieces.
    """

    def __init__(self, a_order, b_order, cross, circles):
        apos = {nm: (i, s) for i, names in a_order.items()
                for s, nm in enumerate(names)}
        bpos = {nm: (j, s) for j, names in b_order.items()
                for s, nm in enumerate(names)}
        mark_at = {}
        for ci, ms in enumerate(circles):
            for k, mk in enumerate(ms):
                mark_at[mk] = (ci, k)
        ends, rot = {}, {}
        for role, orders in (("a", a_order), ("b", b_order)):
            for idx in sorted(orders):
                seq = [("m",) + mark_at[(role, idx, 0)]]
                seq += [("x", nm) for nm in orders[idx]]
                seq.append(("m",) + mark_at[(role, idx, 1)])
                for s in range(len(seq) - 1):
                    ends[(role, idx, s)] = (seq[s], seq[s + 1])
        for ci, ms in enumerate(circles):
            n = len(ms)
            for k in range(n):
                ends[("g", ci, k)] = (("m", ci, k), ("m", ci, (k + 1) % n))
        for nm in cross:
            i, sa = apos[nm]
            j, sb = bpos[nm]
            a_out, a_back = (("a", i, sa + 1), 1), (("a", i, sa), -1)
            b_out, b_back = (("b", j, sb + 1), 1), (("b", j, sb), -1)
            rot[("x", nm)] = (a_out, b_out, a_back, b_back) \
                if cross[nm][2] > 0 else (a_out, b_back, a_back, b_out)
        for (role, idx, end), (ci, k) in mark_at.items():
            n = len(circles[ci])
            if end == 0:
                inward = ((role, idx, 0), 1)
            else:
                count = len((a_order if role == "a" else b_order)[idx])
                inward = ((role, idx, count), -1)
            rot[("m", ci, k)] = ((("g", ci, k), 1), inward,
                                 (("g", ci, (k - 1) % n), -1))
        self._ends, self._rot = ends, rot

        orbit_of, orbits = {}, []
        for start in sorted([(e, 1) for e in ends] + [(e, -1) for e in ends]):
            if start in orbit_of:
                continue
            cyc, d = [], start
            while d not in orbit_of:
                orbit_of[d] = len(orbits)
                cyc.append(d)
                d = self._next(d)
            if d != start:
                raise AssertionError("page face trace did not close")
            orbits.append(cyc)
        self._piece_of, pieces, caps = {}, 0, 0
        for cyc in orbits:
            fwd_gaps = sum(1 for e, dr in cyc if e[0] == "g" and dr > 0)
            if fwd_gaps:
                if fwd_gaps != len(cyc):
                    raise AssertionError("boundary face mixes arc darts")
                caps += 1
                continue
            for d in cyc:
                self._piece_of[d] = pieces
            pieces += 1
        self.piece_count = pieces
        self.cap_count = caps
        self.chi = len(rot) - len(ends) + pieces
        self._orbits = orbits

    def _next(self, d):
        head = self._ends[d[0]][1 if d[1] > 0 else 0]
        r = self._rot[head]
        return r[(r.index((d[0], -d[1])) + 1) % len(r)]

    def quadrant_piece(self, nm, m):
        """Page piece in the m-th rotation sector at a crossing."""
        e, dr = self._rot[("x", nm)][m]
        return self._piece_of[(e, -dr)]

    def gap_piece(self, ci, k):
        """Page piece adjacent to the k-th binding gap of circle ci."""
        return self._piece_of[(("g", ci, k), -1)]


def _paths_system(page, paths, namer):
    """Crossing orders and signs of b-role paths against the basis arcs."""
    hits_by_a = {i: [] for i in page.a_paths()}
    b_order, cross = {}, {}
    for j in sorted(paths):
        names = []
        for m, (ai, ap, sgn) in enumerate(page.crossings(paths[j])):
            nm = namer(j, m)
            cross[nm] = (ai, j, sgn)
            hits_by_a[ai].append((ap, nm))
            names.append(nm)
        b_order[j] = names
    a_order = {}
    for i in sorted(hits_by_a):
        lst = sorted(hits_by_a[i])
        for k in range(1, len(lst)):
            if lst[k][0] == lst[k - 1][0]:
                raise AssertionError("coincident crossings on a%d" % i)
        a_order[i] = [nm for _, nm in lst]
    return a_order, b_order, cross


# -- diagram assembly ---------------------------------------------------


def _find(parent, k):
    while parent.setdefault(k, k) != k:
        parent[k] = parent[parent[k]]
        k = parent[k]
    return k


def _assemble(page, circles, mark_at, half, zero):
    G = 2 * page.g + page.b - 1
    a_h, b_h, cross_h = half
    a_z, b_z, cross_z = zero

    tr_h = _PageTrace(a_h, b_h, cross_h, circles)
    tr_z = _PageTrace(a_z, b_z, cross_z, circles)
    for tr in (tr_h, tr_z):
        if tr.chi != 2 - 2 * page.g - page.b or tr.cap_count != page.b:
            raise InvalidMonodromy("arc data does not embed in the page")

    points = []
    for nm in sorted(cross_h):
        ai, bj, s = cross_h[nm]
        points.append(Point(nm, ai, bj, s))
    for nm in sorted(cross_z):
        ai, bj, s = cross_z[nm]
        points.append(Point(nm, ai, bj, -s))
    alpha = {i: a_h[i] + a_z[i][::-1] for i in a_h}
    beta = {j: b_h[j] + b_z[j][::-1] for j in b_h}
    probe = dg.trace_orbits(G, points, alpha, beta)

    # glue page pieces across each binding gap
    parent = {}
    for ci, ms in enumerate(circles):
        for k in range(len(ms)):
            a = _find(parent, ("h", tr_h.gap_piece(ci, k)))
            b = _find(parent, ("z", tr_z.gap_piece(ci, k)))
            if a != b:
                parent[a] = b

    # attach every traced face of the closed surface to a glued class;
    # on the 0 copy the surface orientation reverses, which swaps the
    # rotation sectors pairwise
    owner = {}
    for o, orbit in enumerate(probe._orbits):
        for pname, jq in probe._orbit_corners(orbit):
            if pname in cross_h:
                root = _find(parent, ("h", tr_h.quadrant_piece(pname, jq)))
            else:
                root = _find(parent, ("z", tr_z.quadrant_piece(pname, jq ^ 1)))
            if owner.setdefault(o, root) != root:
                raise AssertionError("face maps to two glued regions")

    by_class = {}
    for o in sorted(owner):
        by_class.setdefault(owner[o], []).append(o)
    n_pieces, n_gaps = {}, {}
    for cp, tr in (("h", tr_h), ("z", tr_z)):
        for pid in range(tr.piece_count):
            root = _find(parent, (cp, pid))
            n_pieces[root] = n_pieces.get(root, 0) + 1
            if root not in by_class:
                raise AssertionError("glued region with no traced face")
    for ci, ms in enumerate(circles):
        for k in range(len(ms)):
            root = _find(parent, ("h", tr_h.gap_piece(ci, k)))
            n_gaps[root] = n_gaps.get(root, 0) + 1

    groups, cellular = [], True
    for root in sorted(by_class, key=lambda r: by_class[r][0]):
        orbits = by_class[root]
        chi = n_pieces[root] - n_gaps.get(root, 0)
        g2 = 2 - len(orbits) - chi
        if g2 < 0 or g2 % 2:
            raise AssertionError("glued region has inconsistent genus")
        if g2 or len(orbits) > 1:
            cellular = False
        groups.append((g2 // 2, [probe.orbit_selector(o) for o in orbits]))

    zci, zk = mark_at[("b", 1, 0)]
    zroot = _find(parent, ("h", tr_h.gap_piece(zci, zk)))
    basepoint = probe.orbit_selector(by_class[zroot][0])

    return dg.PointedDiagram(
        G, points, alpha, beta,
        basepoint=basepoint,
        region_groups=None if cellular else groups,
        contact=["x%d" % i for i in range(1, G + 1)],
    )


# -- open book specifications -------------------------------------------


class OpenBookSpec:
    """A page type plus a monodromy description."""

    def __init__(self, g, b, twists=None, phi_words=None):
        self.g, self.b = int(g), int(b)
        if self.g < 0 or self.b < 1:
            raise ParseError("page needs g >= 0 and b >= 1")
        if twists is not None and phi_words is not None:
            raise ParseError("give TWIST or PHI_B, not both")
        self.twists = [(str(nm), int(n)) for nm, n in twists] \
            if twists is not None else None
        self.phi_words = {int(j): [(int(a), int(s)) for a, s in w]
                          for j, w in phi_words.items()} \
            if phi_words is not None else None

    @property
    def arc_count(self):
        return 2 * self.g + self.b - 1


def parse_openbook(text):
    """Parse the open book text format into an OpenBookSpec."""
    g = b = None
    twists = None
    phi = None
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        tag = fields[0]
        try:
            if tag == "OB":
                if g is not None:
                    raise ParseError("duplicate OB header")
                kv = {}
                for f in fields[1:]:
                    key, _, val = f.partition("=")
                    kv[key] = val
                if set(kv) != {"g", "b"}:
                    raise ParseError("OB header wants: OB g=<int> b=<int>")
                g, b = int(kv["g"]), int(kv["b"])
            elif tag == "TWIST":
                if phi is not None:
                    raise ParseError("give TWIST or PHI_B, not both")
                twists = twists if twists is not None else []
                for tok in fields[1:]:
                    name, caret, exp = tok.partition("^")
                    if not caret or not name:
                        raise ParseError(
                            "bad twist token %r (want curve^<int>)" % tok)
                    twists.append((name, int(exp)))
            elif tag == "PHI_B":
                if twists is not None:
                    raise ParseError("give TWIST or PHI_B, not both")
                phi = phi if phi is not None else {}
                rest = line[len(tag):].strip()
                head, colon, body = rest.partition(":")
                if not colon:
                    raise ParseError("PHI_B wants: PHI_B <i>: <tokens>")
                j = int(head.strip())
                if j in phi:
                    raise ParseError("duplicate PHI_B for arc %d" % j)
                word = []
                for tok in body.split():
                    if len(tok) < 3 or tok[0] != "a" or tok[-1] not in "+-":
                        raise ParseError(
                            "bad crossing token %r (want a<i>+ or a<i>-)" % tok)
                    word.append((int(tok[1:-1]), 1 if tok[-1] == "+" else -1))
                phi[j] = word
            else:
                raise ParseError("unknown directive %r" % tag)
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError("line %d: %s" % (lineno, exc))
    if g is None:
        raise ParseError("missing OB header")
    if twists is None and phi is None:
        twists = []
    return OpenBookSpec(g, b, twists=twists, phi_words=phi)


def build_diagram(spec):
    """The pointed Heegaard diagram of an open book, fully validated."""
    page = page_model(spec.g, spec.b)
    bs = pushoff_arcs(page)
    circles, mark_at, pos_of = _marks(page, bs)

    half = _paths_system(page, bs, lambda j, m: "x%d" % j)
    a_h, b_h, cross_h = half
    for j in sorted(bs):
        if b_h[j] != ["x%d" % j] or cross_h["x%d" % j] != (j, j, 1):
            raise AssertionError("pushoff b%d is not a single positive "
                                 "crossing of a%d" % (j, j))

    if spec.phi_words is not None:
        zero = _words_system(page, circles, pos_of, spec.phi_words)
    else:
        phis = apply_monodromy(page, spec.twists or [])
        for j, path in phis.items():
            for end, v in ((0, path[0]), (1, path[-1])):
                if page.boundary_position(v) != pos_of[("b", j, end)]:
                    raise AssertionError("monodromy moved an arc endpoint")
        zero = _paths_system(page, phis, lambda j, m: "w%d_%d" % (j, m))

    return _assemble(page, circles, mark_at, half, zero)


# -- normal-coordinate monodromies --------------------------------------
#
# A PHI_B word lists, along each image arc, the basis arcs it crosses
# and the signs.  The missing data is the order of those crossings
# along each basis arc.  Cutting the page along the basis leaves a
# polygon; strand pieces between consecutive crossings are disjoint
# chords of it, and two crossings on the same basis arc compare by
# walking both strands to their next stations and nesting chords from a
# common polygon edge last-in first-out.  A positive crossing enters
# from the right side of the arc and leaves on the left.


def _words_system(page, circles, pos_of, words):
    G = 2 * page.g + page.b - 1
    if sorted(words) != list(range(1, G + 1)):
        raise InvalidMonodromy("PHI_B must describe arcs 1..%d exactly" % G)
    for j, w in sorted(words.items()):
        for ai, s in w:
            if not 1 <= ai <= G:
                raise InvalidMonodromy("PHI_B names arc a%d; page has %d"
                                       % (ai, G))
            if s not in (1, -1):
                raise InvalidMonodromy("bad crossing sign %r" % (s,))

    def enter(s):
        return "R" if s > 0 else "L"

    def leave(s):
        return "L" if s > 0 else "R"

    for j, w in sorted(words.items()):
        for m in range(1, len(w)):
            if w[m][0] == w[m - 1][0] and leave(w[m - 1][1]) == enter(w[m][1]):
                raise InvalidMonodromy(
                    "word for b%d is not reduced at step %d" % (j, m))

    # the cut polygon, from the basis-only trace
    a_circles = [[mk for mk in ms if mk[0] == "a"] for ms in circles]
    poly = _PageTrace({i: [] for i in page.a_paths()}, {}, {}, a_circles)
    if poly.piece_count != 1:
        raise InvalidArcBasis("basis arcs do not cut the page into a polygon")
    cycle = []
    for (e, dr) in poly._orbits[[o for o, cyc in enumerate(poly._orbits)
                                 if cyc[0] in poly._piece_of][0]]:
        if e[0] == "a":
            cycle.append(("A", e[1], "R" if dr > 0 else "L"))
        else:
            if dr > 0:
                raise AssertionError("polygon runs forward along the binding")
            cycle.append(("G", e[1], e[2]))
    rank = {key: t for t, key in enumerate(cycle)}

    # locate pushoff endpoints inside basis-only binding gaps
    def gap_station(j, end):
        ci, pos = pos_of[("b", j, end)]
        a_pos = sorted(pos_of[mk][1] for mk in a_circles[ci])
        k = 0
        for t, q in enumerate(a_pos):
            if q <= pos:
                k = t
        if pos < a_pos[0]:
            k = len(a_pos) - 1
        return ("mark", ("G", ci, k), pos)

    word_of = {j: list(w) for j, w in words.items()}

    def far_station(c, side):
        j, m = c
        w = word_of[j]
        if side == enter(w[m][1]):
            if m == 0:
                return gap_station(j, 0)
            return ("slot", (j, m - 1), leave(w[m - 1][1]))
        if m == len(w) - 1:
            return gap_station(j, 1)
        return ("slot", (j, m + 1), enter(w[m + 1][1]))

    def edge_key(st):
        if st[0] == "mark":
            return st[1]
        (j, m), side = st[1], st[2]
        return ("A", word_of[j][m][0], side)

    memo = {}
    busy = object()

    def cmp_on(c, cp, side):
        """Order of two crossings along their basis arc (-1: c first)."""
        if c == cp:
            return 0
        key = (c, cp, side)
        if key in memo:
            if memo[key] is busy:
                raise InvalidMonodromy(
                    "crossing order does not resolve; the words are not "
                    "realizable by disjoint arcs")
            return memo[key]
        memo[key] = busy
        k = word_of[c[0]][c[1]][0]
        E = ("A", k, side)
        t1, t2 = far_station(c, side), far_station(cp, side)
        e1, e2 = edge_key(t1), edge_key(t2)
        if e1 == E or e2 == E:
            raise AssertionError("unreduced chord survived validation")
        # "later": does c's far target come after cp's along the polygon
        # boundary, cut just before the edge both chords leave from
        if e1 != e2:
            n = len(cycle)
            r1 = (rank[e1] - rank[E]) % n
            r2 = (rank[e2] - rank[E]) % n
            later = 1 if r1 > r2 else -1
        elif t1[0] == "mark":
            if t1[2] == t2[2]:
                raise InvalidMonodromy("two strands share an endpoint")
            # binding gaps are traversed against the boundary orientation
            later = 1 if t1[2] < t2[2] else -1
        else:
            inner = cmp_on(t1[1], t2[1], "L" if e1[2] == "R" else "R")
            later = inner if e1[2] == "R" else -inner
        # disjoint chords leaving one edge nest: the earlier the target,
        # the later the chord sits along that edge's traversal, and an
        # R-side copy is traversed in the ascending arc direction
        res = -later if side == "R" else later
        memo[key] = res
        memo[(cp, c, side)] = -res
        return res

    # assign names in strand order, then sort each basis arc
    cross, b_order = {}, {}
    on_a = {i: [] for i in range(1, G + 1)}
    for j in sorted(word_of):
        names = []
        for m, (ai, s) in enumerate(word_of[j]):
            nm = "w%d_%d" % (j, m)
            cross[nm] = (ai, j, s)
            on_a[ai].append((j, m))
            names.append(nm)
        b_order[j] = names

    a_order = {}
    for i in sorted(on_a):
        cs = sorted(on_a[i],
                    key=functools.cmp_to_key(lambda u, v: cmp_on(u, v, "R")))
        for t in range(1, len(cs)):
            if cmp_on(cs[t - 1], cs[t], "L") != -1:
                raise InvalidMonodromy(
                    "the two sides of a%d order its crossings differently; "
                    "the words are not realizable by disjoint arcs" % i)
        a_order[i] = ["w%d_%d" % c for c in cs]
    return a_order, b_order, cross

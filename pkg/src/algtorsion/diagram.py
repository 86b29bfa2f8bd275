"""Pointed diagrams as rotation systems.

A diagram is stored intrinsically: intersection points with crossing
signs plus the cyclic order of points along each curve of the two
families.  Everything else (faces, regions, measures) is derived by
tracing.

Darts.  A curve segment is (kind, curve, k): the piece of curve
`curve` in family `kind` ('A' or 'B') running from the k-th point of
its cyclic order to the (k+1)-st.  A dart is (segment, direction) with
direction +1 along storage order.  At a point the four outgoing darts
are arranged counterclockwise as (alpha-out, beta-out, alpha-in,
beta-in) when the crossing sign is positive, with the two beta darts
swapped when it is negative.  Faces are traced with the face kept on
the right of each dart; the face permutation is
d -> next_ccw(rev(d)) taken at the head of d.

Quadrants.  The sector counterclockwise from rotation slot j to slot
j+1 is quadrant j; it belongs to the face orbit of rev(rot[j]).

Regions.  For a cellular diagram every face orbit is a disk region.
Embeddings with non-disk complementary regions cannot be recovered
from the rotation system alone, so the text format may group face
orbits into regions with a stated genus (REGION lines); the builder
in the openbook module emits them when needed.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DuplicatePoint,
    GenusMismatch,
    MissingBasepoint,
    OpenFaceTrace,
    ParseError,
)


@dataclass(frozen=True)
class Point:
    name: str
    alpha: int
    beta: int
    sign: int


@dataclass
class Region:
    id: int
    genus: int
    boundary_circles: int
    corners: list
    euler_measure: Fraction
    orbits: tuple

    @property
    def corner_count(self):
        return len(self.corners)

    @property
    def euler_char(self):
        return 2 - 2 * self.genus - self.boundary_circles

    @property
    def is_disk(self):
        return self.genus == 0 and self.boundary_circles == 1


def _rev(dart):
    seg, direction = dart
    return (seg, -direction)


class PointedDiagram:
    """Validated pointed diagram; immutable after construction."""

    def __init__(self, g_count, points, alpha_orders, beta_orders,
                 basepoint=None, region_groups=None, contact=None):
        self.g_count = int(g_count)
        self.points = {}
        for p in points:
            if p.name in self.points:
                raise DuplicatePoint("point %r declared twice" % p.name)
            self.points[p.name] = p
        self.alpha_orders = {i: list(v) for i, v in alpha_orders.items()}
        self.beta_orders = {j: list(v) for j, v in beta_orders.items()}
        self.contact_points = list(contact) if contact else None
        self._basepoint_spec = basepoint
        self._validate_structure()
        self.degenerate = any(not v for v in self.alpha_orders.values()) or \
            any(not v for v in self.beta_orders.values())
        if self.degenerate:
            self.regions = None
            self.basepoint_region = None
            self._orbits = None
            return
        self._trace_faces()
        self._assemble_regions(region_groups)
        self._check_genus()
        self._resolve_basepoint(basepoint)

    # -- structure ---------------------------------------------------

    def _validate_structure(self):
        if self.g_count < 1:
            raise ParseError("G must be a positive integer")
        for label, orders in (("ALPHA", self.alpha_orders), ("BETA", self.beta_orders)):
            if sorted(orders) != list(range(1, self.g_count + 1)):
                raise ParseError("%s curves must be indexed 1..%d" % (label, self.g_count))
        self._pos_alpha = {}
        self._pos_beta = {}
        for store, orders, attr in (
            (self._pos_alpha, self.alpha_orders, "alpha"),
            (self._pos_beta, self.beta_orders, "beta"),
        ):
            for curve, order in orders.items():
                for k, name in enumerate(order):
                    if name not in self.points:
                        raise ParseError("order references unknown point %r" % name)
                    if name in store:
                        raise DuplicatePoint(
                            "point %r appears twice in the %s orders" % (name, attr))
                    if getattr(self.points[name], attr) != curve:
                        raise OpenFaceTrace(
                            "point %r carries %s=%d but is listed on curve %d; "
                            "the rotation system does not close up"
                            % (name, attr[0], getattr(self.points[name], attr), curve))
                    store[name] = (curve, k)
        for name in self.points:
            if name not in self._pos_alpha or name not in self._pos_beta:
                raise OpenFaceTrace(
                    "point %r is missing from a curve order; face tracing "
                    "cannot close" % name)
        for p in self.points.values():
            if p.sign not in (1, -1):
                raise ParseError("point %r has invalid sign" % p.name)

    # -- darts ---------------------------------------------------------

    def _order_of(self, kind, curve):
        return self.alpha_orders[curve] if kind == "A" else self.beta_orders[curve]

    def dart_head(self, dart):
        (kind, curve, k), direction = dart
        order = self._order_of(kind, curve)
        return order[(k + 1) % len(order)] if direction > 0 else order[k]

    def rotation(self, name):
        """The four outgoing darts at a point, counterclockwise."""
        p = self.points[name]
        ai, ak = self._pos_alpha[name]
        bj, bl = self._pos_beta[name]
        na = len(self.alpha_orders[ai])
        nb = len(self.beta_orders[bj])
        a_out = (("A", ai, ak), 1)
        a_back = (("A", ai, (ak - 1) % na), -1)
        b_out = (("B", bj, bl), 1)
        b_back = (("B", bj, (bl - 1) % nb), -1)
        if p.sign > 0:
            return (a_out, b_out, a_back, b_back)
        return (a_out, b_back, a_back, b_out)

    def all_darts(self):
        darts = []
        for kind, orders in (("A", self.alpha_orders), ("B", self.beta_orders)):
            for curve in sorted(orders):
                for k in range(len(orders[curve])):
                    darts.append(((kind, curve, k), 1))
                    darts.append(((kind, curve, k), -1))
        return darts

    def face_next(self, dart):
        p = self.dart_head(dart)
        rot = self.rotation(p)
        back = _rev(dart)
        try:
            i = rot.index(back)
        except ValueError:
            raise OpenFaceTrace("dart %r does not arrive at the rotation of %r"
                                % (dart, p))
        return rot[(i + 1) % 4]

    # -- faces and regions ----------------------------------------------

    def _trace_faces(self):
        darts = self.all_darts()
        self._dart_orbit = {}
        self._orbits = []
        for start in darts:
            if start in self._dart_orbit:
                continue
            orbit_id = len(self._orbits)
            orbit = []
            d = start
            for _ in range(len(darts) + 1):
                if d in self._dart_orbit:
                    if d != start:
                        raise OpenFaceTrace("face trace collided before closing")
                    break
                self._dart_orbit[d] = orbit_id
                orbit.append(d)
                d = self.face_next(d)
            if d != start:
                raise OpenFaceTrace("face trace failed to close")
            self._orbits.append(orbit)

    def _orbit_corners(self, orbit):
        corners = []
        for d in orbit:
            p = self.dart_head(d)
            rot = self.rotation(p)
            corners.append((p, rot.index(_rev(d))))
        return corners

    def _selector_dart(self, selector):
        kind, curve, seg, side = selector
        orders = self.alpha_orders if kind == "A" else self.beta_orders
        if curve not in orders or not (0 <= seg < len(orders[curve])):
            raise ParseError("selector %s%d.%d.%s names no segment"
                             % (kind, curve, seg, side))
        return ((kind, curve, seg), 1 if side == "R" else -1)

    def _assemble_regions(self, region_groups):
        n_orbits = len(self._orbits)
        if region_groups:
            genus_of_group = []
            orbit_group = {}
            for gi, (genus, selectors) in enumerate(region_groups):
                genus_of_group.append(int(genus))
                for sel in selectors:
                    o = self._dart_orbit[self._selector_dart(sel)]
                    if o in orbit_group:
                        raise ParseError("REGION lines name a face twice")
                    orbit_group[o] = gi
            if len(orbit_group) != n_orbits:
                raise ParseError("REGION lines must cover every traced face "
                                 "(%d of %d covered)" % (len(orbit_group), n_orbits))
            groups = [(genus_of_group[gi],
                       tuple(o for o in range(n_orbits) if orbit_group[o] == gi))
                      for gi in range(len(genus_of_group))]
        else:
            groups = [(0, (o,)) for o in range(n_orbits)]

        self.regions = []
        self._orbit_region = {}
        for genus, orbits in groups:
            corners = []
            for o in orbits:
                corners.extend(self._orbit_corners(self._orbits[o]))
            rid = len(self.regions)
            chi = 2 - 2 * genus - len(orbits)
            region = Region(
                id=rid,
                genus=genus,
                boundary_circles=len(orbits),
                corners=corners,
                euler_measure=Fraction(chi) - Fraction(len(corners), 4),
                orbits=tuple(orbits),
            )
            self.regions.append(region)
            for o in orbits:
                self._orbit_region[o] = rid

        self._quadrants = {}
        for name in self.points:
            rot = self.rotation(name)
            self._quadrants[name] = tuple(
                self._orbit_region[self._dart_orbit[_rev(rot[j])]] for j in range(4))

    def _check_genus(self):
        v = len(self.points)
        e = sum(len(o) for o in self.alpha_orders.values())
        e += sum(len(o) for o in self.beta_orders.values())
        chi = v - e + sum(r.euler_char for r in self.regions)
        want = 2 - 2 * self.g_count
        if chi != want:
            computed_genus = (2 - chi) // 2 if (2 - chi) % 2 == 0 else None
            raise GenusMismatch(
                "surface Euler characteristic %d (genus %s) does not match "
                "G=%d (expected %d); if the diagram has non-disk complementary "
                "regions, REGION lines grouping the traced faces are required"
                % (chi, computed_genus, self.g_count, want))

    def _resolve_basepoint(self, basepoint):
        if basepoint is None:
            raise MissingBasepoint("no BASEPOINT given")
        dart = self._selector_dart(basepoint)
        self.basepoint_region = self._orbit_region[self._dart_orbit[dart]]

    # -- derived queries -------------------------------------------------

    def quadrant_regions(self, name):
        """Region ids of the four quadrants at a point, in rotation order."""
        return self._quadrants[name]

    def alt_row(self, name):
        """Region coefficients of the corner operator at one point.

        For a domain D, sum(coeff[r] * D[r]) is the multiplicity of the
        point in the boundary-of-alpha-boundary 0-chain of D.
        """
        q = self._quadrants[name]
        row = {}
        for j, sgn in ((0, -1), (1, 1), (2, -1), (3, 1)):
            row[q[j]] = row.get(q[j], 0) + sgn
        return {r: c for r, c in row.items() if c}

    def segment_count(self):
        return sum(len(o) for o in self.alpha_orders.values()) + \
            sum(len(o) for o in self.beta_orders.values())

    def canonical_point_names(self):
        return sorted(self.points)

    def orbit_selector(self, orbit_id):
        """Canonical (segment, side) selector naming a traced face."""
        dart = min(self._orbits[orbit_id])
        seg, direction = dart
        return (seg[0], seg[1], seg[2], "R" if direction > 0 else "L")

    def is_cellular(self):
        return all(r.is_disk for r in self.regions)


def trace_orbits(g_count, points, alpha_orders, beta_orders):
    """Face orbits of a rotation system before region data is known.

    Returns a probe with the traced orbits, rotations and selectors but
    no regions, genus check or basepoint.  The openbook builder uses it
    to decide how traced faces group into regions before constructing
    the validated diagram.
    """
    probe = PointedDiagram.__new__(PointedDiagram)
    probe.g_count = int(g_count)
    probe.points = {p.name: p for p in points}
    probe.alpha_orders = {i: list(v) for i, v in alpha_orders.items()}
    probe.beta_orders = {j: list(v) for j, v in beta_orders.items()}
    probe.contact_points = None
    probe._validate_structure()
    probe._trace_faces()
    return probe


# -- measures ----------------------------------------------------------


def euler_measure(domain):
    """Linear extension of region Euler measures over a domain."""
    diagram = domain.diagram
    total = Fraction(0)
    for rid, coeff in enumerate(domain.coefficients):
        if coeff:
            total += coeff * diagram.regions[rid].euler_measure
    return total


def point_measure(name, domain):
    """Average of the four quadrant coefficients of the domain at a point."""
    diagram = domain.diagram
    coeffs = domain.coefficients
    return Fraction(sum(coeffs[r] for r in diagram.quadrant_regions(name)), 4)


# -- text format -------------------------------------------------------


def _parse_selector(token):
    try:
        kind = token[0]
        if kind not in ("A", "B"):
            raise ValueError
        body, side = token[1:].rsplit(".", 1)
        curve, seg = body.split(".")
        side = side.upper()
        if side not in ("L", "R"):
            raise ValueError
        return (kind, int(curve), int(seg), side)
    except (ValueError, IndexError):
        raise ParseError("bad segment selector %r (want e.g. A1.0.R)" % token)


def _format_selector(sel):
    return "%s%d.%d.%s" % sel


def parse_diagram(text):
    """Parse the diagram text format into raw pieces for validate()."""
    g = None
    points = []
    seen_points = set()
    alpha_orders = {}
    beta_orders = {}
    basepoint = None
    region_groups = []
    contact = None
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        tag = fields[0]
        try:
            if tag == "HD":
                if g is not None:
                    raise ParseError("duplicate HD header")
                if len(fields) != 2 or not fields[1].startswith("G="):
                    raise ParseError("HD header must be 'HD G=<int>'")
                g = int(fields[1][2:])
            elif tag == "PT":
                if len(fields) != 5:
                    raise ParseError("PT wants: PT <id> a=<i> b=<j> sign=<+|->")
                name = fields[1]
                if name in seen_points:
                    raise DuplicatePoint("point %r declared twice" % name)
                seen_points.add(name)
                kv = {}
                for f in fields[2:]:
                    key, _, val = f.partition("=")
                    kv[key] = val
                if set(kv) != {"a", "b", "sign"} or kv["sign"] not in ("+", "-"):
                    raise ParseError("PT wants: PT <id> a=<i> b=<j> sign=<+|->")
                points.append(Point(name, int(kv["a"]), int(kv["b"]),
                                    1 if kv["sign"] == "+" else -1))
            elif tag in ("ALPHA", "BETA"):
                rest = line[len(tag):].strip()
                head, colon, body = rest.partition(":")
                if not colon:
                    raise ParseError("%s wants: %s <i>: <id,...>" % (tag, tag))
                curve = int(head.strip())
                names = [t for t in
                         (s.strip() for s in body.replace(",", " ").split())
                         if t]
                target = alpha_orders if tag == "ALPHA" else beta_orders
                if curve in target:
                    raise ParseError("curve %s %d listed twice" % (tag, curve))
                target[curve] = names
            elif tag == "BASEPOINT":
                if basepoint is not None:
                    raise ParseError("duplicate BASEPOINT")
                if len(fields) != 2:
                    raise ParseError("BASEPOINT wants one segment selector")
                basepoint = _parse_selector(fields[1])
            elif tag == "REGION":
                kv = {}
                for f in fields[1:]:
                    key, _, val = f.partition("=")
                    kv[key] = val
                if set(kv) != {"genus", "sides"}:
                    raise ParseError("REGION wants: REGION genus=<g> sides=<sel,...>")
                sels = [_parse_selector(t) for t in kv["sides"].split(",") if t]
                if not sels:
                    raise ParseError("REGION with no sides")
                region_groups.append((int(kv["genus"]), sels))
            elif tag == "CONTACT":
                if contact is not None:
                    raise ParseError("duplicate CONTACT")
                body = line[len("CONTACT"):].strip()
                contact = [t for t in
                           (s.strip() for s in body.replace(",", " ").split()) if t]
                if not contact:
                    raise ParseError("CONTACT with no points")
            else:
                raise ParseError("unknown directive %r" % tag)
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError("line %d: %s" % (lineno, exc))
    if g is None:
        raise ParseError("missing HD header")
    return {
        "g": g,
        "points": points,
        "alpha_orders": alpha_orders,
        "beta_orders": beta_orders,
        "basepoint": basepoint,
        "region_groups": region_groups or None,
        "contact": contact,
    }


def validate(raw):
    """Build a fully validated PointedDiagram from raw pieces.

    Accepts either the dict produced by parse_diagram or diagram text.
    """
    if isinstance(raw, str):
        raw = parse_diagram(raw)
    return PointedDiagram(
        raw["g"],
        raw["points"],
        raw["alpha_orders"],
        raw["beta_orders"],
        basepoint=raw.get("basepoint"),
        region_groups=raw.get("region_groups"),
        contact=raw.get("contact"),
    )


def load_path(path):
    with open(path, "r", encoding="utf-8") as fh:
        return validate(fh.read())


def serialize(diagram):
    """Canonical text for a validated diagram; parse/validate round-trips."""
    lines = ["HD G=%d" % diagram.g_count]
    for i in sorted(diagram.alpha_orders):
        for name in diagram.alpha_orders[i]:
            p = diagram.points[name]
            lines.append("PT %s a=%d b=%d sign=%s"
                         % (p.name, p.alpha, p.beta, "+" if p.sign > 0 else "-"))
    for i in sorted(diagram.alpha_orders):
        lines.append("ALPHA %d: %s" % (i, ",".join(diagram.alpha_orders[i])))
    for j in sorted(diagram.beta_orders):
        lines.append("BETA %d: %s" % (j, ",".join(diagram.beta_orders[j])))
    if not diagram.degenerate:
        bp_region = diagram.regions[diagram.basepoint_region]
        lines.append("BASEPOINT %s" % _format_selector(
            diagram.orbit_selector(bp_region.orbits[0])))
        if not diagram.is_cellular():
            for region in diagram.regions:
                sels = ",".join(_format_selector(diagram.orbit_selector(o))
                                for o in region.orbits)
                lines.append("REGION genus=%d sides=%s" % (region.genus, sels))
    if diagram.contact_points:
        lines.append("CONTACT %s" % ",".join(diagram.contact_points))
    return "\n".join(lines) + "\n"


def content_hash(diagram):
    """Hash of the canonical text; stable across reformatting of the source."""
    import hashlib

    return hashlib.sha256(serialize(diagram).encode("utf-8")).hexdigest()

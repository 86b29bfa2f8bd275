import itertools

import pytest

from algtorsion import diagram as dg
from algtorsion import homotopy as ht

from test_diagram import LENS_PAIR, TORUS, TWO_SQUARES

LENS_CONTACT = LENS_PAIR.replace("BASEPOINT A1.0.R", "BASEPOINT A1.0.R\nCONTACT q0")


def corner_holds(domain):
    """Check the corner condition of a domain directly from the quadrants."""
    d = domain.diagram
    sgn = ht.CORNER_TARGET_SIGN
    for name in d.canonical_point_names():
        row = d.alt_row(name)
        got = sum(c * domain.coefficients[r] for r, c in row.items())
        want = sgn * ((name in domain.target.points) - (name in domain.source.points))
        if got != want:
            return False
    return True


def oriented(d, coefficients, a, b):
    """Wrap coefficients as a domain, picking the direction that satisfies
    the corner condition."""
    for src, dst in ((a, b), (b, a)):
        dom = ht.Domain(d, coefficients, src, dst)
        if corner_holds(dom):
            return dom
    raise AssertionError("no orientation satisfies the corner condition")


def region_by_corners(d, count):
    return [r for r in d.regions if r.corner_count == count]


# -- generators ----------------------------------------------------------


def test_torus_single_generator():
    d = dg.validate(TORUS)
    gens = ht.enumerate_generators(d)
    assert [g.points for g in gens] == [("x",)]
    assert gens[0].perm == (1,)
    assert ht.cycle_count(gens[0]) == 1


def test_lens_two_generators_sorted():
    d = dg.validate(LENS_PAIR)
    gens = ht.enumerate_generators(d)
    assert [g.points for g in gens] == [("q0",), ("q1",)]


def test_generator_equality_and_label():
    d = dg.validate(LENS_PAIR)
    a, b = ht.enumerate_generators(d)
    assert a != b
    assert a == ht.Generator(d, ["q0"])
    assert a.label() == "{q0}"


def test_degenerate_diagram_has_no_generators():
    raw = {
        "g": 1,
        "points": [],
        "alpha_orders": {1: []},
        "beta_orders": {1: []},
    }
    d = dg.validate(raw)
    assert ht.enumerate_generators(d) == []
    assert ht.spinc_classes(d) == ([], None)


def test_cycle_count_plain_permutations():
    assert ht.cycle_count((1, 2, 3)) == 3
    assert ht.cycle_count((2, 1)) == 1
    assert ht.cycle_count((2, 3, 1)) == 1
    assert ht.cycle_count((2, 1, 4, 3)) == 2


# -- spin-c classes and domains ------------------------------------------


def test_two_squares_generators_split_into_two_classes():
    d = dg.validate(TWO_SQUARES)
    classes, contact = ht.spinc_classes(d)
    assert [[g.points for g in cls] for cls in classes] == [[("p0",)], [("p1",)]]
    assert contact is None
    x, y = ht.enumerate_generators(d)
    dom, lattice = ht.domain_between(x, y)
    assert dom is None
    assert lattice == []


def test_lens_generators_share_a_class():
    d = dg.validate(LENS_CONTACT)
    classes, contact = ht.spinc_classes(d)
    assert len(classes) == 1
    assert contact == 0
    x, y = ht.enumerate_generators(d)
    dom, lattice = ht.domain_between(x, y)
    assert dom is not None
    assert corner_holds(dom)
    assert dom.basepoint_coefficient == 0
    assert len(lattice) == 1


def test_torus_trivial_domain():
    d = dg.validate(TORUS)
    (x,) = ht.enumerate_generators(d)
    dom, lattice = ht.domain_between(x, x)
    assert dom is not None
    assert dom.coefficients == (0,)
    assert lattice == []
    assert ht.maslov(dom) == 0
    assert ht.j_plus(dom) == 0


def test_solution_lattice_translates_particular():
    d = dg.validate(LENS_PAIR)
    x, y = ht.enumerate_generators(d)
    dom, lattice = ht.domain_between(x, y)
    shifted = [a + b for a, b in zip(dom.coefficients, lattice[0].coefficients)]
    assert corner_holds(ht.Domain(d, shifted, dom.source, dom.target))


# -- periodic domains and admissibility ----------------------------------


def test_lens_periodic_rank_one_mixed_signs():
    d = dg.validate(LENS_PAIR)
    basis = ht.periodic_domains(d)
    assert len(basis) == 1
    p = basis[0]
    assert p.coefficients[d.basepoint_region] == 0
    assert any(c > 0 for c in p.coefficients)
    assert any(c < 0 for c in p.coefficients)
    # boundary is a combination of full curves: corner condition vanishes
    x = ht.enumerate_generators(d)[0]
    assert corner_holds(ht.Domain(d, [0] * len(d.regions), x, x))
    assert ht.weak_admissibility(d)


def test_no_periodic_domains_is_admissible():
    for text in (TORUS, TWO_SQUARES):
        d = dg.validate(text)
        assert ht.periodic_domains(d) == []
        assert ht.weak_admissibility(d)


def test_positive_periodic_domain_fails_admissibility():
    # placing the basepoint inside a bigon leaves the curves isotopic in
    # its complement: the annulus plus twice the other bigon is a
    # non-negative periodic domain
    text = LENS_PAIR.replace("BASEPOINT A1.0.R", "BASEPOINT A1.0.L")
    d = dg.validate(text)
    basis = ht.periodic_domains(d)
    assert len(basis) == 1
    v = basis[0].coefficients
    assert any(v)
    assert all(c >= 0 for c in v) or all(c <= 0 for c in v)
    assert not ht.weak_admissibility(d)


# -- indices ---------------------------------------------------------------


def test_bigon_has_index_one_and_jplus_zero():
    d = dg.validate(LENS_PAIR)
    a, b = ht.enumerate_generators(d)
    for bigon in region_by_corners(d, 2):
        coeffs = [0] * len(d.regions)
        coeffs[bigon.id] = 1
        dom = oriented(d, coeffs, a, b)
        assert ht.maslov(dom) == 1
        assert ht.j_plus(dom) == 0


def test_negative_bigon_has_index_minus_one():
    d = dg.validate(LENS_PAIR)
    a, b = ht.enumerate_generators(d)
    bigon = region_by_corners(d, 2)[0]
    coeffs = [0] * len(d.regions)
    coeffs[bigon.id] = -1
    dom = oriented(d, coeffs, a, b)
    assert ht.maslov(dom) == -1
    assert ht.j_plus(dom) == 0


def test_index_additive_under_composition():
    d = dg.validate(LENS_PAIR)
    a, b = ht.enumerate_generators(d)
    bigons = region_by_corners(d, 2)
    first = [0] * len(d.regions)
    first[bigons[0].id] = 1
    second = [0] * len(d.regions)
    second[bigons[1].id] = -1
    d1 = oriented(d, first, a, b)
    d2 = ht.Domain(d, second, d1.target, d1.source)
    assert corner_holds(d2)
    total = ht.compose(d1, d2)
    assert total.source == total.target == d1.source
    assert ht.maslov(total) == ht.maslov(d1) + ht.maslov(d2)
    assert ht.j_plus(total) == ht.j_plus(d1) + ht.j_plus(d2)


def test_jplus_of_periodic_translates():
    d = dg.validate(LENS_PAIR)
    x, y = ht.enumerate_generators(d)
    p = ht.periodic_domains(d)[0]
    dom = p.as_domain(x)
    assert corner_holds(dom)
    assert ht.maslov(dom) == 0
    assert ht.j_plus(dom) == 0


def test_compose_rejects_mismatched_endpoints():
    d = dg.validate(LENS_PAIR)
    x, y = ht.enumerate_generators(d)
    zero = [0] * len(d.regions)
    d1 = ht.Domain(d, zero, x, x)
    d2 = ht.Domain(d, zero, y, y)
    with pytest.raises(ValueError):
        ht.compose(d1, d2)


def test_domain_flags():
    d = dg.validate(LENS_PAIR)
    x, y = ht.enumerate_generators(d)
    bigon = region_by_corners(d, 2)[0]
    coeffs = [0] * len(d.regions)
    coeffs[bigon.id] = 1
    dom = ht.Domain(d, coeffs, x, y)
    assert dom.is_positive
    assert dom.basepoint_coefficient == 0
    coeffs[bigon.id] = -1
    assert not ht.Domain(d, coeffs, x, y).is_positive

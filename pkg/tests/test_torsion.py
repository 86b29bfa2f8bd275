import numpy as np
import pytest

from algtorsion import diagram as dg
from algtorsion import floer
from algtorsion import homotopy as ht
from algtorsion import torsion as ts
from algtorsion.errors import LeibnizViolation, NotACycle

from test_diagram import LENS_PAIR
from test_homotopy import LENS_CONTACT


class _G:
    """Stand-in generator: torsion only needs equality and a label."""

    def __init__(self, name):
        self.name = name
        self.points = (name,)

    def label(self):
        return "{%s}" % self.name

    def __eq__(self, other):
        return isinstance(other, _G) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


def _complex(n, deltas):
    d = dg.validate(LENS_PAIR)
    gens = [_G("g%d" % i) for i in range(n)]
    return floer.WeightedComplex(d, gens, deltas), gens


def test_zero_differential_pages_stable_at_one():
    cx, gens = _complex(2, {})
    page_list = ts.pages(cx)
    assert [p.rank for p in page_list] == [2, 2]
    assert ts.at_order(cx, gens[0]) == ts.SURVIVES
    assert ts.stabilized_page(cx) == 1


def test_weight_zero_arrow_kills_immediately():
    cx, gens = _complex(2, {0: [[0, 0], [1, 0]]})
    page_list = ts.pages(cx)
    assert [p.rank for p in page_list] == [0, 0]
    # the target is an explicit boundary of the first piece
    assert ts.at_order(cx, gens[1]) == 0


def test_weight_one_arrow_gives_one_torsion():
    cx, gens = _complex(2, {1: [[0, 0], [1, 0]]})
    page_list = ts.pages(cx)
    assert [p.rank for p in page_list] == [2, 0, 0]
    assert ts.at_order(cx, gens[1]) == 1
    with pytest.raises(NotACycle) as err:
        ts.at_order(cx, gens[0])
    assert "1" in str(err.value)


def test_weight_two_arrow_gives_two_torsion():
    n = 4
    d2 = np.zeros((n, n), dtype=np.uint8)
    d2[1][0] = 1  # second generator is hit at weight 2
    cx, gens = _complex(n, {2: d2})
    page_list = ts.pages(cx)
    assert [p.rank for p in page_list] == [4, 4, 2, 2]
    assert ts.at_order(cx, gens[1]) == 2
    assert ts.at_order(cx, gens[2]) == ts.SURVIVES
    assert ts.at_order(cx, gens[3]) == ts.SURVIVES


def test_page_ranks_non_increasing_and_certified():
    cases = [
        {},
        {0: [[0, 0], [1, 0]]},
        {1: [[0, 0], [1, 0]]},
        {0: [[0, 0, 0], [1, 0, 0], [0, 0, 0]],
         1: [[0, 0, 0], [0, 0, 0], [1, 0, 0]]},
    ]
    for deltas in cases:
        n = len(next(iter(deltas.values()))) if deltas else 2
        cx, _ = _complex(n, deltas)
        ranks = [p.rank for p in ts.pages(cx)]
        assert all(a >= b for a, b in zip(ranks, ranks[1:]))
        assert ranks[-2] == ranks[-1]
        assert ranks[-1] == floer.homology(cx)


def test_pages_verify_leibniz_first():
    d0 = [[0, 0, 0], [1, 0, 0], [0, 1, 0]]
    d1 = [[0, 0, 0], [0, 0, 0], [0, 1, 0]]
    cx, _ = _complex(3, {0: d0, 1: d1})
    with pytest.raises(LeibnizViolation):
        ts.pages(cx)


def test_max_page_caps_and_extends_listing():
    cx, _ = _complex(2, {1: [[0, 0], [1, 0]]})
    assert [p.rank for p in ts.pages(cx, max_page=1)] == [2]
    assert [p.rank for p in ts.pages(cx, max_page=6)] == [2, 0, 0, 0, 0, 0]


def test_representatives_span_the_page():
    n = 4
    d2 = np.zeros((n, n), dtype=np.uint8)
    d2[1][0] = 1
    cx, gens = _complex(n, {2: d2})
    page3 = ts.pages(cx, max_page=3)[2]
    assert page3.rank == 2
    assert len(page3.representatives) == 2
    for rep in page3.representatives:
        assert all(0 <= i < n for i in rep)


def test_at_order_rejects_foreign_generator():
    cx, _ = _complex(2, {})
    with pytest.raises(ValueError):
        ts.at_order(cx, _G("stranger"))


def test_mixed_weight_cancellation_reported_honestly():
    # the same arrow at weights 0 and 1: the total differential cancels
    # mod 2 but the filtered complex still kills the class, so the
    # stable page is smaller than the homology of the total complex
    arrow = [[0, 0], [1, 0]]
    cx, gens = _complex(2, {0: arrow, 1: arrow})
    cx.verify_graded_leibniz()
    assert floer.homology(cx) == 2
    report = ts.torsion_report(cx, theta=gens[1])
    assert report.at == 0
    assert report.diagnostics["einf_matches_homology"] is False


def test_lens_report_round_trip():
    d = dg.validate(LENS_CONTACT)
    cx = floer.differential(d, 0)
    theta = floer.contact_generator(d)
    report = ts.torsion_report(cx, theta=theta)
    assert report.pages == [2, 2]
    assert report.contact_class == ["nonzero", "nonzero"]
    assert report.at == ts.SURVIVES
    assert report.diagnostics["homology_total"] == 2
    assert report.diagnostics["einf_matches_homology"] is True
    assert report.diagnostics["weights_seen"] == []
    first = report.to_json()
    second = ts.torsion_report(cx, theta=theta).to_json()
    assert first == second
    assert first.endswith("\n")


def test_report_without_theta_has_no_contact_fields():
    cx, _ = _complex(2, {})
    report = ts.torsion_report(cx)
    assert report.contact_class is None
    assert report.at is None
    assert "theta" not in report.diagnostics

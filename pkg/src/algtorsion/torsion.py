"""Spectral sequence of the weight decomposition and the torsion order.

The weight splitting is encoded by adjoining a formal variable t of
degree one per weight unit: the extended differential is sum over k of
t^k times the weight-k part, acting on polynomials with generator
coefficients, filtered by t-degree.  By translation invariance the page
at a stable column is computed from a finite window of coefficients:

* an element survives to page r exactly when its leading coefficient
  x_0 extends to (x_0, ..., x_{r-1}) with the first r cascade equations
  holding;
* it dies there exactly when it is the top cascade output of a window
  (w_0, ..., w_{r-1}) whose lower cascade equations vanish.

Both sets are GF(2) solution spaces of banded block matrices built from
the weight pieces, so every page is two exact rank computations.  Pages
provably stabilize once r exceeds (generator count) * (maximum weight)
+ 1: any later differential would need a longer weighted zigzag than
the complex has room for.
"""

import json

import numpy as np

from . import exactla
from .errors import InvariantViolation, NotACycle
from .floer import homology

SURVIVES = "survives"


def _blocks(cx, rows, cols):
    """Banded block matrix with block (j, m) equal to the weight (j - m)
    piece of the differential."""
    n = len(cx.generators)
    out = np.zeros((rows * n, cols * n), dtype=np.uint8)
    for j in range(rows):
        for m in range(cols):
            k = j - m
            if 0 <= k <= cx.max_weight:
                out[j * n:(j + 1) * n, m * n:(m + 1) * n] = cx.delta(k)
    return out


def _window(cx, r):
    """(surviving-space basis rows, dying-space rref rows) for page r."""
    n = len(cx.generators)
    if n == 0:
        empty = np.zeros((0, 0), dtype=np.uint8)
        return empty, empty
    # cascade equations j = 0..r-1 on coefficients x_0..x_{r-1}
    cascade = _blocks(cx, r, r)
    kernel = exactla.gf2_nullspace(cascade)
    heads = kernel[:, :n] if kernel.size else np.zeros((0, n), dtype=np.uint8)
    surviving, _ = exactla.gf2_row_reduce(heads)
    surviving = surviving[np.any(surviving, axis=1)]
    # dying: top cascade output of windows whose lower equations vanish
    lower = _blocks(cx, r - 1, r)
    if lower.shape[0] == 0:
        free = np.eye(r * n, dtype=np.uint8)
    else:
        free = exactla.gf2_nullspace(lower)
    top = np.zeros((n, r * n), dtype=np.uint8)
    for m in range(r):
        k = r - 1 - m
        if 0 <= k <= cx.max_weight:
            top[:, m * n:(m + 1) * n] = cx.delta(k)
    if free.size:
        dying_span = exactla.gf2_mul(free, top.T)
    else:
        dying_span = np.zeros((0, n), dtype=np.uint8)
    dying, _ = exactla.gf2_row_reduce(dying_span)
    dying = dying[np.any(dying, axis=1)]
    return surviving, dying


def _page_data(cx, r):
    cache = getattr(cx, "_page_cache", None)
    if cache is None:
        cache = cx._page_cache = {}
    if r not in cache:
        surviving, dying = _window(cx, r)
        rank = int(surviving.shape[0]) - int(dying.shape[0])
        reps = []
        if surviving.shape[0]:
            stack = [row for row in dying]
            base = exactla.gf2_rank(dying)
            for row in surviving:
                trial = exactla.gf2_matrix(stack + [row])
                if exactla.gf2_rank(trial) > base:
                    stack.append(row)
                    base += 1
                    reps.append(tuple(int(i) for i in np.nonzero(row)[0]))
        cache[r] = (rank, reps, dying)
    return cache[r]


def truncation_bound(cx):
    return len(cx.generators) * cx.max_weight + 1


class Page:
    """One page of the spectral sequence at a stable column."""

    __slots__ = ("index", "rank", "representatives")

    def __init__(self, index, rank, representatives):
        self.index = index
        self.rank = rank
        self.representatives = list(representatives)

    def __repr__(self):
        return "Page(E^%d, rank %d)" % (self.index, self.rank)


def pages(cx, max_page=None):
    """Pages E^1, E^2, ... with representative bases.

    Always computes through the provable stabilization bound; max_page
    only caps how many pages are listed.  The listing ends with two
    equal consecutive ranks (the stabilization certificate) unless
    max_page cuts it shorter.
    """
    cx.verify_graded_leibniz()
    bound = truncation_bound(cx)
    ranks = {}
    for r in range(1, bound + 2):
        ranks[r] = _page_data(cx, r)[0]
    if ranks[bound] != ranks[bound + 1]:
        raise InvariantViolation(
            "pages still moving at the provable truncation bound %d" % bound)
    last = stabilized_page(cx) + 1
    if max_page is not None:
        last = max(1, int(max_page))
    out = []
    for r in range(1, last + 1):
        if r <= bound + 1:
            rank, reps, _ = _page_data(cx, r)
        else:
            rank, reps, _ = _page_data(cx, bound + 1)
        out.append(Page(r, rank, reps))
    return out


def stabilized_page(cx):
    """First page index whose rank equals all later ranks."""
    bound = truncation_bound(cx)
    ranks = [_page_data(cx, r)[0] for r in range(1, bound + 2)]
    stab = len(ranks)
    for i in range(len(ranks) - 1, 0, -1):
        if ranks[i - 1] == ranks[i]:
            stab = i
        else:
            break
    return stab


def _theta_vector(cx, theta):
    i = cx.index_of(theta)
    vec = np.zeros(len(cx.generators), dtype=np.uint8)
    vec[i] = 1
    return vec


def class_is_zero(cx, theta, r):
    """Whether the class of theta dies on page r (at a stable column)."""
    _, _, dying = _page_data(cx, r)
    return exactla.gf2_in_span(dying, _theta_vector(cx, theta))


def at_order(cx, theta, max_page=None):
    """Smallest k with the class of theta trivial in E^(k+1); SURVIVES when
    the class lives in the stabilized page."""
    cx.verify_graded_leibniz()
    vec = _theta_vector(cx, theta)
    for k in sorted(cx.deltas):
        if np.any(exactla.gf2_mul(cx.deltas[k], vec.reshape(-1, 1))):
            raise NotACycle(
                "theta is not a cycle: the weight %d piece does not vanish "
                "on it" % k)
    bound = truncation_bound(cx)
    for r in range(1, bound + 2):
        if class_is_zero(cx, theta, r):
            return r - 1
    return SURVIVES


class TorsionReport:
    """Page ranks, fate of the contact class, the torsion order, and
    diagnostics; serializes to a stable JSON document."""

    def __init__(self, pages_, contact_class, at, diagnostics):
        self.pages = list(pages_)
        self.contact_class = contact_class
        self.at = at
        self.diagnostics = diagnostics

    def to_dict(self):
        return {
            "pages": self.pages,
            "contact_class": self.contact_class,
            "at": self.at,
            "diagnostics": self.diagnostics,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def torsion_report(cx, theta=None, max_page=None):
    """Assemble the full report for one complex.

    theta, when given, must be a generator of the complex; the per-page
    status and the AT value are reported for it.
    """
    page_list = pages(cx, max_page)
    ranks = [p.rank for p in page_list]
    labels = [g.label() for g in cx.generators]
    diagnostics = {
        "generators": labels,
        "spinc_index": cx.spinc_index,
        "weights_seen": cx.weights_seen(),
        "truncation_bound": truncation_bound(cx),
        "stabilized_at": stabilized_page(cx),
        "representatives": [
            ["+".join(labels[i] for i in rep) for rep in p.representatives]
            for p in page_list
        ],
    }
    diagnostics["homology_total"] = homology(cx)
    diagnostics["einf_matches_homology"] = \
        _page_data(cx, truncation_bound(cx) + 1)[0] == \
        diagnostics["homology_total"]
    contact_status = None
    at = None
    if theta is not None:
        at = at_order(cx, theta, max_page)
        contact_status = ["zero" if class_is_zero(cx, theta, p.index)
                          else "nonzero" for p in page_list]
        diagnostics["theta"] = theta.label()
    return TorsionReport(ranks, contact_status, at, diagnostics)

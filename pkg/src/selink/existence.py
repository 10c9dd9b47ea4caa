"""Sasaki-Einstein existence and obstruction tests on links.

All inequalities are evaluated strictly over exact rationals; sitting on a
boundary never counts as satisfying a test.  For a positive link (index
I = |w| - d > 0) the implemented rules are:

* Lichnerowicz-type obstruction: I > n * min_i w_i rules out any
  Sasaki-Einstein metric.
* A crude Kawamata-log-terminal sufficiency bound on the weight data:
  I * d < (n/(n-1)) * min_{i<j} w_i w_j guarantees existence.
* For Brieskorn-Pham exponents a, a sharper klt window
  1 < sum 1/a_i < 1 + (n/(n-1)) * min({1/a_i} and {1/(b_j b_k), j<k}),
  where b_j = gcd(a_j, lcm(a_i : i != j)).
* For pairwise coprime Brieskorn-Pham exponents the Ghigi-Kollar interval
  is sharp: a Sasaki-Einstein metric exists iff
  1 < sum 1/a_i < 1 + n * min_i 1/a_i.

Negative and null links are not candidates for Sasaki-Einstein metrics at
all, but always carry eta-Einstein structures (of negative and null type)
by transverse Aubin-Yau, and the verdict says so instead.

Each verdict records which rule decided it and the exact rational margin
by which the deciding inequality held (the minimum slack for two-sided
windows), so downstream consumers can see how close a case is to the
boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .links import BPExponents, WeightedLink, bp_to_link, classify_type

__all__ = [
    "ExistenceVerdict",
    "lichnerowicz_obstruction",
    "crude_klt",
    "bp_klt_window",
    "ghigi_kollar",
    "decide_existence",
]

STATUSES = ("se_exists", "obstructed", "unknown", "eta_einstein_exists")
RULES = ("ghigi_kollar", "lichnerowicz", "bp_klt_window", "crude_klt")


@dataclass(frozen=True)
class ExistenceVerdict:
    link_type: str
    status: str
    rule: str | None = None
    margin: Fraction | None = None

    def __post_init__(self):
        assert self.status in STATUSES
        assert self.rule is None or self.rule in RULES
        # A Sasaki-Einstein claim either way needs a positive link.
        if self.status in ("se_exists", "obstructed"):
            assert self.link_type == "positive"


def lichnerowicz_obstruction(link: WeightedLink) -> bool:
    """True iff I > n * min w_i, which forbids a Sasaki-Einstein metric.

    Only meaningful for positive links; for I <= 0 the inequality is
    vacuously false.
    """
    return link.index > link.n * min(link.weights)


def crude_klt(link: WeightedLink) -> bool:
    """True iff I * d < (n/(n-1)) * min_{i<j} w_i w_j.

    A sufficient condition for existence on positive links.  It evaluates
    on any link (vacuously true for I <= 0) but the aggregate verdict only
    consults it in the positive case.
    """
    n = link.n
    pair_min = min(a * b for a, b in combinations(link.weights, 2))
    return link.index * link.degree < Fraction(n, n - 1) * pair_min


def _bp_window_upper(bp: BPExponents) -> Fraction:
    """1 + (n/(n-1)) * min over 1/a_i and 1/(b_j b_k) for pairs j < k."""
    a = bp.exponents
    n = bp.n
    b = []
    for j in range(len(a)):
        c_j = math.lcm(*(a[i] for i in range(len(a)) if i != j))
        b.append(math.gcd(a[j], c_j))
    candidates = [Fraction(1, ai) for ai in a]
    candidates += [Fraction(1, bj * bk) for bj, bk in combinations(b, 2)]
    return 1 + Fraction(n, n - 1) * min(candidates)


def bp_klt_window(bp: BPExponents) -> bool:
    """Two-sided klt window test for Brieskorn-Pham exponents.

    Returns the bare truth of 1 < sum 1/a_i < upper bound; in particular
    it is false (not an error) on the positivity boundary sum 1/a_i = 1.
    """
    total = bp.reciprocal_sum()
    return 1 < total < _bp_window_upper(bp)


def ghigi_kollar(bp: BPExponents) -> str:
    """Sharp test for pairwise coprime exponents.

    Returns "exists", "not_exists", or "not_applicable" when the exponents
    are not pairwise coprime.
    """
    if not bp.pairwise_coprime():
        return "not_applicable"
    total = bp.reciprocal_sum()
    upper = 1 + Fraction(bp.n, max(bp.exponents))
    return "exists" if 1 < total < upper else "not_exists"


def decide_existence(
    link: WeightedLink, bp: BPExponents | None = None
) -> ExistenceVerdict:
    """Aggregate verdict with rule priority.

    Order: the sharp Ghigi-Kollar test when applicable is final; otherwise
    the Lichnerowicz obstruction; otherwise the sufficiency bounds (the
    Brieskorn-Pham window before the crude weight bound); otherwise
    unknown.  Negative and null links short-circuit to the eta-Einstein
    statement.  When ``bp`` is given it must present ``link``.
    """
    if bp is not None and bp_to_link(bp) != link:
        raise AssertionError("exponents do not present this link")
    link_type = classify_type(link)
    if link_type != "positive":
        return ExistenceVerdict(link_type=link_type, status="eta_einstein_exists")

    n = link.n
    wmin = min(link.weights)

    if bp is not None and bp.pairwise_coprime():
        total = bp.reciprocal_sum()
        upper = 1 + Fraction(n, max(bp.exponents))
        if ghigi_kollar(bp) == "exists":
            margin = min(total - 1, upper - total)
            return ExistenceVerdict(link_type, "se_exists", "ghigi_kollar", margin)
        # Positive link, so failure can only be at the upper end.  That
        # end coincides with the Lichnerowicz bound, and sharpness turns
        # the non-strict boundary case into an obstruction as well.
        return ExistenceVerdict(link_type, "obstructed", "ghigi_kollar", total - upper)

    if lichnerowicz_obstruction(link):
        margin = Fraction(link.index - n * wmin)
        return ExistenceVerdict(link_type, "obstructed", "lichnerowicz", margin)

    if bp is not None and bp_klt_window(bp):
        total = bp.reciprocal_sum()
        margin = min(total - 1, _bp_window_upper(bp) - total)
        return ExistenceVerdict(link_type, "se_exists", "bp_klt_window", margin)

    if crude_klt(link):
        pair_min = min(a * b for a, b in combinations(link.weights, 2))
        margin = Fraction(n, n - 1) * pair_min - link.index * link.degree
        return ExistenceVerdict(link_type, "se_exists", "crude_klt", margin)

    return ExistenceVerdict(link_type, "unknown")

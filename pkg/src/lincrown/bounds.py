"""Exact-rational bound formulas for crown-free linear r-graphs.

Everything here is evaluated with :class:`fractions.Fraction`; no floating
point appears in any check. Fractional upper bounds are floored only at
the final comparison with an integer edge count (:func:`floor_bound`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .crown import CrownEmbedding, degree_certificate, find_crown, k_map
from .hypergraph import InvalidParameterError, LinearRGraph

Rational = Fraction

BOUND_CSV_HEADER = "n,r,k,s,main_upper,zbw_upper,twz_upper,av_upper,grs_lower,grs_upper"


class NotApplicableError(ValueError):
    """The graph violates the hypothesis of the statement being checked."""

    def __init__(self, message: str, witness: CrownEmbedding | None = None):
        self.witness = witness
        super().__init__(message)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise InvalidParameterError(message)


def degree_cap(r: int, k: int) -> int:
    """Largest degree counted by the indicator: (k-1)(r-1)+1."""
    return (k - 1) * (r - 1) + 1


def s_threshold(r: int, k: int) -> int:
    """Degree at which a vertex counts towards s: (k-1)(r-1)+2."""
    return degree_cap(r, k) + 1


def p3_s_threshold(r: int) -> int:
    """Degree r+1, the high-degree cutoff for 3-edge paths (k=2)."""
    return r + 1


def floor_bound(x: Fraction) -> int:
    return math.floor(x)


def main_upper(n: int, r: int, k: int, s: int) -> Fraction:
    """((k-1)(r-1)+1)(n-s)/r, the upper bound for k-crown-free graphs."""
    _require(r >= 2 and 1 <= k <= r, f"need 1 <= k <= r, got k={k}, r={r}")
    _require(0 <= s <= n, f"need 0 <= s <= n, got s={s}, n={n}")
    return Fraction(degree_cap(r, k) * (n - s), r)


def zbw_upper(n: int, r: int, s: int) -> Fraction:
    """r(r-2)(n-s)/(r-1), for graphs avoiding the r-crown and C*(1,r)."""
    _require(r >= 3, f"need r >= 3, got r={r}")
    _require(0 <= s <= n, f"need 0 <= s <= n, got s={s}, n={n}")
    return Fraction(r * (r - 2) * (n - s), r - 1)


def zbw_lower(n: int, r: int) -> int:
    _require(r >= 3 and n >= r, f"need r >= 3 and n >= r, got r={r}, n={n}")
    return r * (r - 1) * ((n - r) // (r - 1) ** 2)


def grs_epsilon(n: int) -> int:
    return {0: 0, 1: 0, 2: 1, 3: 3}[(n - 3) % 4]


def grs_bounds(n: int) -> tuple[int, int]:
    """Lower and upper bound on the 3-crown number of linear 3-graphs."""
    _require(n >= 3, f"need n >= 3, got {n}")
    return 6 * ((n - 3) // 4) + grs_epsilon(n), 2 * n


def twz_upper(n: int, s: int) -> Fraction:
    """3(n-s)/2 for linear 3-graphs without a 3-crown (s: degree >= 6)."""
    _require(0 <= s <= n, f"need 0 <= s <= n, got s={s}, n={n}")
    return Fraction(3 * (n - s), 2)


def av_upper(n: int, r: int) -> Fraction:
    """(2r-1)n/r for linear r-graphs without a 3-crown."""
    _require(r >= 3 and n >= 0, f"need r >= 3, n >= 0, got r={r}, n={n}")
    return Fraction((2 * r - 1) * n, r)


def compare_zbw(n: int, r: int, s: int) -> Fraction:
    """zbw_upper - main_upper at k = r; equals (n-s)(r^2-4r+2)/(r(r-1))."""
    return zbw_upper(n, r, s) - main_upper(n, r, r, s)


def p2_bound(n: int, r: int) -> int:
    _require(n >= 0 and r >= 2, f"need n >= 0, r >= 2, got n={n}, r={r}")
    return n // r


class Ineq3(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    holds: bool


def ineq3_check(r: int, k: int, i: int) -> Ineq3:
    """Compare (r-i+1)/((k-i)(r-1)+1) with r/((k-1)(r-1)+1).

    The difference is also checked against its closed factorisation
    (i-1)(r(r-k)+k-2) / (((k-i)(r-1)+1)((k-1)(r-1)+1)).
    """
    _require(r >= 3 and 1 <= i <= k <= r, f"need 1 <= i <= k <= r, r >= 3; got r={r}, k={k}, i={i}")
    lhs = Fraction(r - i + 1, (k - i) * (r - 1) + 1)
    rhs = Fraction(r, degree_cap(r, k))
    factored = Fraction(
        (i - 1) * (r * (r - k) + k - 2),
        ((k - i) * (r - 1) + 1) * degree_cap(r, k),
    )
    if lhs - rhs != factored:
        raise AssertionError(f"factorisation mismatch at r={r}, k={k}, i={i}")
    return Ineq3(lhs, rhs, lhs >= rhs)


def indicator(g: LinearRGraph, k: int) -> list[int]:
    """1 for vertices of degree at most (k-1)(r-1)+1, else 0."""
    cap = degree_cap(g.r, k)
    return [1 if d <= cap else 0 for d in g.degrees()]


class DoubleCount(NamedTuple):
    lhs: Fraction
    rhs: int
    equal: bool


def double_count_identity(g: LinearRGraph, k: int) -> DoubleCount:
    """Sum over edges and their vertices of I(v)/d(v), against n - s."""
    _require(1 <= k <= g.r, f"need 1 <= k <= r={g.r}, got {k}")
    g.require_no_isolated()
    ind = indicator(g, k)
    deg = g.degrees()
    lhs = sum(
        (Fraction(ind[v], deg[v]) for e in g.edges for v in e),
        Fraction(0),
    )
    rhs = g.n - g.s_count(s_threshold(g.r, k))
    return DoubleCount(lhs, rhs, lhs == rhs)


class EdgeWeight(NamedTuple):
    weight: Fraction
    lower: Fraction
    index: int


def edge_weight_lower(g: LinearRGraph, e, k: int) -> EdgeWeight:
    """Per-edge weight sum_{v in e} I(v)/d(v) and its certified lower bound.

    With i the degree-certificate position, the weight is at least
    (r-i+1)/((k-i)(r-1)+1). Needs a certificate, which exists whenever
    ``e`` is not the base of a k-crown.
    """
    cert = degree_certificate(g, e, k)
    if cert is None:
        raise NotApplicableError(f"edge {list(g.edges[g.edge_index(e)])} is the base of a {k}-crown")
    r = g.r
    cap = degree_cap(r, k)
    weight = sum(
        (Fraction(1, g.degree(v)) for v in cert.edge if g.degree(v) <= cap),
        Fraction(0),
    )
    lower = Fraction(r - cert.index + 1, (k - cert.index) * (r - 1) + 1)
    return EdgeWeight(weight, lower, cert.index)


def _require_crown_free(g: LinearRGraph, k: int) -> None:
    witness = find_crown(g, k)
    if witness is not None:
        raise NotApplicableError(f"graph contains a {k}-crown", witness)


@dataclass
class WeightedCheck:
    lhs: Fraction
    rhs: Fraction
    holds: bool
    k_values: list[int] = field(default_factory=list)


def weighted_check(g: LinearRGraph, k: int) -> WeightedCheck:
    """Sum of 1/(k(e)(r-1)+1) over edges against (n-s)/r.

    Refuses graphs that contain a k-crown or isolated vertices.
    """
    _require(1 <= k <= g.r, f"need 1 <= k <= r={g.r}, got {k}")
    _require_crown_free(g, k)
    g.require_no_isolated()
    ks = k_map(g)
    lhs = sum((Fraction(1, t * (g.r - 1) + 1) for t in ks), Fraction(0))
    rhs = Fraction(g.n - g.s_count(s_threshold(g.r, k)), g.r)
    return WeightedCheck(lhs, rhs, lhs <= rhs, ks)


@dataclass
class P3Report:
    n: int
    edge_count: int
    s: int
    star_centers: dict[int, bool]
    bound_holds: bool
    strict_holds: bool

    @property
    def ok(self) -> bool:
        return all(self.star_centers.values()) and self.bound_holds and self.strict_holds


def _component_edges(g: LinearRGraph, v: int) -> set[int]:
    seen_v = {v}
    stack = [v]
    comp: set[int] = set()
    while stack:
        u = stack.pop()
        for j in g.incident(u):
            if j not in comp:
                comp.add(j)
                for w in g.edges[j]:
                    if w not in seen_v:
                        seen_v.add(w)
                        stack.append(w)
    return comp


def p3_claim_check(g: LinearRGraph) -> P3Report:
    """Check the star-component structure of a graph without 3-edge paths.

    Every vertex of degree >= r+1 must be the common vertex of all edges in
    its component, and |E| <= n-s with strict inequality when s > 0.
    """
    _require_crown_free(g, 2)
    threshold = p3_s_threshold(g.r)
    centers = {}
    for v in range(g.n):
        if g.degree(v) >= threshold:
            comp = _component_edges(g, v)
            centers[v] = all(v in g.edges[j] for j in comp)
    s = len(centers)
    m = g.m
    return P3Report(
        n=g.n,
        edge_count=m,
        s=s,
        star_centers=centers,
        bound_holds=m <= g.n - s,
        strict_holds=(s == 0) or m <= g.n - s - 1,
    )


def format_rational(x: Fraction | None) -> str:
    if x is None:
        return ""
    return f"{x.numerator}/{x.denominator}"


@dataclass
class BoundReport:
    n: int
    r: int
    k: int
    s: int
    main_upper: Fraction
    zbw_upper: Fraction | None = None
    twz_upper: Fraction | None = None
    av_upper: Fraction | None = None
    grs_lower: int | None = None
    grs_upper: int | None = None
    edge_count: int | None = None

    @property
    def satisfied(self) -> bool | None:
        if self.edge_count is None:
            return None
        return self.edge_count <= floor_bound(self.main_upper)

    def csv_row(self) -> str:
        cells = [
            str(self.n), str(self.r), str(self.k), str(self.s),
            format_rational(self.main_upper),
            format_rational(self.zbw_upper),
            format_rational(self.twz_upper),
            format_rational(self.av_upper),
            "" if self.grs_lower is None else str(self.grs_lower),
            "" if self.grs_upper is None else str(self.grs_upper),
        ]
        return ",".join(cells)


def bound_report(n: int, r: int, k: int, s: int = 0, edge_count: int | None = None) -> BoundReport:
    """All bounds that apply to (n, r, k); comparisons are filled only where
    the cited statement covers the same forbidden configuration."""
    rep = BoundReport(n, r, k, s, main_upper(n, r, k, s), edge_count=edge_count)
    if r >= 3 and k == r and n >= r:
        rep.zbw_upper = zbw_upper(n, r, s)
    if r == 3 and k == 3:
        rep.twz_upper = twz_upper(n, s)
    if r >= 3 and k == 3:
        rep.av_upper = av_upper(n, r)
    if r == 3 and k == 3 and n >= 3:
        rep.grs_lower, rep.grs_upper = grs_bounds(n)
    return rep


def graph_bound_report(g: LinearRGraph, k: int) -> BoundReport:
    s = g.s_count(s_threshold(g.r, k))
    return bound_report(g.n, g.r, k, s, edge_count=g.m)

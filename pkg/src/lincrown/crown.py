"""Crown configurations C(1,k) in linear r-graphs.

A k-crown is a base edge together with k pairwise disjoint spokes, each
meeting the base in a distinct vertex. ``k = 1`` is the 2-edge linear path
and ``k = 2`` the 3-edge linear path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .hypergraph import Edge, InvalidParameterError, LinearRGraph


@dataclass(frozen=True)
class CrownEmbedding:
    base: Edge
    attachments: tuple[int, ...]
    spokes: tuple[Edge, ...]

    @property
    def k(self) -> int:
        return len(self.spokes)

    def is_valid(self, g: LinearRGraph | None = None) -> bool:
        """Check the crown shape, and membership in ``g`` when given."""
        base = set(self.base)
        if len(self.attachments) != len(self.spokes):
            return False
        if len(set(self.attachments)) != len(self.attachments):
            return False
        seen: set[int] = set()
        for v, spoke in zip(self.attachments, self.spokes):
            s = set(spoke)
            if spoke == self.base or s & base != {v}:
                return False
            if s & seen:
                return False
            seen |= s
        if g is not None:
            return self.base in g and all(sp in g for sp in self.spokes)
        return True


@dataclass(frozen=True)
class DegreeCertificate:
    """An edge position whose degree is small enough to rule out a k-crown
    built greedily on this edge."""

    edge: Edge
    index: int  # 1-based position in the non-increasing degree order
    vertex: int
    degree: int
    bound_value: int


class GreedyStuck(LookupError):
    """The greedy spoke choice found no usable edge at ``index`` (1-based)."""

    def __init__(self, index: int, vertex: int):
        self.index = index
        self.vertex = vertex
        super().__init__(f"no free spoke through vertex {vertex} at step {index}")


def _check_k(g: LinearRGraph, k: int) -> None:
    if not 1 <= k <= g.r:
        raise InvalidParameterError(f"k must satisfy 1 <= k <= r={g.r}, got {k}")


def greedy_crown(g: LinearRGraph, base, attachments: Sequence[int]) -> CrownEmbedding:
    """Pick spokes greedily, one per attachment vertex, in the given order.

    At each step the lowest-index edge through the attachment that differs
    from the base and avoids all earlier spokes is taken. Raises
    :class:`GreedyStuck` when no such edge exists.
    """
    b = g.edge_index(base)
    base_edge = g.edges[b]
    k = len(attachments)
    _check_k(g, k)
    if len(set(attachments)) != k or any(v not in base_edge for v in attachments):
        raise InvalidParameterError(
            f"attachments {list(attachments)} must be distinct vertices of {list(base_edge)}"
        )
    used: set[int] = set()
    spokes: list[Edge] = []
    for i, v in enumerate(attachments, start=1):
        for j in g.incident(v):
            if j == b:
                continue
            e = g.edges[j]
            if used.isdisjoint(e):
                spokes.append(e)
                used.update(e)
                break
        else:
            raise GreedyStuck(i, v)
    return CrownEmbedding(base_edge, tuple(attachments), tuple(spokes))


def _crown_search(g: LinearRGraph, b: int, k: int) -> CrownEmbedding | None:
    edges = g.edges
    base = edges[b]
    cands = []
    for v in base:
        spokes = [j for j in g._incident[v] if j != b]
        if spokes:
            cands.append((v, spokes))
    if len(cands) < k:
        return None
    used: set[int] = set()
    chosen: list[tuple[int, int]] = []
    total = len(cands)

    def extend(pos: int, need: int) -> bool:
        if need == 0:
            return True
        if total - pos < need:
            return False
        v, spokes = cands[pos]
        for j in spokes:
            e = edges[j]
            if used.isdisjoint(e):
                used.update(e)
                chosen.append((v, j))
                if extend(pos + 1, need - 1):
                    return True
                chosen.pop()
                used.difference_update(e)
        return extend(pos + 1, need)

    if not extend(0, k):
        return None
    return CrownEmbedding(
        base,
        tuple(v for v, _ in chosen),
        tuple(edges[j] for _, j in chosen),
    )


def exact_crown_with_base(g: LinearRGraph, base, k: int) -> CrownEmbedding | None:
    """Find a k-crown with ``base`` as its base edge, or ``None``.

    Complete backtracking: base vertices are tried in increasing id order
    (taking a vertex before skipping it) and spokes in increasing edge
    index, so the first embedding in that order is returned.
    """
    b = g.edge_index(base)
    _check_k(g, k)
    return _crown_search(g, b, k)


def k_of_edge(g: LinearRGraph, e) -> int:
    """Largest t such that ``e`` is the base of a t-crown (0 if none)."""
    b = g.edge_index(e)
    # only base vertices that carry another edge can host a spoke
    top = sum(1 for v in g.edges[b] if len(g._incident[v]) >= 2)
    for t in range(min(top, g.r), 0, -1):
        if _crown_search(g, b, t) is not None:
            return t
    return 0


def k_map(g: LinearRGraph) -> list[int]:
    return [k_of_edge(g, b) for b in range(g.m)]


def find_crown(g: LinearRGraph, k: int) -> CrownEmbedding | None:
    """First k-crown found scanning base edges by index, or ``None``."""
    _check_k(g, k)
    for b in range(g.m):
        emb = _crown_search(g, b, k)
        if emb is not None:
            return emb
    return None


def is_crown_free(g: LinearRGraph, k: int) -> bool:
    return find_crown(g, k) is None


def creates_crown(g: LinearRGraph, b: int, k: int) -> CrownEmbedding | None:
    """A k-crown using edge ``b``, assuming ``g`` minus ``b`` had none.

    Such a crown has ``b`` either as base or as a spoke, and in the second
    case its base meets ``b``.
    """
    emb = _crown_search(g, b, k)
    if emb is not None:
        return emb
    for j in g.neighbors_via_edges(b):
        emb = _crown_search(g, j, k)
        if emb is not None:
            return emb
    return None


def degree_certificate(g: LinearRGraph, e, k: int) -> DegreeCertificate | None:
    """Smallest i in 1..k with d(u_i) <= (k-i)(r-1)+1, degrees sorted
    non-increasingly (ties by vertex id); ``None`` when every position
    exceeds its bound, in which case a k-crown on ``e`` exists."""
    b = g.edge_index(e)
    _check_k(g, k)
    order = g.edge_degrees_desc(b)
    r = g.r
    for i in range(1, k + 1):
        v, d = order[i - 1]
        bound = (k - i) * (r - 1) + 1
        if d <= bound:
            return DegreeCertificate(g.edges[b], i, v, d, bound)
    return None


def reversed_assignment(g: LinearRGraph, e, k: int) -> list[int]:
    """Attachments v_i = u_(k-i+1) used when no degree certificate exists."""
    order = g.edge_degrees_desc(e)
    return [order[k - i][0] for i in range(1, k + 1)]

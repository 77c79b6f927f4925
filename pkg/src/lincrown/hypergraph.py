"""Linear r-uniform hypergraphs with enforced linearity.

Vertices are dense integers ``0..n-1``; an edge is a sorted tuple of ``r``
distinct vertices. Every pair of vertices may be covered by at most one
edge, and :meth:`LinearRGraph.add_edge` refuses anything that would break
that.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

Edge = tuple[int, ...]


class HypergraphError(ValueError):
    """Base class for invalid graph construction or input."""


class InvalidParameterError(HypergraphError):
    pass


class ArityError(HypergraphError):
    def __init__(self, vertices: Sequence[int], r: int):
        self.vertices = tuple(vertices)
        self.r = r
        super().__init__(f"edge {list(vertices)} does not have exactly {r} distinct vertices")


class VertexRangeError(HypergraphError):
    def __init__(self, vertex: int, n: int):
        self.vertex = vertex
        self.n = n
        super().__init__(f"vertex {vertex} out of range for n={n}")


class DuplicateEdgeError(HypergraphError):
    def __init__(self, edge: Edge):
        self.edge = edge
        super().__init__(f"duplicate edge {list(edge)}")


class LinearityError(HypergraphError):
    """Raised when a new edge would cover an already covered pair."""

    def __init__(self, pair: tuple[int, int], edge: Edge, existing: Edge):
        self.pair = pair
        self.edge = edge
        self.existing = existing
        super().__init__(
            f"pair {{{pair[0]},{pair[1]}}} of {list(edge)} already covered by {list(existing)}"
        )


class UnknownEdgeError(HypergraphError, KeyError):
    def __init__(self, edge):
        self.edge = edge
        HypergraphError.__init__(self, f"edge {edge!r} is not in the graph")

    __str__ = HypergraphError.__str__


class IsolatedVertexError(HypergraphError):
    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} is isolated")


class GraphFormatError(HypergraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class LinearRGraph:
    """A linear r-uniform hypergraph on vertices ``0..n-1``.

    Edges keep their insertion order (edge indices are stable); equality
    compares the sorted edge lists so two graphs built in different orders
    compare equal.
    """

    __slots__ = ("n", "r", "edges", "_pairs", "_incident", "_index")

    def __init__(self, n: int, r: int, edges: Iterable[Iterable[int]] = ()):
        if r < 2:
            raise InvalidParameterError(f"uniformity r must be >= 2, got {r}")
        if n < 0:
            raise InvalidParameterError(f"vertex count n must be >= 0, got {n}")
        self.n = n
        self.r = r
        self.edges: list[Edge] = []
        # pair key i*n+j (i<j) -> index of the covering edge
        self._pairs: dict[int, int] = {}
        self._incident: list[list[int]] = [[] for _ in range(n)]
        self._index: dict[Edge, int] = {}
        for e in edges:
            self.add_edge(e)

    def canonical_edge(self, vs: Iterable[int]) -> Edge:
        e = tuple(sorted(vs))
        if len(e) != self.r or len(set(e)) != self.r:
            raise ArityError(e, self.r)
        for v in e:
            if not 0 <= v < self.n:
                raise VertexRangeError(v, self.n)
        return e

    def conflict(self, e: Edge) -> tuple[int, int] | None:
        """First pair of the canonical edge ``e`` that is already covered."""
        n = self.n
        pairs = self._pairs
        for a in range(len(e) - 1):
            base = e[a] * n
            for b in range(a + 1, len(e)):
                if base + e[b] in pairs:
                    return (e[a], e[b])
        return None

    def add_edge(self, vs: Iterable[int]) -> int:
        """Add an edge and return its index."""
        e = self.canonical_edge(vs)
        if e in self._index:
            raise DuplicateEdgeError(e)
        pair = self.conflict(e)
        if pair is not None:
            existing = self.edges[self._pairs[pair[0] * self.n + pair[1]]]
            raise LinearityError(pair, e, existing)
        return self._append(e)

    def _append(self, e: Edge) -> int:
        idx = len(self.edges)
        n = self.n
        self.edges.append(e)
        self._index[e] = idx
        for a in range(len(e) - 1):
            base = e[a] * n
            for b in range(a + 1, len(e)):
                self._pairs[base + e[b]] = idx
        for v in e:
            self._incident[v].append(idx)
        return idx

    def _pop(self) -> Edge:
        """Remove the most recently added edge (search backtracking)."""
        e = self.edges.pop()
        del self._index[e]
        n = self.n
        for a in range(len(e) - 1):
            base = e[a] * n
            for b in range(a + 1, len(e)):
                del self._pairs[base + e[b]]
        for v in e:
            self._incident[v].pop()
        return e

    def copy(self) -> LinearRGraph:
        g = LinearRGraph.__new__(LinearRGraph)
        g.n = self.n
        g.r = self.r
        g.edges = list(self.edges)
        g._pairs = dict(self._pairs)
        g._incident = [list(x) for x in self._incident]
        g._index = dict(self._index)
        return g

    # queries

    @property
    def m(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __contains__(self, e) -> bool:
        return tuple(sorted(e)) in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearRGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.r == other.r
            and sorted(self.edges) == sorted(other.edges)
        )

    def __hash__(self):
        return hash((self.n, self.r, tuple(sorted(self.edges))))

    def __repr__(self) -> str:
        return f"LinearRGraph(n={self.n}, r={self.r}, edges={self.edges!r})"

    def edge_index(self, e) -> int:
        """Index of edge ``e``; ``e`` may also be an index already."""
        if isinstance(e, int):
            if 0 <= e < len(self.edges):
                return e
            raise UnknownEdgeError(e)
        try:
            return self._index[tuple(sorted(e))]
        except (KeyError, TypeError):
            raise UnknownEdgeError(e) from None

    def covering_edge(self, u: int, v: int) -> int | None:
        if u > v:
            u, v = v, u
        return self._pairs.get(u * self.n + v)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise VertexRangeError(v, self.n)

    def incident(self, v: int) -> list[int]:
        """Indices of the edges containing ``v``, in insertion order."""
        self._check_vertex(v)
        return self._incident[v]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._incident[v])

    def degrees(self) -> list[int]:
        return [len(x) for x in self._incident]

    def edge_degrees_desc(self, e) -> list[tuple[int, int]]:
        """``(vertex, degree)`` for the vertices of ``e``, degrees non-increasing.

        Ties are broken by ascending vertex id.
        """
        edge = self.edges[self.edge_index(e)]
        return sorted(((v, len(self._incident[v])) for v in edge), key=lambda p: (-p[1], p[0]))

    def s_count(self, threshold: int) -> int:
        """Number of vertices of degree at least ``threshold``."""
        if threshold < 0:
            raise InvalidParameterError(f"threshold must be >= 0, got {threshold}")
        return sum(1 for x in self._incident if len(x) >= threshold)

    def isolated_vertices(self) -> list[int]:
        return [v for v, x in enumerate(self._incident) if not x]

    def require_no_isolated(self) -> None:
        for v, x in enumerate(self._incident):
            if not x:
                raise IsolatedVertexError(v)

    def neighbors_via_edges(self, e) -> list[int]:
        """Indices of the other edges meeting edge ``e``."""
        idx = self.edge_index(e)
        out: list[int] = []
        for v in self.edges[idx]:
            out.extend(j for j in self._incident[v] if j != idx)
        return sorted(out)

    def relabel(self, mapping: Sequence[int], n: int | None = None) -> LinearRGraph:
        """Graph with vertex ``v`` renamed to ``mapping[v]``."""
        g = LinearRGraph(self.n if n is None else n, self.r)
        for e in self.edges:
            g.add_edge(mapping[v] for v in e)
        return g

    def without_isolated(self) -> LinearRGraph:
        """Copy with isolated vertices removed and the rest relabelled densely."""
        keep = [v for v, x in enumerate(self._incident) if x]
        mapping = [-1] * self.n
        for new, v in enumerate(keep):
            mapping[v] = new
        return self.relabel(mapping, n=len(keep))

    def pair_cover_consistent(self) -> bool:
        """Recompute the pair cover from scratch and compare."""
        expected: dict[int, int] = {}
        for idx, e in enumerate(self.edges):
            for a in range(len(e) - 1):
                for b in range(a + 1, len(e)):
                    key = e[a] * self.n + e[b]
                    if key in expected:
                        return False
                    expected[key] = idx
        return expected == self._pairs


def new_graph(n: int, r: int) -> LinearRGraph:
    return LinearRGraph(n, r)


def add_edge(g: LinearRGraph, vs: Iterable[int]) -> LinearRGraph:
    """Add ``vs`` to ``g`` in place and return ``g``."""
    g.add_edge(vs)
    return g


def degree(g: LinearRGraph, v: int) -> int:
    return g.degree(v)


def edge_degrees_desc(g: LinearRGraph, e) -> list[tuple[int, int]]:
    return g.edge_degrees_desc(e)


def s_count(g: LinearRGraph, threshold: int) -> int:
    return g.s_count(threshold)


def serialize_graph(g: LinearRGraph, comments: Iterable[str] = ()) -> str:
    """Text form: header ``r n m``, optional ``#`` comments, one edge per line."""
    lines = [f"{g.r} {g.n} {g.m}"]
    for c in comments:
        for part in str(c).splitlines() or [""]:
            lines.append("# " + part if part else "#")
    lines.extend(" ".join(map(str, e)) for e in g.edges)
    return "\n".join(lines) + "\n"


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        vals = [int(t) for t in tokens]
    except ValueError:
        raise GraphFormatError(f"non-integer token in {' '.join(tokens)!r}", lineno) from None
    if any(not t.isdigit() for t in tokens):
        raise GraphFormatError(f"expected non-negative decimal integers, got {' '.join(tokens)!r}", lineno)
    return vals


def parse_graph(text: str) -> LinearRGraph:
    """Inverse of :func:`serialize_graph`. Comment and blank lines are skipped."""
    g: LinearRGraph | None = None
    expected_m = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if g is None:
            if len(tokens) != 3:
                raise GraphFormatError("header must be 'r n m'", lineno)
            r, n, expected_m = _ints(tokens, lineno)
            try:
                g = LinearRGraph(n, r)
            except InvalidParameterError as exc:
                raise GraphFormatError(str(exc), lineno) from None
            continue
        if len(tokens) != g.r:
            raise GraphFormatError(f"expected {g.r} vertices, got {len(tokens)}", lineno)
        if g.m == expected_m:
            raise GraphFormatError(f"more than the declared {expected_m} edges", lineno)
        try:
            g.add_edge(_ints(tokens, lineno))
        except HypergraphError as exc:
            raise GraphFormatError(str(exc), lineno) from exc
    if g is None:
        raise GraphFormatError("missing header")
    if g.m != expected_m:
        raise GraphFormatError(f"header declares {expected_m} edges, found {g.m}")
    return g


def read_graph(path) -> LinearRGraph:
    with open(path, encoding="ascii") as fh:
        return parse_graph(fh.read())


def write_graph(g: LinearRGraph, path, comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(serialize_graph(g, comments))

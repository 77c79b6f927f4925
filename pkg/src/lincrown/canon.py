"""Canonical labelling of linear r-graphs for isomorph rejection.

Degree-1 vertices in a common edge are interchangeable, so they are folded
into a per-edge pendant count and only vertices of degree >= 2 (the core)
are labelled. Core labelling is individualisation-refinement: colours are
refined from incidence signatures until stable, the first non-singleton
cell is split on each of its vertices in turn, and the least leaf
certificate wins. Automorphisms found between equal leaves prune sibling
branches that lie in an already explored orbit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hypergraph import LinearRGraph

Cert = tuple


@dataclass(frozen=True)
class CanonicalForm:
    certificate: bytes

    def __str__(self) -> str:
        return self.certificate.decode("ascii")


class _Labeller:
    __slots__ = ("ncore", "vinc", "ecore", "pend", "best", "best_lab", "first", "first_lab", "gens")

    def __init__(self, ncore, vinc, ecore, pend):
        self.ncore = ncore
        self.vinc = vinc
        self.ecore = ecore
        self.pend = pend
        self.best = None
        self.best_lab = None
        self.first = None
        self.first_lab = None
        self.gens: list[list[int]] = []

    def refine(self, col: list[int]) -> list[int]:
        """Split colour classes by incidence signatures until stable.

        Returned colours are dense ranks, ordered consistently with the input.
        """
        ecore = self.ecore
        pend = self.pend
        vinc = self.vinc
        ncol = -1
        while True:
            esig = [(pend[j], tuple(sorted([col[u] for u in ecore[j]]))) for j in range(len(ecore))]
            vsig = [(col[v], tuple(sorted([esig[j] for j in vinc[v]]))) for v in range(self.ncore)]
            ranks = {s: i for i, s in enumerate(sorted(set(vsig)))}
            col = [ranks[s] for s in vsig]
            if len(ranks) == ncol or len(ranks) == self.ncore:
                return col
            ncol = len(ranks)

    def leaf_cert(self, lab: list[int]) -> Cert:
        return tuple(sorted((tuple(sorted([lab[u] for u in ec])), p) for ec, p in zip(self.ecore, self.pend)))

    def search(self, col: list[int], prefix: list[int]) -> None:
        c = self.ncore
        counts: dict[int, int] = {}
        for x in col:
            counts[x] = counts.get(x, 0) + 1
        target = min((x for x, cnt in counts.items() if cnt > 1), default=None)
        if target is None:
            self.leaf(col)
            return
        cell = [v for v in range(c) if col[v] == target]
        explored: list[int] = []
        for v in cell:
            if explored and self._same_orbit(v, explored, prefix):
                continue
            explored.append(v)
            child = [2 * x + (0 if u == v else 1) if x == target else 2 * x for u, x in enumerate(col)]
            prefix.append(v)
            self.search(self.refine(child), prefix)
            prefix.pop()

    def _same_orbit(self, v: int, explored: list[int], prefix: list[int]) -> bool:
        gens = [g for g in self.gens if all(g[p] == p for p in prefix)]
        if not gens:
            return False
        parent = list(range(self.ncore))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in gens:
            for x in range(self.ncore):
                a, b = find(x), find(g[x])
                if a != b:
                    parent[a] = b
        root = find(v)
        return any(find(u) == root for u in explored)

    def leaf(self, lab: list[int]) -> None:
        cert = self.leaf_cert(lab)
        if self.first is None:
            self.first, self.first_lab = cert, lab
            self.best, self.best_lab = cert, lab
            return
        for ref, ref_lab in ((self.first, self.first_lab), (self.best, self.best_lab)):
            if cert == ref:
                # vertex x has the role that inv[lab[x]] plays in the reference
                inv = [0] * self.ncore
                for x, l in enumerate(ref_lab):
                    inv[l] = x
                self.gens.append([inv[lab[x]] for x in range(self.ncore)])
                return
        if cert < self.best:
            self.best, self.best_lab = cert, lab


def _structure(g: LinearRGraph):
    deg = g.degrees()
    core = [v for v in range(g.n) if deg[v] >= 2]
    local = {v: i for i, v in enumerate(core)}
    ecore = []
    pend = []
    for e in g.edges:
        cs = [local[v] for v in e if v in local]
        ecore.append(cs)
        pend.append(g.r - len(cs))
    vinc = [[] for _ in core]
    for j, cs in enumerate(ecore):
        for u in cs:
            vinc[u].append(j)
    init = [deg[v] for v in core]
    return core, ecore, pend, vinc, init


def _label(g: LinearRGraph):
    core, ecore, pend, vinc, init = _structure(g)
    lab = _Labeller(len(core), vinc, ecore, pend)
    ranks = {d: i for i, d in enumerate(sorted(set(init)))}
    col = lab.refine([ranks[d] for d in init])
    lab.search(col, [])
    return core, lab


def certificate(g: LinearRGraph) -> Cert:
    """Hashable isomorphism invariant that separates non-isomorphic graphs."""
    _, lab = _label(g)
    return (g.n, g.r, lab.ncore, lab.best)


def _encode(cert: Cert) -> bytes:
    n, r, c, edges = cert
    parts = [f"{n}", f"{r}", f"{c}"]
    for cs, p in edges:
        parts.append(".".join(map(str, cs)) + f":{p}")
    return ";".join(parts).encode("ascii")


def canonical_form(g: LinearRGraph) -> CanonicalForm:
    return CanonicalForm(_encode(certificate(g)))


def canonical_graph(g: LinearRGraph) -> LinearRGraph:
    """Relabelled copy of ``g`` that depends only on its isomorphism class.

    Core vertices get their canonical labels, pendant vertices follow in the
    order of the sorted canonical edge list, isolated vertices come last.
    """
    core, lab = _label(g)
    c = lab.ncore
    out = LinearRGraph(g.n, g.r)
    nxt = c
    for cs, p in lab.best:
        out.add_edge([*cs, *range(nxt, nxt + p)])
        nxt += p
    return out

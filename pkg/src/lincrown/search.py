"""Exact linear Turán numbers for crowns and short paths at small n.

Depth-first search over isomorphism classes of F-free linear r-graphs on
exactly ``n`` vertices. Every child of a node adds one admissible edge;
children whose canonical certificate was already seen at that edge count
are dropped. Since F-freeness is hereditary, every class with m+1 edges
arises from some class with m edges, so expanding all admissible edges of
every new class is complete.

A node is pruned only when its upper estimate is strictly below the
incumbent. All optimal classes are therefore reached, and the reported
witness (least certificate among them) does not depend on traversal order
or on the number of workers.
"""

from __future__ import annotations

import itertools
import logging
import math
import multiprocessing as mp
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import bounds
from .canon import canonical_graph, certificate
from .crown import creates_crown, find_crown
from .hypergraph import Edge, InvalidParameterError, LinearRGraph

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**8
CHECKPOINT = 10**6

TABLE_CSV_HEADER = "n,r,k,exact,lower_grs,upper_main,upper_zbw,upper_twz,upper_av,status"


@dataclass(frozen=True)
class Forbidden:
    """A forbidden configuration, always expressed as a k-crown
    (``p2`` is the 1-crown, ``p3`` the 2-crown)."""

    kind: str
    k: int

    @classmethod
    def parse(cls, text: str) -> Forbidden:
        text = text.strip().lower()
        if text == "p2":
            return cls("p2", 1)
        if text == "p3":
            return cls("p3", 2)
        if text.startswith("crown:"):
            try:
                k = int(text.split(":", 1)[1])
            except ValueError:
                raise InvalidParameterError(f"bad crown size in {text!r}") from None
            if k < 1:
                raise InvalidParameterError(f"crown size must be >= 1, got {k}")
            return cls("crown", k)
        raise InvalidParameterError(f"unknown forbidden family {text!r}; use crown:K, p2 or p3")

    @classmethod
    def crown(cls, k: int) -> Forbidden:
        return cls("crown", k)

    def __str__(self) -> str:
        return f"crown:{self.k}" if self.kind == "crown" else self.kind


@dataclass
class SearchOptions:
    jobs: int = 1
    node_budget: int = DEFAULT_BUDGET
    initial_lower: int | None = None
    use_main_bound: bool = True
    checkpoint: int = CHECKPOINT


@dataclass
class SearchResult:
    n: int
    r: int
    forbidden: Forbidden
    max_edges: int
    witness: LinearRGraph
    nodes_expanded: int
    pruned_by_bound: int
    wall_time: float
    optimal: bool = True
    optimal_classes: int = 1

    def summary(self) -> str:
        lines = [
            f"n={self.n}",
            f"r={self.r}",
            f"forbidden={self.forbidden}",
            f"max_edges={self.max_edges}",
            f"optimal={'yes' if self.optimal else 'unproven'}",
            f"optimal_classes={self.optimal_classes}",
            f"nodes_expanded={self.nodes_expanded}",
            f"pruned_by_bound={self.pruned_by_bound}",
        ]
        return "\n".join(lines) + "\n"


class SearchBudgetExceeded(RuntimeError):
    """Node budget exhausted; ``partial`` holds the best graph found so far."""

    def __init__(self, partial: SearchResult):
        self.partial = partial
        super().__init__(
            f"node budget exhausted after {partial.nodes_expanded} expansions; "
            f"best found {partial.max_edges} edges, optimality unproven"
        )


class _BudgetHit(Exception):
    pass


_shared_best = None


def _init_worker(shared) -> None:
    global _shared_best
    _shared_best = shared


class _Engine:
    def __init__(self, n: int, r: int, k: int, opts: SearchOptions, shared=None):
        self.n = n
        self.r = r
        self.k = k
        self.opts = opts
        self.shared = shared
        self.cands: list[Edge] = list(itertools.combinations(range(n), r))
        self.best = -1 if opts.initial_lower is None else opts.initial_lower
        self.optimal: dict[tuple, list[Edge]] = {}
        self.seen: dict[int, set] = {}
        self.nodes = 0
        self.pruned = 0
        self.threshold = bounds.s_threshold(r, k)
        self.cap = bounds.degree_cap(r, k)

    def _incumbent(self) -> int:
        if self.shared is not None:
            v = self.shared.value
            if v > self.best:
                return v
        return self.best

    def _raise_incumbent(self, m: int) -> None:
        if self.shared is not None:
            with self.shared.get_lock():
                if m > self.shared.value:
                    self.shared.value = m

    def admissible(self, g: LinearRGraph, pool: Iterable[int], touched: set[int] | None = None,
                   known_ok: set[int] | None = None) -> list[int]:
        """Candidates (indices into ``cands``) that keep ``g`` linear and F-free.

        When ``touched`` is given, candidates disjoint from it are taken from
        ``known_ok`` without a crown check: their status cannot have changed.
        """
        out = []
        k = self.k
        for c in pool:
            e = self.cands[c]
            if g.conflict(e) is not None:
                continue
            if touched is not None and known_ok is not None and c in known_ok and touched.isdisjoint(e):
                out.append(c)
                continue
            b = g._append(e)
            bad = creates_crown(g, b, k) is not None
            g._pop()
            if not bad:
                out.append(c)
        return out

    def estimate(self, g: LinearRGraph, adm: list[int]) -> int:
        m = g.m
        r = self.r
        deg = g.degrees()
        adm_deg = [0] * self.n
        for c in adm:
            for v in self.cands[c]:
                adm_deg[v] += 1
        per_vertex = 0
        for v in range(self.n):
            free = (self.n - 1 - (r - 1) * deg[v]) // (r - 1)
            per_vertex += min(adm_deg[v], free)
        est = m + min(len(adm), per_vertex // r)
        if self.opts.use_main_bound:
            s = sum(1 for d in deg if d >= self.threshold)
            est = min(est, math.floor(Fraction(self.cap * (self.n - s), r)))
        return est

    def record(self, g: LinearRGraph, cert) -> None:
        m = g.m
        if m > self.best:
            self.best = m
            self.optimal = {cert: list(g.edges)}
            self._raise_incumbent(m)
        elif m == self.best:
            self.optimal.setdefault(cert, list(g.edges))

    def visit(self, g: LinearRGraph, cert, adm: list[int]) -> bool:
        """Count and record a node; False when it is pruned."""
        self.nodes += 1
        if self.nodes > self.opts.node_budget:
            raise _BudgetHit
        if self.nodes % self.opts.checkpoint == 0:
            log.info("search n=%d r=%d k=%d: %d nodes, incumbent %d", self.n, self.r, self.k,
                     self.nodes, self._incumbent())
        if g.m >= self._incumbent():
            self.record(g, cert)
        if self.estimate(g, adm) < self._incumbent():
            self.pruned += 1
            return False
        return True

    def children(self, g: LinearRGraph, adm: list[int]):
        """New (child, cert, child_adm) triples, skipping seen classes."""
        level = self.seen.setdefault(g.m + 1, set())
        adm_set = set(adm)
        for c in adm:
            child = g.copy()
            child._append(self.cands[c])
            cert = certificate(child)
            if cert in level:
                continue
            level.add(cert)
            e = self.cands[c]
            touched = set(e)
            for j in child.neighbors_via_edges(len(child.edges) - 1):
                touched.update(child.edges[j])
            child_adm = self.admissible(child, (x for x in adm if x != c), touched, adm_set)
            yield child, cert, child_adm

    def dfs(self, g: LinearRGraph, cert, adm: list[int]) -> None:
        if not self.visit(g, cert, adm):
            return
        for child, ccert, cadm in self.children(g, adm):
            self.dfs(child, ccert, cadm)

    def root(self):
        g = LinearRGraph(self.n, self.r)
        cert = certificate(g)
        self.seen.setdefault(0, set()).add(cert)
        return g, cert, list(range(len(self.cands)))


def _check_params(n: int, r: int, forbidden: Forbidden) -> None:
    if n < 0 or r < 2:
        raise InvalidParameterError(f"need n >= 0 and r >= 2, got n={n}, r={r}")
    if not 1 <= forbidden.k <= r:
        raise InvalidParameterError(f"crown size must satisfy 1 <= k <= r={r}, got {forbidden.k}")


def _worker(args):
    n, r, k, opts, roots = args
    eng = _Engine(n, r, k, opts, _shared_best)
    hit = False
    try:
        for edges, adm in roots:
            g = LinearRGraph(n, r, edges)
            eng.dfs(g, certificate(g), adm)
    except _BudgetHit:
        hit = True
    return eng.best, eng.optimal, eng.nodes, eng.pruned, hit


def _frontier(eng: _Engine, width: int):
    """Breadth-first expansion until a level has at least ``width`` nodes."""
    level = [eng.root()]
    while level:
        if len(level) >= width:
            return level
        nxt = []
        for g, cert, adm in level:
            if eng.visit(g, cert, adm):
                nxt.extend(eng.children(g, adm))
        level = nxt
    return []


def max_edges(n: int, r: int, forbidden: Forbidden | str, options: SearchOptions | None = None) -> SearchResult:
    """Exact maximum edge count of an F-free linear r-graph on n vertices.

    Raises :class:`SearchBudgetExceeded` (carrying the best graph found)
    when the node budget runs out.
    """
    if isinstance(forbidden, str):
        forbidden = Forbidden.parse(forbidden)
    opts = options or SearchOptions()
    _check_params(n, r, forbidden)
    k = forbidden.k
    t0 = time.perf_counter()
    eng = _Engine(n, r, k, opts)
    hit = False
    try:
        if opts.jobs <= 1:
            eng.dfs(*eng.root())
        else:
            _parallel(eng, opts)
    except (_BudgetHit, _ParallelBudgetHit):
        hit = True

    if not eng.optimal:
        if opts.initial_lower is not None and not hit:
            raise InvalidParameterError(
                f"no F-free graph with {opts.initial_lower} edges exists; initial lower bound too high"
            )
        best_edges: list[Edge] = []
        best = 0
        nclasses = 0
    else:
        key = min(eng.optimal)
        best_edges = eng.optimal[key]
        best = eng.best
        nclasses = len(eng.optimal)
    witness = canonical_graph(LinearRGraph(n, r, best_edges))
    if witness.m and find_crown(witness, k) is not None:
        raise RuntimeError("search produced a witness containing the forbidden configuration")
    result = SearchResult(
        n=n, r=r, forbidden=forbidden, max_edges=best, witness=witness,
        nodes_expanded=eng.nodes, pruned_by_bound=eng.pruned,
        wall_time=time.perf_counter() - t0, optimal=not hit, optimal_classes=nclasses,
    )
    if hit:
        raise SearchBudgetExceeded(result)
    return result


class _ParallelBudgetHit(Exception):
    pass


def _parallel(eng: _Engine, opts: SearchOptions) -> None:
    frontier = _frontier(eng, 4 * opts.jobs)
    if not frontier:
        return
    shared = mp.Value("i", eng.best)
    chunks = [[] for _ in range(opts.jobs)]
    for i, (g, _cert, adm) in enumerate(frontier):
        chunks[i % opts.jobs].append((list(g.edges), adm))
    worker_opts = SearchOptions(
        jobs=1,
        node_budget=max(0, opts.node_budget - eng.nodes),
        initial_lower=eng.best if eng.best >= 0 else None,
        use_main_bound=opts.use_main_bound,
        checkpoint=opts.checkpoint,
    )
    with ProcessPoolExecutor(max_workers=opts.jobs, initializer=_init_worker, initargs=(shared,)) as pool:
        results = list(pool.map(_worker, [(eng.n, eng.r, eng.k, worker_opts, ch) for ch in chunks if ch]))
    hit = False
    for best, optimal, nodes, pruned, whit in results:
        eng.nodes += nodes
        eng.pruned += pruned
        hit = hit or whit
        if best > eng.best:
            eng.best = best
            eng.optimal = dict(optimal)
        elif best == eng.best:
            for cert, edges in optimal.items():
                eng.optimal.setdefault(cert, edges)
    if hit:
        raise _ParallelBudgetHit


@dataclass
class TableRow:
    n: int
    r: int
    k: int
    exact: int | None
    lower_grs: int | None
    upper_main: Fraction | None
    upper_zbw: Fraction | None
    upper_twz: Fraction | None
    upper_av: Fraction | None
    status: str
    witness: LinearRGraph | None = field(default=None, repr=False)

    def csv_row(self) -> str:
        f = bounds.format_rational
        return ",".join([
            str(self.n), str(self.r), str(self.k),
            "" if self.exact is None else str(self.exact),
            "" if self.lower_grs is None else str(self.lower_grs),
            f(self.upper_main), f(self.upper_zbw), f(self.upper_twz), f(self.upper_av),
            self.status,
        ])


def table_row(n: int, r: int, k: int, options: SearchOptions | None = None) -> TableRow:
    """One verification row: exact value bracketed by every applicable bound.

    Upper bounds that depend on s use the s of the reported witness.
    """
    status = "pass"
    try:
        res = max_edges(n, r, Forbidden.crown(k), options)
    except SearchBudgetExceeded as exc:
        res = exc.partial
        status = "partial"
    w = res.witness
    s = w.s_count(bounds.s_threshold(r, k))
    rep = bounds.bound_report(n, r, k, s, edge_count=res.max_edges)
    lower = rep.grs_lower
    if status == "pass":
        exact = res.max_edges
        ok = lower is None or lower <= exact
        for up in (rep.main_upper, rep.zbw_upper, rep.twz_upper, rep.av_upper):
            if up is not None and exact > up:
                ok = False
        if rep.grs_upper is not None and exact > rep.grs_upper:
            ok = False
        status = "pass" if ok else "fail"
    return TableRow(n, r, k, res.max_edges, lower, rep.main_upper, rep.zbw_upper,
                    rep.twz_upper, rep.av_upper, status, w)


def verify_table(n_range: Iterable[int], r: int, k: int, options: SearchOptions | None = None) -> list[TableRow]:
    return [table_row(n, r, k, options) for n in n_range]


def table_csv(rows: Iterable[TableRow]) -> str:
    return TABLE_CSV_HEADER + "\n" + "".join(row.csv_row() + "\n" for row in rows)

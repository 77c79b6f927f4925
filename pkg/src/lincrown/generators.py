"""Named configurations and seeded random linear r-graphs.

Labelling is deterministic: the base edge or centre comes first, then the
spokes in order. Random graphs use :class:`random.Random` (Mersenne Twister
MT19937) seeded with the given integer, so corpora are reproducible.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

from .crown import CrownEmbedding, creates_crown
from .hypergraph import InvalidParameterError, LinearRGraph

log = logging.getLogger(__name__)

PRNG_NAME = "mt19937"
KINDS = ("matching", "star", "crown", "cstar", "random_linear", "greedy_crown_free")


@dataclass
class GeneratorSpec:
    kind: str
    params: dict[str, int] = field(default_factory=dict)

    def header(self) -> str:
        args = " ".join(f"{k}={v}" for k, v in self.params.items())
        extra = f" prng={PRNG_NAME}" if "seed" in self.params else ""
        return f"generator: {self.kind} {args}{extra}".rstrip()


def matching_graph(m: int, r: int) -> LinearRGraph:
    if m < 0:
        raise InvalidParameterError(f"m must be >= 0, got {m}")
    g = LinearRGraph(m * r, r)
    for i in range(m):
        g.add_edge(range(i * r, (i + 1) * r))
    return g


def star_graph(d: int, r: int) -> LinearRGraph:
    """``d`` edges through centre 0, pairwise meeting only there."""
    if d < 1 or r < 2:
        raise InvalidParameterError(f"need d >= 1 and r >= 2, got d={d}, r={r}")
    g = LinearRGraph(1 + d * (r - 1), r)
    for j in range(d):
        start = 1 + j * (r - 1)
        g.add_edge([0, *range(start, start + r - 1)])
    return g


def crown_graph(r: int, k: int) -> tuple[LinearRGraph, CrownEmbedding]:
    """The k-crown alone: base ``0..r-1``, spoke i attached at vertex i."""
    if not 1 <= k <= r:
        raise InvalidParameterError(f"need 1 <= k <= r, got k={k}, r={r}")
    g = LinearRGraph(r + k * (r - 1), r)
    base = tuple(range(r))
    g.add_edge(base)
    spokes = []
    for i in range(k):
        start = r + i * (r - 1)
        spokes.append(g.edges[g.add_edge([i, *range(start, start + r - 1)])])
    return g, CrownEmbedding(base, tuple(range(k)), tuple(spokes))


def cstar_graph(r: int) -> LinearRGraph:
    """C*(1,r): r-2 edges through vertex 0, two further disjoint edges, and a
    transversal edge through the first non-centre vertex of each of them."""
    if r < 3:
        raise InvalidParameterError(f"need r >= 3, got {r}")
    g = LinearRGraph(r * r - r + 3, r)
    nxt = 1
    firsts = []
    for _ in range(r - 2):
        firsts.append(nxt)
        g.add_edge([0, *range(nxt, nxt + r - 1)])
        nxt += r - 1
    for _ in range(2):
        firsts.append(nxt)
        g.add_edge(range(nxt, nxt + r))
        nxt += r
    g.add_edge(firsts)
    return g


def _check_random_params(n: int, r: int) -> None:
    if r < 2:
        raise InvalidParameterError(f"need r >= 2, got {r}")
    if n < r:
        raise InvalidParameterError(f"need n >= r, got n={n}, r={r}")


def random_linear(n: int, r: int, target_m: int, seed: int) -> LinearRGraph:
    """Rejection-sample uniform r-subsets until ``target_m`` edges fit or
    n*n attempts have been spent."""
    _check_random_params(n, r)
    if target_m < 0:
        raise InvalidParameterError(f"target_m must be >= 0, got {target_m}")
    rng = random.Random(seed)
    g = LinearRGraph(n, r)
    verts = range(n)
    attempts = 0
    budget = n * n
    while g.m < target_m and attempts < budget:
        attempts += 1
        e = tuple(sorted(rng.sample(verts, r)))
        if e in g or g.conflict(e) is not None:
            continue
        g._append(e)
    if g.m < target_m:
        log.info("random_linear: retry budget %d hit at %d/%d edges", budget, g.m, target_m)
    return g


def greedy_crown_free(n: int, r: int, k: int, seed: int) -> LinearRGraph:
    """Random linear graph with no k-crown, grown by rejection sampling.

    A candidate is kept only if it keeps the graph linear and no k-crown
    through it appears; stops after n*n attempts.
    """
    _check_random_params(n, r)
    if not 1 <= k <= r:
        raise InvalidParameterError(f"need 1 <= k <= r, got k={k}, r={r}")
    rng = random.Random(seed)
    g = LinearRGraph(n, r)
    verts = range(n)
    for _ in range(n * n):
        e = tuple(sorted(rng.sample(verts, r)))
        if e in g or g.conflict(e) is not None:
            continue
        b = g._append(e)
        if creates_crown(g, b, k) is not None:
            g._pop()
    return g


def generate(spec: GeneratorSpec) -> LinearRGraph:
    p = spec.params
    if spec.kind == "matching":
        return matching_graph(p["m"], p["r"])
    if spec.kind == "star":
        return star_graph(p["d"], p["r"])
    if spec.kind == "crown":
        return crown_graph(p["r"], p["k"])[0]
    if spec.kind == "cstar":
        return cstar_graph(p["r"])
    if spec.kind == "random_linear":
        return random_linear(p["n"], p["r"], p["m"], p["seed"])
    if spec.kind == "greedy_crown_free":
        return greedy_crown_free(p["n"], p["r"], p["k"], p["seed"])
    raise InvalidParameterError(f"unknown generator kind {spec.kind!r}")

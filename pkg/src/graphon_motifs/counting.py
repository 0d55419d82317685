"""Subgraph counts and the edge/label decomposition of their fluctuations.

The observed count X is centered two ways: against the closed-form
expectation and against the exact conditional expectation given the latent
layer.  The difference splits the fluctuation into an edge-randomness part
(delta1) and a label-randomness part (delta2).  Small-n exact variance and
conditional-variance oracles enumerate copy pairs directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product

import numpy as np

from .motif import (
    Motif,
    automorphism_count,
    canonical_key,
    canonical_relabel,
    copies_in_complete,
    count_embeddings,
    named_motif,
)
from .graphon import StepGraphon, _arrays, hom_density
from .sampler import SampledGraph

# Exact (co)variance oracles enumerate all ordered copy pairs.
MAX_ORACLE_N = 12
MAX_ORACLE_MOTIF_VERTICES = 4

_K2_KEY = canonical_key(named_motif("edge"))
_K3_KEY = canonical_key(named_motif("triangle"))


def count(g: SampledGraph, m: Motif) -> int:
    """Exact number of copies of the motif in the sampled graph.

    Single edges and triangles take dedicated paths (edge total, adjacency
    intersection); everything else goes through the backtracking counter.
    The fast paths agree with the generic path by construction and by test.
    """
    key = canonical_key(m)
    if key == _K2_KEY:
        return g.edge_count
    if key == _K3_KEY:
        return triangle_count(g)
    return count_embeddings(g.n, g.edge_list(), m)


def triangle_count(g: SampledGraph) -> int:
    adj = g.adjacency()
    total = 0
    for a, b in g.edges:
        total += len(adj[a] & adj[b])
    assert total % 3 == 0
    return total // 3


def expected_count(m: Motif, w: StepGraphon, n: int, rho: float) -> float:
    """Closed-form mean of the count: copies in K_n times rho^{|E|} t."""
    return copies_in_complete(m, n) * rho ** m.edge_count * hom_density(m, w)


# ---------------------------------------------------------------------------
# conditional expectation given the latent layer


@lru_cache(maxsize=512)
def _occupancy_polynomial(m: Motif, w: StepGraphon) -> tuple:
    """Coefficients of the conditional expectation as a polynomial in the
    block occupancy counts.

    Grouping injective vertex placements by their block assignment turns
    E[X | latents] into sum_beta (edge value product) * prod_b (n_b)_{c_b},
    where c is beta's per-block multiplicity; assignments with equal c
    collapse into one coefficient.
    """
    K = w.block_count
    k = m.vertex_count
    vals = w.values
    coeff = {}
    for beta in product(range(K), repeat=k):
        weight = 1.0
        for a, b in m.sorted_edges():
            weight *= vals[beta[a - 1]][beta[b - 1]]
        counts = [0] * K
        for b in beta:
            counts[b] += 1
        key = tuple(counts)
        coeff[key] = coeff.get(key, 0.0) + weight
    return tuple(sorted(coeff.items()))


def _falling(n: int, c: int) -> float:
    out = 1.0
    for i in range(c):
        out *= n - i
    return out


def conditional_expected_count(latents, m: Motif, w: StepGraphon,
                               rho: float) -> float:
    """Exact conditional mean of the count given the latent coordinates.

    Polynomial in the block occupancy vector, so evaluation is O(K^|V|)
    independent of n.  For a one-block graphon the conditional mean equals
    the unconditional one identically, and is returned as such.
    """
    if w.block_count == 1:
        n = np.asarray(latents).size
        return expected_count(m, w, n, rho)
    blocks = w.blocks_of(latents)
    occ = np.bincount(blocks, minlength=w.block_count)
    return _conditional_from_occupancy(tuple(int(x) for x in occ), m, w, rho)


def _conditional_from_occupancy(occ: tuple, m: Motif, w: StepGraphon,
                                rho: float) -> float:
    total = 0.0
    for counts, weight in _occupancy_polynomial(m, w):
        term = weight
        for n_b, c_b in zip(occ, counts):
            if c_b:
                term *= _falling(n_b, c_b)
        total += term
    aut = automorphism_count(m)
    return total * rho ** m.edge_count / aut


@dataclass(frozen=True)
class Decomposition:
    """One replicate's count against both centerings."""

    x: int
    expected: float
    conditional_expected: float
    delta: float
    delta1: float
    delta2: float


def decompose(g: SampledGraph, m: Motif, w: StepGraphon) -> Decomposition:
    x = count(g, m)
    exp = expected_count(m, w, g.n, g.rho)
    cond = conditional_expected_count(g.latents, m, w, g.rho)
    return Decomposition(x=x, expected=exp, conditional_expected=cond,
                         delta=x - exp, delta1=x - cond, delta2=cond - exp)


def label_ustatistic(latents, m: Motif, w: StepGraphon) -> float:
    """Average of the centered copy kernel over all label subsets.

    The label component of the decomposition equals
    C(n, |V|) * rho^{|E|} times this value.
    """
    n = np.asarray(latents).size
    k = m.vertex_count
    if n < k:
        raise ValueError(f"need at least {k} latents")
    cond1 = conditional_expected_count(latents, m, w, 1.0)
    exp1 = expected_count(m, w, n, 1.0)
    return (cond1 - exp1) / math.comb(n, k)


# ---------------------------------------------------------------------------
# small-n exact variance oracles


def _copies_in_kn(m: Motif, n: int) -> list:
    """All copies of m in K_n as (vertex frozenset, edge frozenset)."""
    k = m.vertex_count
    base = set()
    for perm in permutations(range(k)):
        base.add(frozenset((min(perm[a - 1], perm[b - 1]),
                            max(perm[a - 1], perm[b - 1]))
                           for a, b in m.edges))
    out = []
    for subset in combinations(range(n), k):
        vs = frozenset(subset)
        for eset in base:
            out.append((vs, frozenset((subset[a], subset[b]) for a, b in eset)))
    return out


def _check_oracle_caps(m: Motif, n: int):
    if n > MAX_ORACLE_N or m.vertex_count > MAX_ORACLE_MOTIF_VERTICES:
        raise ValueError(
            f"exact oracle capped at n <= {MAX_ORACLE_N} and motifs with "
            f"<= {MAX_ORACLE_MOTIF_VERTICES} vertices")


def _union_motif(vs, es) -> Motif:
    verts = sorted(vs)
    pos = {v: i + 1 for i, v in enumerate(verts)}
    return Motif(len(verts), [(pos[a], pos[b]) for a, b in es])


def exact_variance(m: Motif, w: StepGraphon, n: int, rho: float) -> float:
    """Brute-force variance of the count over all ordered copy pairs.

    Each pair sharing at least one vertex contributes
    rho^{2|E|-|shared E|} t(union, W) - rho^{2|E|} t^2, with the union
    density evaluated on the concrete union graph.  Used as an oracle only.
    """
    _check_oracle_caps(m, n)
    copies = _copies_in_kn(m, n)
    t = hom_density(m, w)
    e2 = 2 * m.edge_count
    total = 0.0
    for vs, es in copies:
        for vt, et in copies:
            shared_v = vs & vt
            if not shared_v:
                continue
            shared_e = len(es & et)
            union = _union_motif(vs | vt, es | et)
            total += (rho ** (e2 - shared_e) * hom_density(union, w)
                      - rho ** e2 * t * t)
    return total


def conditional_variance(latents, m: Motif, w: StepGraphon,
                         rho: float) -> float:
    """Brute-force conditional variance of the count at fixed latents.

    Only pairs sharing at least one edge contribute: conditionally on the
    labels, copies with disjoint edge sets are independent.
    """
    latents = np.asarray(latents, dtype=np.float64)
    n = latents.size
    _check_oracle_caps(m, n)
    blocks = w.blocks_of(latents)
    _, vals, _ = _arrays(w)
    vmat = vals[np.ix_(blocks, blocks)]
    copies = _copies_in_kn(m, n)
    weight = []
    for vs, es in copies:
        prod = 1.0
        for a, b in es:
            prod *= vmat[a, b]
        weight.append(prod)
    e2 = 2 * m.edge_count
    total = 0.0
    for s, (vs, es) in enumerate(copies):
        for t_, (vt, et) in enumerate(copies):
            shared = es & et
            if not shared:
                continue
            prod_union = 1.0
            for a, b in es | et:
                prod_union *= vmat[a, b]
            total += (rho ** (e2 - len(shared)) * prod_union
                      - rho ** e2 * weight[s] * weight[t_])
    return total


# ---------------------------------------------------------------------------
# asymptotic orders


@dataclass(frozen=True)
class OrdersReport:
    """Polynomial orders of the count's mean and variance at one (n, rho).

    ``var_order`` is the largest pair-count scale over nonempty submotif
    classes; ``min_order`` is the smallest expected-submotif-count scale,
    the quantity controlling the conditional normal approximation.
    """

    mean_order: float
    var_order: float
    var_maximizer: Motif
    min_order: float
    min_minimizer: Motif


def mean_variance_orders(m: Motif, n: int, rho: float) -> OrdersReport:
    if m.edge_count < 1:
        raise ValueError("orders need at least one edge")
    k, e = m.vertex_count, m.edge_count
    mean_order = float(n) ** k * rho ** e

    classes = {}
    for size in range(1, k + 1):
        for subset in combinations(range(1, k + 1), size):
            sub = m.induced(subset)
            classes.setdefault(canonical_key(sub), canonical_relabel(sub))
    reps = sorted(classes.values(),
                  key=lambda s: (s.vertex_count, s.edge_count, s.sorted_edges()))

    var_best, var_arg = -math.inf, None
    min_best, min_arg = math.inf, None
    for sub in reps:
        fv, fe = sub.vertex_count, sub.edge_count
        v = float(n) ** (2 * k - fv) * rho ** (2 * e - fe)
        if v > var_best:
            var_best, var_arg = v, sub
        scale = float(n) ** fv * rho ** fe
        if scale < min_best:
            min_best, min_arg = scale, sub
    return OrdersReport(mean_order, var_best, var_arg, min_best, min_arg)


# ---------------------------------------------------------------------------
# per-replicate serialization

REPLICATE_CSV_HEADER = ("seed", "n", "rho", "x", "expected", "cond_expected",
                        "delta", "delta1", "delta2")


def replicate_row(g: SampledGraph, d: Decomposition) -> tuple:
    return (g.seed, g.n, g.rho, d.x, d.expected, d.conditional_expected,
            d.delta, d.delta1, d.delta2)

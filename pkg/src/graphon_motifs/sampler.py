"""Seeded generation of sparse step-graphon random graphs.

Latent coordinates are iid uniform on [0, 1); each vertex pair (i, j) is
then an independent Bernoulli with probability rho * W(U_i, U_j).  Within
a pair of blocks that probability is constant, so edges are generated per
block-pair stratum by geometric gap skipping along the stratum's pair
stream.  That representation is distributionally identical to per-pair
Bernoulli draws and touches only the realized edges.

Reproducibility contract (pinned by a golden test):

- the root seed feeds ``numpy.random.SeedSequence(seed)``, whose two
  spawned children drive a PCG64 generator for the latent layer and one
  for the edge layer;
- only uniform doubles are consumed from the generators: latents directly,
  geometric gaps by inversion of uniforms;
- strata are visited in a fixed order (same-block pairs by block index,
  then cross-block pairs in lexicographic order), and each stratum consumes
  uniforms in batches until its pair stream is exhausted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .motif import Motif, density_exponents
from .graphon import StepGraphon, _arrays


@dataclass
class SampledGraph:
    """One realization of the model, with its latent layer retained."""

    n: int
    rho: float
    seed: int
    latents: np.ndarray
    blocks: np.ndarray
    edges: np.ndarray  # shape (m, 2), 1-based, i < j, lexicographically sorted
    _adjacency: list = field(default=None, repr=False, compare=False)

    @property
    def edge_count(self) -> int:
        return int(self.edges.shape[0])

    def adjacency(self) -> list:
        """Neighbor sets indexed 1..n (index 0 unused); built on demand."""
        if self._adjacency is None:
            adj = [set() for _ in range(self.n + 1)]
            for a, b in self.edges:
                adj[a].add(int(b))
                adj[b].add(int(a))
            self._adjacency = adj
        return self._adjacency

    def edge_list(self) -> list:
        return [(int(a), int(b)) for a, b in self.edges]

    def to_dump(self) -> str:
        lines = [f"{self.n} {self.rho!r} {self.seed}"]
        lines.extend(f"{a} {b}" for a, b in self.edges)
        lines.append("latents")
        lines.extend(repr(float(u)) for u in self.latents)
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_dump(text: str, w: StepGraphon = None) -> "SampledGraph":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        n_str, rho_str, seed_str = lines[0].split()
        n, rho, seed = int(n_str), float(rho_str), int(seed_str)
        edges = []
        i = 1
        while i < len(lines) and lines[i] != "latents":
            a, b = lines[i].split()
            edges.append((int(a), int(b)))
            i += 1
        latents = np.array([float(x) for x in lines[i + 1:]], dtype=np.float64)
        if latents.size != n:
            raise ValueError(f"dump has {latents.size} latents for n={n}")
        blocks = (w.blocks_of(latents) if w is not None
                  else np.zeros(n, dtype=np.int64))
        earr = np.array(sorted(edges), dtype=np.int64).reshape(-1, 2)
        return SampledGraph(n, rho, seed, latents, blocks, earr)


# ---------------------------------------------------------------------------
# edge stream


def _bernoulli_positions(rng, n_slots: int, p: float) -> np.ndarray:
    """Success indices of an iid Bernoulli(p) stream of length n_slots.

    Gaps between successes are Geometric(p), drawn by inverting uniform
    doubles; the stream ends at the first position falling past the end.
    """
    if n_slots <= 0 or p <= 0.0:
        return np.empty(0, dtype=np.int64)
    if p >= 1.0:
        return np.arange(n_slots, dtype=np.int64)
    log_q = math.log1p(-p)
    chunks = []
    last = -1
    while True:
        expect = (n_slots - last) * p
        batch = max(16, int(expect + 4.0 * math.sqrt(expect + 1.0)) + 4)
        u = rng.random(batch)
        gaps = np.log1p(-u) / log_q
        np.minimum(gaps, float(n_slots) + 1.0, out=gaps)
        pos = last + np.cumsum(gaps.astype(np.int64) + 1)
        over = pos >= n_slots
        if over.any():
            chunks.append(pos[: int(np.argmax(over))])
            break
        chunks.append(pos)
        last = int(pos[-1])
    return chunks[0] if len(chunks) == 1 else np.concatenate(chunks)


def _decode_within(idx: np.ndarray, nb: int):
    """Invert t = i*nb - i(i+1)/2 + (j-i-1) for pairs 0 <= i < j < nb."""
    t = idx.astype(np.float64)
    disc = (2 * nb - 1) ** 2 - 8.0 * t
    i = np.floor(((2 * nb - 1) - np.sqrt(disc)) / 2.0).astype(np.int64)

    def row_start(r):
        return r * (2 * nb - r - 1) // 2

    for _ in range(2):  # fix float-sqrt off-by-one in either direction
        i = np.where(row_start(i + 1) <= idx, i + 1, i)
        i = np.where(row_start(i) > idx, i - 1, i)
    j = idx - row_start(i) + i + 1
    return i, j


def _stratum_pairs(rng, verts_b, verts_c, p: float) -> np.ndarray:
    """Edges drawn inside one block-pair stratum, as global (i, j) rows."""
    if verts_c is None:
        nb = verts_b.size
        pos = _bernoulli_positions(rng, nb * (nb - 1) // 2, p)
        if pos.size == 0:
            return np.empty((0, 2), dtype=np.int64)
        i, j = _decode_within(pos, nb)
        out = np.column_stack((verts_b[i], verts_b[j]))
    else:
        nc = verts_c.size
        pos = _bernoulli_positions(rng, verts_b.size * nc, p)
        if pos.size == 0:
            return np.empty((0, 2), dtype=np.int64)
        out = np.column_stack((verts_b[pos // nc], verts_c[pos % nc]))
    lo = out.min(axis=1)
    hi = out.max(axis=1)
    return np.column_stack((lo, hi))


def _edge_layer(w: StepGraphon, blocks: np.ndarray, rho: float, rng) -> np.ndarray:
    _, vals, _ = _arrays(w)
    K = w.block_count
    verts = [np.flatnonzero(blocks == b).astype(np.int64) + 1 for b in range(K)]
    parts = []
    for b in range(K):
        parts.append(_stratum_pairs(rng, verts[b], None, rho * vals[b, b]))
    for b in range(K):
        for c in range(b + 1, K):
            parts.append(_stratum_pairs(rng, verts[b], verts[c],
                                        rho * vals[b, c]))
    edges = np.concatenate(parts, axis=0) if parts else np.empty((0, 2), np.int64)
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    return edges[order]


def _spawned_rngs(seed: int):
    lat_ss, edge_ss = np.random.SeedSequence(seed).spawn(2)
    return (np.random.Generator(np.random.PCG64(lat_ss)),
            np.random.Generator(np.random.PCG64(edge_ss)))


def sample(w: StepGraphon, n: int, rho: float, seed: int) -> SampledGraph:
    """Draw one graph: latents from the seed's first child stream, edges
    from the second.  Fully deterministic given (w, n, rho, seed)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not (0.0 < rho <= 1.0):
        raise ValueError("rho must lie in (0, 1]")
    lat_rng, edge_rng = _spawned_rngs(seed)
    latents = lat_rng.random(n)
    blocks = w.blocks_of(latents)
    edges = _edge_layer(w, blocks, rho, edge_rng)
    return SampledGraph(n, float(rho), int(seed), latents, blocks, edges)


def resample_edges(w: StepGraphon, latents: np.ndarray, rho: float,
                   seed: int) -> SampledGraph:
    """Fresh edge layer over fixed latents (conditional resampling)."""
    if not (0.0 < rho <= 1.0):
        raise ValueError("rho must lie in (0, 1]")
    latents = np.asarray(latents, dtype=np.float64)
    _, edge_rng = _spawned_rngs(seed)
    blocks = w.blocks_of(latents)
    edges = _edge_layer(w, blocks, rho, edge_rng)
    return SampledGraph(latents.size, float(rho), int(seed), latents, blocks,
                        edges)


def replicate_seed(root_seed: int, n: int, r: int) -> int:
    """Per-replicate seed: a splittable derivation from (root, n, replicate),
    so replicate results do not depend on scheduling or batch order."""
    ss = np.random.SeedSequence((int(root_seed), int(n), int(r)))
    return int(ss.generate_state(1, np.uint64)[0])


# ---------------------------------------------------------------------------
# sparsity schedules and regimes


@dataclass(frozen=True)
class SparsitySchedule:
    """rho_n = a * n^{-gamma}, clamped into (0, 1]."""

    a: float
    gamma: float

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError("amplitude must be positive")
        if self.gamma < 0:
            raise ValueError("exponent must be nonnegative")


def schedule_rho(s: SparsitySchedule, n: int) -> float:
    if n < 1:
        raise ValueError("n must be at least 1")
    return min(1.0, s.a * float(n) ** (-s.gamma))


def critical_schedule(m: Motif, c: float) -> SparsitySchedule:
    """Schedule pinned so that n * rho_n^{m1} equals c for every n."""
    if c <= 0:
        raise ValueError("c must be positive")
    m1 = density_exponents(m).m1
    inv = 1.0 / float(m1)
    return SparsitySchedule(a=c ** inv, gamma=inv)


REGIMES = ("below_containment", "at_containment", "edge_dominated",
           "critical", "label_dominated", "dense")


def classify_regime(m: Motif, gamma) -> str:
    """Place an exponent against the motif's two density thresholds.

    Comparison is exact over rationals; float inputs are snapped to the
    nearest fraction with denominator at most 10^6, so gamma = 2/3 given
    as a double still lands exactly on the critical line.
    """
    if m.edge_count < 1:
        raise ValueError("regime classification needs at least one edge")
    if isinstance(gamma, float):
        g = Fraction(gamma).limit_denominator(1_000_000)
    else:
        g = Fraction(gamma)
    if g < 0:
        raise ValueError("exponent must be nonnegative")
    prof = density_exponents(m)
    inv_m = 1 / prof.m
    inv_m1 = 1 / prof.m1
    if g == 0:
        return "dense"
    if g > inv_m:
        return "below_containment"
    if g == inv_m:
        return "at_containment"
    if g > inv_m1:
        return "edge_dominated"
    if g == inv_m1:
        return "critical"
    return "label_dominated"

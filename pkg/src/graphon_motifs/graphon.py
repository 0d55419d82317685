"""Step graphons and their exact motif-density analytics.

A step graphon is a block kernel: block widths pi summing to 1 and a
symmetric K x K value matrix.  Homomorphism densities, rooted densities,
the degree function, regularity checks, the kernel projection variance,
and the critical variance share are all finite block sums, evaluated
exactly (up to roundoff) with no quadrature or Monte Carlo.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .motif import (
    Motif,
    automorphism_count,
    canonical_key,
    canonical_relabel,
    density_exponents,
    join_catalog,
    vertex_join,
)

# Density sums enumerate K^{|V|} block assignments.
MAX_ASSIGNMENTS = 10_000_000

REGULARITY_TOL = 1e-10


@dataclass(frozen=True)
class StepGraphon:
    """Block kernel: widths ``pi`` (positive, summing to 1) and a symmetric
    value matrix with entries in [0, 1] and positive edge density."""

    pi: tuple
    values: tuple

    def __init__(self, pi, values):
        pi = tuple(float(p) for p in pi)
        values = tuple(tuple(float(v) for v in row) for row in values)
        k = len(pi)
        if k == 0:
            raise ValueError("graphon needs at least one block")
        if any(p <= 0 for p in pi):
            raise ValueError("block widths must be positive")
        if abs(sum(pi) - 1.0) > 1e-12:
            raise ValueError(f"block widths sum to {sum(pi)!r}, not 1")
        if len(values) != k or any(len(row) != k for row in values):
            raise ValueError("value matrix shape must match block count")
        for i in range(k):
            for j in range(k):
                v = values[i][j]
                if not (0.0 <= v <= 1.0):
                    raise ValueError(f"value {v!r} outside [0,1]")
                if abs(v - values[j][i]) > 0.0:
                    raise ValueError("value matrix must be symmetric")
        dens = sum(pi[i] * pi[j] * values[i][j] for i in range(k) for j in range(k))
        if dens <= 0.0:
            raise ValueError("graphon edge density must be positive")
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "values", values)

    @property
    def block_count(self) -> int:
        return len(self.pi)

    def edge_density(self) -> float:
        pi, vals, _ = _arrays(self)
        return float(pi @ vals @ pi)

    def blocks_of(self, latents) -> np.ndarray:
        """Block index (0-based) of each latent coordinate in [0, 1)."""
        _, _, cum = _arrays(self)
        u = np.asarray(latents, dtype=np.float64)
        return np.minimum(np.searchsorted(cum, u, side="right"),
                          self.block_count - 1).astype(np.int64)

    @staticmethod
    def constant(p: float) -> "StepGraphon":
        return StepGraphon((1.0,), ((p,),))

    def to_json_dict(self) -> dict:
        return {"pi": list(self.pi), "values": [list(r) for r in self.values]}

    @staticmethod
    def from_json_dict(d: dict) -> "StepGraphon":
        return StepGraphon(d["pi"], d["values"])


@lru_cache(maxsize=256)
def _arrays(w: StepGraphon):
    pi = np.array(w.pi, dtype=np.float64)
    vals = np.array(w.values, dtype=np.float64)
    return pi, vals, np.cumsum(pi)


def named_graphon(name: str) -> StepGraphon:
    """Fixtures addressable by name: ``const:p``, ``W_sym``, ``W_asym``."""
    if name.startswith("const:"):
        return StepGraphon.constant(float(name.split(":", 1)[1]))
    if name == "W_sym":
        return StepGraphon((0.5, 0.5), ((0.8, 0.2), (0.2, 0.8)))
    if name == "W_asym":
        return StepGraphon((0.5, 0.5), ((0.9, 0.3), (0.3, 0.1)))
    raise ValueError(f"unknown graphon name {name!r}; "
                     "known: const:p, W_sym, W_asym")


# ---------------------------------------------------------------------------
# densities


def _assignment_sum(m: Motif, w: StepGraphon, pins: dict) -> float:
    """Sum over block assignments of pi-weights times edge-value products,
    with pinned vertices held at fixed blocks (and carrying no pi weight)."""
    pi, vals, _ = _arrays(w)
    K = w.block_count
    free = [v for v in range(1, m.vertex_count + 1) if v not in pins]
    if K ** len(free) > MAX_ASSIGNMENTS:
        raise ValueError(
            f"{K}^{len(free)} block assignments exceed cap {MAX_ASSIGNMENTS}")
    axis = {v: i for i, v in enumerate(free)}
    nfree = len(free)

    arr = np.ones((K,) * nfree) if nfree else np.ones(())
    for v in free:
        shape = [1] * nfree
        shape[axis[v]] = K
        arr = arr * pi.reshape(shape)
    scalar = 1.0
    for a, b in m.sorted_edges():
        pa, pb = pins.get(a), pins.get(b)
        if pa is not None and pb is not None:
            scalar *= vals[pa, pb]
        elif pa is not None:
            shape = [1] * nfree
            shape[axis[b]] = K
            arr = arr * vals[pa].reshape(shape)
        elif pb is not None:
            shape = [1] * nfree
            shape[axis[a]] = K
            arr = arr * vals[pb].reshape(shape)
        else:
            ia, ib = axis[a], axis[b]
            shape = [1] * nfree
            shape[min(ia, ib)] = K
            shape[max(ia, ib)] = K
            arr = arr * vals.reshape(shape)
    return float(arr.sum() * scalar)


def hom_density(m: Motif, w: StepGraphon) -> float:
    """Homomorphism density of the motif in the kernel: an exact block sum."""
    return _assignment_sum(m, w, {})


def multipoint_density(m: Motif, pins: dict, w: StepGraphon) -> float:
    """Conditional density with the pinned vertices fixed to blocks (0-based).

    No pins recovers ``hom_density``; one pin recovers ``rooted_density``.
    """
    K = w.block_count
    for v, b in pins.items():
        if not (1 <= v <= m.vertex_count):
            raise ValueError(f"pinned vertex {v} outside motif")
        if not (0 <= b < K):
            raise ValueError(f"block index {b} outside 0..{K - 1}")
    return _assignment_sum(m, w, dict(pins))


def rooted_density(m: Motif, a: int, block: int, w: StepGraphon) -> float:
    """Density of the motif with vertex ``a`` pinned to a block (0-based)."""
    return multipoint_density(m, {a: block}, w)


def mean_rooted_density(m: Motif, block: int, w: StepGraphon) -> float:
    """Average of the rooted density over all root choices."""
    k = m.vertex_count
    return sum(rooted_density(m, a, block, w) for a in range(1, k + 1)) / k


def degree_function(w: StepGraphon) -> np.ndarray:
    """Per-block expected kernel value against a uniform partner."""
    pi, vals, _ = _arrays(w)
    return vals @ pi


@dataclass(frozen=True)
class RegularityReport:
    per_block_mean_rooted: tuple
    t: float
    is_regular: bool
    max_deviation: float


def regularity_report(m: Motif, w: StepGraphon,
                      tol: float = REGULARITY_TOL) -> RegularityReport:
    """Whether the vertex-averaged rooted density is constant across blocks.

    Exact for step graphons, so the default tolerance only absorbs roundoff.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    t = hom_density(m, w)
    per_block = tuple(mean_rooted_density(m, b, w)
                      for b in range(w.block_count))
    dev = max(abs(x - t) for x in per_block)
    return RegularityReport(per_block, t, dev <= tol, dev)


def is_motif_regular(m: Motif, w: StepGraphon,
                     tol: float = REGULARITY_TOL) -> bool:
    return regularity_report(m, w, tol).is_regular


# ---------------------------------------------------------------------------
# kernel projection variance and the critical variance share


def projection_variance(m: Motif, w: StepGraphon) -> float:
    """Variance of the one-vertex projection of the centered copy kernel.

    Computed through the densities of the one-vertex joins of two motif
    copies; zero exactly when the graphon is regular for the motif.  As a
    covariance of identically distributed evaluations it is nonnegative up
    to roundoff.
    """
    if m.edge_count < 1:
        raise ValueError("projection variance needs at least one edge")
    k = m.vertex_count
    join_classes = _join_class_multiplicities(canonical_relabel(m))
    t = hom_density(m, w)
    total = 0.0
    for rep, mult in join_classes:
        total += mult * hom_density(rep, w)
    copies = math.factorial(k) // automorphism_count(m)
    return (copies * copies) / (k * k) * (total - k * k * t * t)


@lru_cache(maxsize=512)
def _join_class_multiplicities(m: Motif) -> tuple:
    """One-vertex joins of two copies, grouped by isomorphism class."""
    k = m.vertex_count
    reps = {}
    for a in range(1, k + 1):
        for b in range(1, k + 1):
            j = vertex_join(m, a, b)
            key = canonical_key(j)
            if key not in reps:
                reps[key] = [canonical_relabel(j), 0]
            reps[key][1] += 1
    return tuple((rep, mult) for rep, mult in reps.values())


def critical_edge_variance_share(m: Motif, w: StepGraphon, c: float) -> float:
    """Limiting share of the count variance carried by the edge component
    when the sparsity is pinned so that n * rho^{m1} stays equal to c.

    Uses the full catalog of overlap classes attaining the m1 maximum;
    requires an irregular graphon (otherwise the share degenerates to 1
    trivially and this constant is undefined).
    """
    if c <= 0:
        raise ValueError("c must be positive")
    xi = projection_variance(m, w)
    if xi <= 1e-12:
        raise ValueError("critical constant undefined in regular case")
    k = m.vertex_count
    label_term = (k * k) / (math.factorial(k) ** 2) * xi
    edge_term = 0.0
    for f in density_exponents(m).m1_maximizers:
        fv = f.vertex_count
        weight = 1.0 / (c ** (fv - 1) * math.factorial(2 * k - fv))
        catalog = join_catalog(m, f)
        edge_term += weight * sum(mult * hom_density(rep, w)
                                  for rep, mult in catalog.union_classes)
    return 1.0 - label_term / (label_term + edge_term)


def critical_edge_variance_share_closed_form(m: Motif, w: StepGraphon,
                                             c: float) -> float:
    """Closed form for the critical share, valid only for motifs whose m1
    maximum is attained by the motif alone (strictly strongly balanced)."""
    if c <= 0:
        raise ValueError("c must be positive")
    if not density_exponents(m).strictly_strongly_balanced:
        raise ValueError("closed form requires a strictly strongly balanced motif")
    xi = projection_variance(m, w)
    if xi <= 1e-12:
        raise ValueError("critical constant undefined in regular case")
    k = m.vertex_count
    t = hom_density(m, w)
    aut = automorphism_count(m)
    lead = t / aut
    tail = c ** (k - 1) * xi / (math.factorial(k - 1) ** 2)
    return lead / (lead + tail)

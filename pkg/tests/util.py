"""Shared brute-force oracles for the test suite.

Everything here is deliberately naive and independent of the library's
clever paths: permutation-based isomorphism, subset enumeration counting,
and total enumeration of small sample spaces.
"""

from __future__ import annotations

from itertools import combinations, permutations, product

from graphon_motifs import Motif, StepGraphon


def brute_isomorphic(m1: Motif, m2: Motif) -> bool:
    if m1.vertex_count != m2.vertex_count or m1.edge_count != m2.edge_count:
        return False
    target = set(m2.edges)
    k = m1.vertex_count
    for perm in permutations(range(1, k + 1)):
        mapped = {(min(perm[a - 1], perm[b - 1]), max(perm[a - 1], perm[b - 1]))
                  for a, b in m1.edges}
        if mapped == target:
            return True
    return False


def brute_automorphisms(m: Motif) -> int:
    k = m.vertex_count
    edges = set(m.edges)
    total = 0
    for perm in permutations(range(1, k + 1)):
        mapped = {(min(perm[a - 1], perm[b - 1]), max(perm[a - 1], perm[b - 1]))
                  for a, b in edges}
        if mapped == edges:
            total += 1
    return total


def copies_on_labels(m: Motif, labels) -> set:
    """Distinct copies of m with vertex set exactly ``labels``: edge frozensets."""
    out = set()
    for perm in permutations(labels):
        out.add(frozenset((min(perm[a - 1], perm[b - 1]),
                           max(perm[a - 1], perm[b - 1]))
                          for a, b in m.edges))
    return out


def subset_count_oracle(host_n: int, host_edges, m: Motif) -> int:
    """Copies of m in the host by checking every vertex subset."""
    host = {(min(a, b), max(a, b)) for a, b in host_edges}
    k = m.vertex_count
    base = copies_on_labels(m, tuple(range(k)))  # copies on positions 0..k-1
    total = 0
    for subset in combinations(range(1, host_n + 1), k):
        for copy in base:
            if all((subset[a], subset[b]) in host for a, b in copy):
                total += 1
    return total


def all_graphs_on(k: int):
    """Every labeled simple graph on vertices 1..k."""
    pairs = list(combinations(range(1, k + 1), 2))
    for bits in range(1 << len(pairs)):
        yield Motif(k, [e for i, e in enumerate(pairs) if bits >> i & 1])


def all_subgraph_ratios(m: Motif):
    """(|E(F)|, |V(F)|) over every subgraph of m, induced or not."""
    out = []
    for size in range(1, m.vertex_count + 1):
        for subset in combinations(range(1, m.vertex_count + 1), size):
            inside = [e for e in m.edges if e[0] in subset and e[1] in subset]
            for r in range(len(inside) + 1):
                for chosen in combinations(inside, r):
                    out.append((len(chosen), size))
    return out


def random_motif(rng, max_vertices=5, require_edge=True) -> Motif:
    k = int(rng.integers(2, max_vertices + 1))
    pairs = list(combinations(range(1, k + 1), 2))
    while True:
        mask = rng.random(len(pairs)) < rng.uniform(0.2, 0.9)
        edges = [e for e, keep in zip(pairs, mask) if keep]
        if edges or not require_edge:
            return Motif(k, edges)


def random_graphon(rng, blocks=None) -> StepGraphon:
    K = int(blocks if blocks is not None else rng.integers(2, 5))
    pi = rng.uniform(0.5, 2.0, size=K)
    pi = pi / pi.sum()
    pi = tuple(float(p) for p in pi)
    pi = pi[:-1] + (1.0 - sum(pi[:-1]),)  # force an exact unit sum
    vals = rng.uniform(0.05, 0.95, size=(K, K))
    vals = (vals + vals.T) / 2.0
    return StepGraphon(pi, tuple(tuple(float(v) for v in row) for row in vals))


def total_enumeration_variance(m: Motif, w: StepGraphon, n: int, rho: float):
    """Exact Var[X] by enumerating every block assignment and edge pattern."""
    from graphon_motifs import count_embeddings

    pairs = list(combinations(range(1, n + 1), 2))
    mean = 0.0
    mean2 = 0.0
    for beta in product(range(w.block_count), repeat=n):
        wprob = 1.0
        for b in beta:
            wprob *= w.pi[b]
        probs = [rho * w.values[beta[a - 1]][beta[b - 1]] for a, b in pairs]
        for pattern in product((0, 1), repeat=len(pairs)):
            pp = wprob
            for bit, p in zip(pattern, probs):
                pp *= p if bit else (1.0 - p)
            if pp == 0.0:
                continue
            edges = [e for bit, e in zip(pattern, pairs) if bit]
            x = count_embeddings(n, edges, m)
            mean += pp * x
            mean2 += pp * x * x
    return mean2 - mean * mean


def total_enumeration_conditional_variance(m: Motif, w: StepGraphon,
                                           blocks, rho: float):
    """Exact Var[X | blocks] by enumerating every edge pattern."""
    from graphon_motifs import count_embeddings

    n = len(blocks)
    pairs = list(combinations(range(1, n + 1), 2))
    probs = [rho * w.values[blocks[a - 1]][blocks[b - 1]] for a, b in pairs]
    mean = 0.0
    mean2 = 0.0
    for pattern in product((0, 1), repeat=len(pairs)):
        pp = 1.0
        for bit, p in zip(pattern, probs):
            pp *= p if bit else (1.0 - p)
        if pp == 0.0:
            continue
        edges = [e for bit, e in zip(pattern, pairs) if bit]
        x = count_embeddings(n, edges, m)
        mean += pp * x
        mean2 += pp * x * x
    return mean2 - mean * mean


def naive_hom_density(m: Motif, w: StepGraphon) -> float:
    """Block-assignment sum written as a plain loop."""
    total = 0.0
    for beta in product(range(w.block_count), repeat=m.vertex_count):
        term = 1.0
        for b in beta:
            term *= w.pi[b]
        for a, b in m.edges:
            term *= w.values[beta[a - 1]][beta[b - 1]]
        total += term
    return total


def connected_classes_up_to(max_vertices: int):
    """One canonical representative per connected isomorphism class."""
    from graphon_motifs import canonical_form, canonical_relabel

    seen = {}
    for k in range(2, max_vertices + 1):
        for g in all_graphs_on(k):
            if g.edge_count < k - 1 or not g.is_connected():
                continue
            key = canonical_form(g)
            if key not in seen:
                seen[key] = canonical_relabel(g)
    return list(seen.values())

"""Exact combinatorics of small fixed motifs.

A motif is a simple undirected graph on vertices 1..k given by an edge
list.  Everything here is exact: isomorphism classes via canonical forms,
automorphism counts, rational subgraph-density exponents with their
maximizer classes, vertex joins, and the catalog of ways two motif copies
can overlap in a given intersection class.

All functions are pure; memoized helpers fill their caches idempotently,
so concurrent use is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product

# Enumeration over vertex subsets is exponential in the motif size, and the
# pair catalog is factorial in it; these caps keep worst cases tractable.
MAX_EXPONENT_VERTICES = 12
MAX_JOIN_VERTICES = 6


@dataclass(frozen=True)
class Motif:
    """A simple graph: ``vertex_count`` vertices labeled 1..k, set of edges.

    Edges are stored normalized as (a, b) with a < b.  Self-loops and
    out-of-range endpoints are rejected; duplicates collapse.
    """

    vertex_count: int
    edges: frozenset

    def __init__(self, vertex_count: int, edges):
        if vertex_count < 1:
            raise ValueError("motif needs at least one vertex")
        norm = set()
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (1 <= a <= vertex_count and 1 <= b <= vertex_count):
                raise ValueError(f"edge ({a},{b}) outside 1..{vertex_count}")
            norm.add((min(a, b), max(a, b)))
        object.__setattr__(self, "vertex_count", int(vertex_count))
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> tuple:
        return tuple(sorted(self.edges))

    def degrees(self) -> list:
        deg = [0] * (self.vertex_count + 1)
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg[1:]

    def neighbors(self) -> list:
        adj = [set() for _ in range(self.vertex_count + 1)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def is_connected(self) -> bool:
        if self.vertex_count == 1:
            return True
        adj = self.neighbors()
        seen = {1}
        stack = [1]
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.vertex_count

    def induced(self, vertices) -> "Motif":
        """Induced submotif on the given vertices, relabeled 1..|S| in order."""
        verts = sorted(vertices)
        pos = {v: i + 1 for i, v in enumerate(verts)}
        sub = [(pos[a], pos[b]) for a, b in self.edges if a in pos and b in pos]
        return Motif(len(verts), sub)

    def relabel(self, mapping) -> "Motif":
        """Apply a vertex bijection {old: new} covering 1..k."""
        return Motif(self.vertex_count,
                     [(mapping[a], mapping[b]) for a, b in self.edges])

    def to_json_dict(self) -> dict:
        return {"vertices": self.vertex_count,
                "edges": [list(e) for e in self.sorted_edges()]}

    @staticmethod
    def from_json_dict(d: dict) -> "Motif":
        return Motif(int(d["vertices"]), [tuple(e) for e in d["edges"]])


def named_motif(name: str) -> Motif:
    """Built-in motifs addressable by name."""
    try:
        return _NAMED[name]
    except KeyError:
        raise ValueError(f"unknown motif name {name!r}; "
                         f"known: {', '.join(sorted(_NAMED))}") from None


_NAMED = {
    "edge": Motif(2, [(1, 2)]),
    "path3": Motif(3, [(1, 2), (2, 3)]),
    "triangle": Motif(3, [(1, 2), (2, 3), (1, 3)]),
    "k4": Motif(4, [(a, b) for a, b in combinations(range(1, 5), 2)]),
    "c4": Motif(4, [(1, 2), (2, 3), (3, 4), (1, 4)]),
    "c5": Motif(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]),
    # triangle with a pendant edge
    "triangle_pendant": Motif(4, [(1, 2), (2, 3), (1, 3), (1, 4)]),
    # 5 vertices, 6 edges: diamond on 1..4 plus a pendant at 1
    "fig1b": Motif(5, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (1, 5)]),
    # 6 vertices, 7 edges: triangle with two disjoint paths closing at a far vertex
    "fig2a": Motif(6, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 6), (5, 6)]),
}


# ---------------------------------------------------------------------------
# canonical forms


def _refine_colors(k: int, adj_masks: list) -> list:
    """Iterated neighborhood refinement; color ranks are isomorphism-invariant."""
    colors = [bin(m).count("1") for m in adj_masks]
    colors = _rank([(c,) for c in colors])
    while True:
        sigs = []
        for v in range(k):
            nb = adj_masks[v]
            neigh = []
            while nb:
                low = nb & -nb
                neigh.append(colors[low.bit_length() - 1])
                nb ^= low
            sigs.append((colors[v], tuple(sorted(neigh))))
        new = _rank(sigs)
        if new == colors:
            return colors
        colors = new


def _rank(sigs: list) -> list:
    order = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [order[s] for s in sigs]


def _pair_index(i: int, j: int, k: int) -> int:
    # upper-triangle position of 0-based pair i < j
    return i * k - i * (i + 1) // 2 + (j - i - 1)


@lru_cache(maxsize=65536)
def _canonical_data(m: Motif):
    """Minimal adjacency bitstring over color-respecting labelings.

    Returns (bits, labeling old->new 0-based, tie_count).  Restricting the
    search to labelings that list each refinement class contiguously is
    exact because the classes are isomorphism-invariant; the number of
    labelings attaining the minimum equals |Aut| by orbit-stabilizer.
    """
    k = m.vertex_count
    adj = [0] * k
    for a, b in m.edges:
        adj[a - 1] |= 1 << (b - 1)
        adj[b - 1] |= 1 << (a - 1)
    colors = _refine_colors(k, adj)
    classes = {}
    for v in range(k):
        classes.setdefault(colors[v], []).append(v)
    ordered = [classes[c] for c in sorted(classes)]
    offsets = []
    off = 0
    for cls in ordered:
        offsets.append(off)
        off += len(cls)

    edges0 = [(a - 1, b - 1) for a, b in m.edges]
    best = None
    best_perm = None
    ties = 0
    newpos = [0] * k
    for assignment in product(*[permutations(cls) for cls in ordered]):
        for cls_members, base in zip(assignment, offsets):
            for slot, v in enumerate(cls_members):
                newpos[v] = base + slot
        bits = 0
        for u, v in edges0:
            a, b = newpos[u], newpos[v]
            if a > b:
                a, b = b, a
            bits |= 1 << _pair_index(a, b, k)
        if best is None or bits < best:
            best = bits
            best_perm = tuple(newpos)
            ties = 1
        elif bits == best:
            ties += 1
    return best, best_perm, ties


def canonical_form(m: Motif) -> tuple:
    """Canonical label sequence: equal for two motifs iff they are isomorphic."""
    bits, _, _ = _canonical_data(m)
    k = m.vertex_count
    edges = []
    for i in range(k):
        for j in range(i + 1, k):
            if bits >> _pair_index(i, j, k) & 1:
                edges.append((i + 1, j + 1))
    return (k, tuple(edges))


def canonical_key(m: Motif) -> tuple:
    """Cheap hashable isomorphism-class key (vertex count, adjacency bits)."""
    bits, _, _ = _canonical_data(m)
    return (m.vertex_count, bits)


def canonical_relabel(m: Motif) -> Motif:
    """The canonical representative of m's isomorphism class."""
    _, perm, _ = _canonical_data(m)
    return m.relabel({v + 1: perm[v] + 1 for v in range(m.vertex_count)})


def is_isomorphic(m1: Motif, m2: Motif) -> bool:
    return canonical_key(m1) == canonical_key(m2)


def automorphism_count(m: Motif) -> int:
    """Number of vertex permutations preserving the edge set; divides k!."""
    _, _, ties = _canonical_data(m)
    return ties


def copies_in_complete(m: Motif, n: int) -> int:
    """Number of copies of m in the complete graph K_n: (n)_k / |Aut|."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    k = m.vertex_count
    if n < k:
        return 0
    falling = 1
    for i in range(k):
        falling *= n - i
    aut = automorphism_count(m)
    assert falling % aut == 0
    return falling // aut


# ---------------------------------------------------------------------------
# density exponents


@dataclass(frozen=True)
class DensityProfile:
    """Subgraph-density exponents of a motif with their maximizer classes.

    m is the maximum of |E(F)|/|V(F)| and m1 the maximum of
    |E(F)|/(|V(F)|-1) over nonempty submotifs F; both are exact rationals.
    Maximizer sets hold one canonical representative per isomorphism class.
    """

    m: Fraction
    m1: Fraction
    m_maximizers: tuple
    m1_maximizers: tuple
    balanced: bool
    strictly_balanced: bool
    strongly_balanced: bool
    strictly_strongly_balanced: bool


def _maximizer_classes(argmax_motifs) -> tuple:
    reps = {}
    for sub in argmax_motifs:
        reps.setdefault(canonical_key(sub), canonical_relabel(sub))
    return tuple(sorted(reps.values(),
                        key=lambda s: (s.vertex_count, s.edge_count,
                                       s.sorted_edges())))


@lru_cache(maxsize=4096)
def density_exponents(m: Motif) -> DensityProfile:
    """Exact density exponents over all induced submotifs.

    A maximizing subgraph is always weakly dominated by the induced
    subgraph on its vertex set (it can only gain edges), so induced
    enumeration is exact, for the values and for the maximizer classes.
    """
    if m.edge_count == 0:
        raise ValueError("density exponents need at least one edge")
    k = m.vertex_count
    if k > MAX_EXPONENT_VERTICES:
        raise ValueError(f"motif too large: {k} > {MAX_EXPONENT_VERTICES} vertices")
    verts = range(1, k + 1)
    edges_in = {}
    for size in range(1, k + 1):
        for subset in combinations(verts, size):
            ss = frozenset(subset)
            cnt = sum(1 for a, b in m.edges if a in ss and b in ss)
            edges_in[subset] = cnt

    best_m = Fraction(0)
    best_m1 = Fraction(0)
    arg_m = []
    arg_m1 = []
    for subset, cnt in edges_in.items():
        r = Fraction(cnt, len(subset))
        if r > best_m:
            best_m, arg_m = r, [subset]
        elif r == best_m:
            arg_m.append(subset)
        if len(subset) >= 2 and cnt >= 1:
            r1 = Fraction(cnt, len(subset) - 1)
            if r1 > best_m1:
                best_m1, arg_m1 = r1, [subset]
            elif r1 == best_m1:
                arg_m1.append(subset)

    m_max = _maximizer_classes(m.induced(s) for s in arg_m)
    m1_max = _maximizer_classes(m.induced(s) for s in arg_m1)
    me, mv = m.edge_count, m.vertex_count
    self_key = canonical_key(m)
    balanced = best_m == Fraction(me, mv)
    strictly = balanced and all(canonical_key(s) == self_key for s in m_max)
    strongly = best_m1 == Fraction(me, mv - 1)
    strictly_strongly = strongly and all(canonical_key(s) == self_key
                                         for s in m1_max)
    return DensityProfile(best_m, best_m1, m_max, m1_max,
                          balanced, strictly, strongly, strictly_strongly)


# ---------------------------------------------------------------------------
# joins


def vertex_join(m: Motif, a: int, b: int) -> Motif:
    """Glue two copies of m, identifying vertex a of copy 1 with b of copy 2.

    The result has 2k-1 vertices and exactly 2|E| edges: the copies share a
    single vertex, so no edge of one can coincide with an edge of the other.
    """
    k = m.vertex_count
    if not (1 <= a <= k and 1 <= b <= k):
        raise ValueError(f"join vertices must lie in 1..{k}")
    mapping = {}
    nxt = k + 1
    for v in range(1, k + 1):
        if v == b:
            mapping[v] = a
        else:
            mapping[v] = nxt
            nxt += 1
    edges = set(m.edges)
    for u, v in m.edges:
        x, y = mapping[u], mapping[v]
        edges.add((min(x, y), max(x, y)))
    return Motif(2 * k - 1, edges)


@dataclass(frozen=True)
class JoinCatalog:
    """Union classes of two overlapping copies of a motif.

    For a fixed intersection class F, ``union_classes`` lists each union
    isomorphism class R with its multiplicity: the number of ordered pairs
    of motif copies on the labeled vertex set {1..2k-|V(F)|} whose
    intersection is isomorphic to F and whose union is isomorphic to R.
    """

    intersection_class: Motif
    union_classes: tuple


def _copies_on(m: Motif, labels: tuple) -> set:
    """Distinct copies of m with vertex set exactly ``labels``: edge frozensets."""
    out = set()
    for perm in permutations(labels):
        out.add(frozenset((min(perm[a - 1], perm[b - 1]),
                           max(perm[a - 1], perm[b - 1]))
                          for a, b in m.edges))
    return out


def embeds_in(f: Motif, m: Motif) -> bool:
    """True when f is isomorphic to a subgraph of m (same or fewer vertices)."""
    if f.vertex_count > m.vertex_count:
        return False
    for subset in combinations(range(1, m.vertex_count + 1), f.vertex_count):
        host_edges = {(a, b) for a, b in m.edges if a in subset and b in subset}
        pos = {v: i for i, v in enumerate(subset)}
        host = frozenset((min(pos[a], pos[b]), max(pos[a], pos[b]))
                         for a, b in host_edges)
        for perm in permutations(range(f.vertex_count)):
            if all((min(perm[a - 1], perm[b - 1]),
                    max(perm[a - 1], perm[b - 1])) in host for a, b in f.edges):
                return True
    return False


@lru_cache(maxsize=1024)
def _join_catalog_canonical(m: Motif, f: Motif) -> JoinCatalog:
    k = m.vertex_count
    fv = f.vertex_count
    s = 2 * k - fv
    f_key = canonical_key(f)

    # Every admissible pair spans {1..s}, and the symmetric group on those
    # labels acts transitively on the first copy, so it suffices to count
    # second copies against one fixed first copy and scale by the number of
    # placements of the first.
    first_edges = set(m.edges)
    new_vertices = tuple(range(k + 1, s + 1))
    per_first = {}
    for shared in combinations(range(1, k + 1), fv):
        seen = set()
        for perm in permutations(shared + new_vertices):
            e2 = frozenset((min(perm[a - 1], perm[b - 1]),
                            max(perm[a - 1], perm[b - 1]))
                           for a, b in m.edges)
            if e2 in seen:
                continue
            seen.add(e2)
            inter_edges = [e for e in e2 if e in first_edges]
            pos = {v: i + 1 for i, v in enumerate(shared)}
            inter = Motif(fv, [(pos[a], pos[b]) for a, b in inter_edges])
            if canonical_key(inter) != f_key:
                continue
            union = Motif(s, first_edges | e2)
            key = canonical_key(union)
            if key not in per_first:
                per_first[key] = [canonical_relabel(union), 0]
            per_first[key][1] += 1

    scale = copies_in_complete(m, s)
    classes = tuple(sorted(((rep, cnt * scale) for rep, cnt in per_first.values()),
                           key=lambda rc: (rc[0].edge_count, rc[0].sorted_edges())))
    return JoinCatalog(canonical_relabel(f), classes)


def join_catalog(m: Motif, f: Motif) -> JoinCatalog:
    """All union classes of ordered pairs of m-copies overlapping in class f."""
    if f.edge_count < 1:
        raise ValueError("intersection class needs at least one edge")
    if m.vertex_count > MAX_JOIN_VERTICES:
        raise ValueError(f"join catalog capped at {MAX_JOIN_VERTICES} vertices")
    if not embeds_in(f, m):
        raise ValueError("intersection class does not embed in the motif")
    return _join_catalog_canonical(canonical_relabel(m), canonical_relabel(f))


# ---------------------------------------------------------------------------
# embedding counts


def count_embeddings(host_n: int, host_edges, m: Motif) -> int:
    """Copies of m in a simple host graph on vertices 1..host_n.

    Backtracking over injective homomorphisms with degree pruning, divided
    by the automorphism count.
    """
    adj = [set() for _ in range(host_n + 1)]
    for a, b in host_edges:
        if a == b or not (1 <= a <= host_n and 1 <= b <= host_n):
            raise ValueError(f"bad host edge ({a},{b})")
        adj[a].add(b)
        adj[b].add(a)
    k = m.vertex_count
    if k > host_n:
        return 0
    mdeg = m.degrees()
    madj = m.neighbors()

    # visit motif vertices most-connected-first so candidate sets shrink fast
    order = []
    placed = set()
    remaining = set(range(1, k + 1))
    while remaining:
        v = max(remaining,
                key=lambda u: (len(madj[u] & placed), mdeg[u - 1]))
        order.append(v)
        placed.add(v)
        remaining.remove(v)
    back_neighbors = [tuple(madj[v] & set(order[:i]))
                      for i, v in enumerate(order)]

    host_vertices = [v for v in range(1, host_n + 1)]
    image = {}
    used = set()
    total = 0

    def extend(depth: int):
        nonlocal total
        if depth == k:
            total += 1
            return
        v = order[depth]
        need = mdeg[v - 1]
        anchors = back_neighbors[depth]
        if anchors:
            cands = set(adj[image[anchors[0]]])
            for u in anchors[1:]:
                cands &= adj[image[u]]
            cands -= used
        else:
            cands = [h for h in host_vertices if h not in used]
        for h in cands:
            if len(adj[h]) < need:
                continue
            image[v] = h
            used.add(h)
            extend(depth + 1)
            used.remove(h)
        image.pop(v, None)

    extend(0)
    aut = automorphism_count(m)
    assert total % aut == 0
    return total // aut

"""Shared graph builders and independent brute-force oracles.

Everything here is deliberately naive (permutation sweeps, product
enumerations, bitmask switch subsets) so that library results are checked
against code that shares none of their logic.
"""

import itertools

from hypothesis import strategies as st

from ecswitch.graphs import EdgeColouredGraph
from ecswitch.groups import Permutation


def pairs_of(n):
    return list(itertools.combinations(range(n), 2))


def cycle_pairs(n):
    return [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]


def path_pairs(n):
    return [(i, i + 1) for i in range(n - 1)]


def mono(m, n, pairs, colour=1):
    return EdgeColouredGraph.monochromatic(m, n, pairs, colour)


def coloured(m, n, pairs, colours):
    return EdgeColouredGraph(m, n, [(u, v, c) for (u, v), c in zip(pairs, colours)])


def is_connected(n, pairs):
    if n <= 1:
        return True
    adj = [[] for _ in range(n)]
    for u, v in pairs:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def canonical_pairs(n, pairs):
    best = None
    for perm in itertools.permutations(range(n)):
        relab = tuple(sorted(
            (min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in pairs))
        if best is None or relab < best:
            best = relab
    return best


def graphs_up_to_iso(max_n, max_edges=None, connected=False):
    """All plain graphs as (n, pairs) with n <= max_n, one per iso class."""
    out = []
    for n in range(1, max_n + 1):
        seen = set()
        all_pairs = pairs_of(n)
        limit = len(all_pairs) if max_edges is None else min(max_edges, len(all_pairs))
        for k in range(limit + 1):
            for subset in itertools.combinations(all_pairs, k):
                if connected and not is_connected(n, subset):
                    continue
                canon = canonical_pairs(n, subset)
                if canon in seen:
                    continue
                seen.add(canon)
                out.append((n, tuple(subset)))
    return out


def random_signature(rng, count, m):
    return tuple(rng.randint(1, m) for _ in range(count))


# -- brute-force oracles -------------------------------------------------------

def brute_underlying_iso(G, H):
    if G.n != H.n or len(G.edges) != len(H.edges):
        return None
    hset = set(H.edge_pairs())
    for perm in itertools.permutations(range(G.n)):
        mapped = {(min(perm[u], perm[v]), max(perm[u], perm[v]))
                  for u, v in G.edge_pairs()}
        if mapped == hset:
            return perm
    return None


def brute_coloured_iso_exists(G, H):
    if G.n != H.n or len(G.edges) != len(H.edges) or G.m != H.m:
        return False
    hset = set(H.edges)
    for perm in itertools.permutations(range(G.n)):
        mapped = {(min(perm[u], perm[v]), max(perm[u], perm[v]), c)
                  for u, v, c in G.edges}
        if mapped == hset:
            return True
    return False


def brute_hom_exists(G, H):
    """Exhaustive colour-preserving map search with partial-assignment cuts."""
    if G.n == 0:
        return True
    if H.n == 0:
        return False
    back = [[(w, c) for w, c in G.neighbours(v) if w < v] for v in range(G.n)]
    image = [-1] * G.n

    def extend(v):
        if v == G.n:
            return True
        for w in range(H.n):
            ok = True
            for u, c in back[v]:
                fu = image[u]
                if fu == w or not H.has_edge(fu, w) or H.colour_of(fu, w) != c:
                    ok = False
                    break
            if ok:
                image[v] = w
                if extend(v + 1):
                    return True
                image[v] = -1
        return False

    return extend(0)


def brute_k_colourable(n, pairs, k):
    for assign in itertools.product(range(k), repeat=n):
        if all(assign[u] != assign[v] for u, v in pairs):
            return True
    return False


def brute_ec_k_colourable(G, k):
    """Partition form of the coloured k-colouring, by full enumeration."""
    for assign in itertools.product(range(k), repeat=G.n):
        pair_colour = {}
        ok = True
        for u, v, c in G.edges:
            a, b = assign[u], assign[v]
            if a == b:
                ok = False
                break
            key = (min(a, b), max(a, b))
            if pair_colour.setdefault(key, c) != c:
                ok = False
                break
        if ok:
            return True
    return False


def s2_switched_signatures(G2):
    """Signatures reachable from a 2-coloured graph by per-vertex
    transposition switches: one bitmask per vertex subset."""
    base = G2.signature()
    pairs = G2.edge_pairs()
    out = set()
    for mask in range(2 ** G2.n):
        out.add(tuple(
            3 - c if ((mask >> u) ^ (mask >> v)) & 1 else c
            for (u, v), c in zip(pairs, base)))
    return out


def brute_s2_switchable_hom(G2, H2):
    for sig in sorted(s2_switched_signatures(G2)):
        if brute_hom_exists(G2.with_signature(sig), H2):
            return True
    return False


def gf2_in_span(target_mask, basis_masks):
    reduced = []
    for row in basis_masks:
        r = row
        for pivot, pr in reduced:
            if (r >> pivot) & 1:
                r ^= pr
        if r:
            reduced.append((r.bit_length() - 1, r))
    t = target_mask
    for pivot, pr in reduced:
        if (t >> pivot) & 1:
            t ^= pr
    return t == 0


def simple_cycles_as_edge_sets(n, pairs):
    """Every simple cycle, found by sweeping edge subsets for connected
    2-regular sub(multi)sets."""
    pairs = list(pairs)
    cycles = []
    for size in range(3, len(pairs) + 1):
        for subset in itertools.combinations(pairs, size):
            deg = {}
            for u, v in subset:
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            if any(d != 2 for d in deg.values()):
                continue
            support = sorted(deg)
            index = {v: i for i, v in enumerate(support)}
            if is_connected(len(support),
                            [(index[u], index[v]) for u, v in subset]):
                cycles.append(frozenset(subset))
    return cycles


# -- hypothesis strategies --------------------------------------------------------

@st.composite
def graph_strategy(draw, max_n=6, max_m=4, fixed_m=None):
    n = draw(st.integers(min_value=0, max_value=max_n))
    m = fixed_m if fixed_m is not None else draw(st.integers(1, max_m))
    candidates = pairs_of(n)
    if candidates:
        chosen = draw(st.lists(st.sampled_from(candidates), unique=True,
                               max_size=len(candidates)))
    else:
        chosen = []
    edges = [(u, v, draw(st.integers(1, m))) for u, v in chosen]
    return EdgeColouredGraph(m, n, edges)


def perm_strategy(m):
    return st.permutations(list(range(1, m + 1))).map(Permutation)


__all__ = [name for name in dir() if not name.startswith("_")]

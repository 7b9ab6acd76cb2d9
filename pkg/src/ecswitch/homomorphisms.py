"""Homomorphism and k-colouring deciders for edge-coloured graphs.

A homomorphism sends every colour-i edge onto a colour-i edge; a
k-colouring is a homomorphism to some edge-coloured graph on k vertices,
equivalently a partition of the vertices with no internal edges in which
all edges between a fixed pair of classes share one colour.

The switchable variants ("does some member of the switch class map?")
dispatch on the group exactly as the equivalence deciders do, and every
yes comes with a replayable witness: a switching sequence plus the vertex
map (plus the induced target for colourings).
"""

from __future__ import annotations

from itertools import combinations

from .errors import CapExceededError
from .graphs import EdgeColouredGraph, is_homomorphism
from .groups import first_property_t_colour
from .switching import (DEFAULT_STATE_CAP, METHOD_DIHEDRAL_EVEN, METHOD_EXACT,
                        METHOD_ORACLE, METHOD_PROPAGATION, METHOD_PROPERTY_T,
                        DecisionOutcome, SwitchingSequence, Witness, _SWAP12,
                        _no, _yes, apply_sequence, is_even_dihedral,
                        iter_reachable, lift_blockwise_witness,
                        monochromatize_sequence, pull_back_steps,
                        sigma_from_sequence)

DEFAULT_ASSIGNMENT_BUDGET = 1 << 20


# -- plain deciders ---------------------------------------------------------------

def _hom_search(G, H):
    """First colour-preserving vertex map G -> H, or None.

    Backtracking over vertices 0..n-1 with forward checking on bitmask
    domains; target vertices are tried in ascending order.
    """
    if G.n == 0:
        return ()
    if H.n == 0 or H.m != G.m:
        return None
    allowed = [[0] * (G.m + 1) for _ in range(H.n)]
    for a, b, c in H.edges:
        allowed[a][c] |= 1 << b
        allowed[b][c] |= 1 << a
    full = (1 << H.n) - 1
    adj = [[(w, c) for w, c in G.neighbours(v) if w > v] for v in range(G.n)]
    assignment = [-1] * G.n

    def extend(v, domains):
        if v == G.n:
            return True
        d = domains[v]
        while d:
            w = (d & -d).bit_length() - 1
            d &= d - 1
            new_domains = list(domains)
            ok = True
            for u, c in adj[v]:
                nd = new_domains[u] & allowed[w][c]
                if nd == 0:
                    ok = False
                    break
                new_domains[u] = nd
            if ok:
                assignment[v] = w
                if extend(v + 1, new_domains):
                    return True
                assignment[v] = -1
        return False

    if extend(0, [full] * G.n):
        return tuple(assignment)
    return None


def hom_exists(G, H) -> DecisionOutcome:
    """Colour-preserving homomorphism decision with an explicit map."""
    if G.m != H.m:
        raise ValueError("graphs must share one colour degree")
    f = _hom_search(G, H)
    if f is None:
        return _no(METHOD_EXACT)
    return _yes(METHOD_EXACT, Witness(hom=f))


def _blind(G):
    # colour-forgetting copy; reuses the coloured search for plain graphs
    return EdgeColouredGraph(1, G.n, [(u, v, 1) for u, v in G.edge_pairs()])


def plain_k_colouring(n, pairs, k):
    """Proper k-colouring of a plain graph, or None.  Polynomial for k <= 2."""
    if k < 1:
        raise ValueError("k must be at least 1")
    pairs = [(min(u, v), max(u, v)) for u, v in pairs]
    if k >= n:
        return list(range(n))
    if k == 1:
        return [0] * n if not pairs else None
    adj = [[] for _ in range(n)]
    for u, v in pairs:
        adj[u].append(v)
        adj[v].append(u)
    if k == 2:
        side = [-1] * n
        for start in range(n):
            if side[start] != -1:
                continue
            side[start] = 0
            queue = [start]
            while queue:
                u = queue.pop()
                for w in adj[u]:
                    if side[w] == -1:
                        side[w] = side[u] ^ 1
                        queue.append(w)
                    elif side[w] == side[u]:
                        return None
        return side
    colours = [-1] * n

    def extend(v, used):
        if v == n:
            return True
        for cls in range(min(used + 1, k)):
            if any(colours[w] == cls for w in adj[v]):
                continue
            colours[v] = cls
            if extend(v + 1, max(used, cls + 1)):
                return True
            colours[v] = -1
        return False

    return colours if extend(0, 0) else None


def k_colouring_exists(G, k) -> DecisionOutcome:
    """Partition of the vertices into at most k classes with no internal
    edges and one colour per class pair; equivalent to a homomorphism to
    some edge-coloured graph on k vertices.  The witness carries the
    induced target (padded to exactly k vertices) and the map."""
    if k < 1:
        raise ValueError("k must be at least 1")
    assign = [-1] * G.n
    pair_colour = {}
    adj = [[(w, c) for w, c in G.neighbours(v) if w < v] for v in range(G.n)]

    def extend(v, used):
        if v == G.n:
            return True
        for cls in range(min(used + 1, k)):
            ok = True
            added = []
            for u, c in adj[v]:
                other = assign[u]
                if other == cls:
                    ok = False
                    break
                key = (min(cls, other), max(cls, other))
                known = pair_colour.get(key)
                if known is None:
                    pair_colour[key] = c
                    added.append(key)
                elif known != c:
                    ok = False
                    break
            if ok:
                assign[v] = cls
                if extend(v + 1, max(used, cls + 1)):
                    return True
                assign[v] = -1
            for key in added:
                del pair_colour[key]
        return False

    if not extend(0, 0):
        return _no(METHOD_EXACT)
    target = EdgeColouredGraph(
        G.m, k, [(a, b, c) for (a, b), c in pair_colour.items()])
    return _yes(METHOD_EXACT, Witness(hom=tuple(assign), target=target))


# -- the alternating 4-cycle test -------------------------------------------------

def alternating_c4() -> EdgeColouredGraph:
    """The 4-cycle whose edge colours alternate 1, 2, 1, 2."""
    return EdgeColouredGraph(2, 4, [(0, 1, 1), (1, 2, 2), (2, 3, 1), (0, 3, 2)])


# image of each target vertex under (colour -> forced neighbour)
_C4_STEP = {(0, 1): 1, (0, 2): 3, (1, 1): 0, (1, 2): 2,
            (2, 1): 3, (2, 2): 1, (3, 1): 2, (3, 2): 0}


def hom_to_alternating_c4(F) -> DecisionOutcome:
    """Linear-time propagation test for a homomorphism into the alternating
     4-cycle.

    Every target vertex meets exactly one edge of each colour, so pinning
    one vertex per component forces every image along the edges; the pin
    is harmless because the target's endomorphisms act transitively.
    """
    if F.m != 2:
        raise ValueError("the propagation test needs a 2-coloured graph")
    image = [-1] * F.n
    for comp in F.components():
        image[comp[0]] = 0
        queue = [comp[0]]
        while queue:
            u = queue.pop()
            for w, c in F.neighbours(u):
                forced = _C4_STEP[(image[u], c)]
                if image[w] == -1:
                    image[w] = forced
                    queue.append(w)
                elif image[w] != forced:
                    return _no(METHOD_PROPAGATION,
                               f"vertex {w} forced to two different images")
    return _yes(METHOD_PROPAGATION,
                Witness(hom=tuple(image), target=alternating_c4()))


# -- transposition-switchable homomorphism (2 colours) ----------------------------

def s2_switchable_hom(G2, H2, budget=DEFAULT_ASSIGNMENT_BUDGET) -> DecisionOutcome:
    """Does some transposition-switched copy of G2 map into H2?

    When H2 itself passes the alternating-4-cycle test the answer only
    depends on whether G2 does too (composition through a monochromatic
    K2); otherwise one switch choice per vertex is enumerated exactly,
    which suffices because transposition switches commute.
    """
    if G2.m != 2 or H2.m != 2:
        raise ValueError("both graphs must use exactly 2 colours")
    if G2.n == 0:
        return _yes(METHOD_PROPAGATION,
                    Witness(sequence=SwitchingSequence.empty(), hom=()),
                    notes="empty source")
    if H2.n == 0:
        return _no(METHOD_PROPAGATION, "empty target")
    if not H2.edges:
        if G2.edges:
            return _no(METHOD_PROPAGATION, "edgeless target, source has edges")
        return _yes(METHOD_PROPAGATION,
                    Witness(sequence=SwitchingSequence.empty(),
                            hom=(0,) * G2.n),
                    notes="edgeless source and target")
    if not G2.edges:
        return _yes(METHOD_PROPAGATION,
                    Witness(sequence=SwitchingSequence.empty(),
                            hom=(0,) * G2.n),
                    notes="edgeless source")
    if hom_to_alternating_c4(H2).verdict:
        out = hom_to_alternating_c4(G2)
        if not out.verdict:
            return _no(METHOD_PROPAGATION,
                       "source fails the alternating-4-cycle test")
        f2 = out.witness.hom
        a, b, anchor_colour = H2.edges[0]
        # flips chosen so the switched source is monochromatic of the
        # anchor's colour: images {2,3} give colour 1, images {1,2} colour 2
        flips = (2, 3) if anchor_colour == 1 else (1, 2)
        sigma = tuple(1 if f2[v] in flips else 0 for v in range(G2.n))
        hom = tuple(a if f2[v] in (0, 2) else b for v in range(G2.n))
        seq = SwitchingSequence(
            [(v, _SWAP12) for v in range(G2.n) if sigma[v]])
        if not is_homomorphism(apply_sequence(G2, seq), H2, hom):
            raise RuntimeError("propagation witness failed to replay")
        return _yes(METHOD_PROPAGATION, Witness(sequence=seq, hom=hom),
                    notes="composition through a monochromatic K2")
    if 2 ** G2.n > budget:
        raise CapExceededError(
            f"2^{G2.n} switch assignments exceed budget {budget}")
    base = G2.signature()
    pairs = G2.edge_pairs()
    seen = set()
    for mask in range(2 ** G2.n):
        sig = tuple(
            3 - c if ((mask >> u) ^ (mask >> v)) & 1 else c
            for (u, v), c in zip(pairs, base))
        if sig in seen:
            continue
        seen.add(sig)
        f = _hom_search(G2.with_signature(sig), H2)
        if f is not None:
            seq = SwitchingSequence(
                [(v, _SWAP12) for v in range(G2.n) if (mask >> v) & 1])
            return _yes(METHOD_EXACT, Witness(sequence=seq, hom=f))
    return _no(METHOD_EXACT)


# -- switchable homomorphism, all groups ------------------------------------------

def _underlying_hom(G, H):
    """Plain homomorphism of the underlying graphs, or None; with a note on
    the path taken.  Polynomial when the target is bipartite."""
    if G.n == 0:
        return (), "empty source"
    if H.n == 0:
        return None, "empty target"
    if not H.edges:
        if G.edges:
            return None, "edgeless target, source has edges"
        return (0,) * G.n, "edgeless source and target"
    bip_h, _ = H.is_bipartite()
    if bip_h:
        bip_g, sides = G.is_bipartite()
        if not bip_g:
            return None, "bipartite target, non-bipartite source"
        a, b, _ = H.edges[0]
        return tuple(a if sides[v] == 0 else b for v in range(G.n)), \
            "bipartite fold onto one target edge"
    return _hom_search(_blind(G), _blind(H)), "underlying backtracking"


def _collapsed_as_m(G2, m):
    # the 2-coloured graph reread as m-coloured (colours 1 and 2 kept)
    return EdgeColouredGraph(m, G2.n, G2.edges)


def switchable_hom_exists(G, H, group, cap=DEFAULT_STATE_CAP) -> DecisionOutcome:
    """Does some member of G's switch class map into H?

    Dispatch: a group with a uniformisable colour reduces to a plain
    homomorphism of underlying graphs; even-degree dihedral groups reduce
    to the 2-coloured decision on the block collapses; other groups run
    the reachability oracle directly.
    """
    if G.m != H.m or G.m != group.m:
        raise ValueError("graphs and group must share one colour degree")
    j = first_property_t_colour(group)
    if j is not None:
        f, note = _underlying_hom(G, H)
        if f is None:
            return _no(METHOD_PROPERTY_T, note)
        seq = monochromatize_sequence(G, j, group) + pull_back_steps(
            monochromatize_sequence(H, j, group).inverse(), f, G.n)
        return _yes(METHOD_PROPERTY_T, Witness(sequence=seq, hom=f),
                    notes=note)
    if is_even_dihedral(group):
        G2 = G.collapse_blocks()
        H2 = H.collapse_blocks()
        inner = s2_switchable_hom(G2, H2, budget=min(cap, DEFAULT_ASSIGNMENT_BUDGET))
        if not inner.verdict:
            return _no(METHOD_DIHEDRAL_EVEN,
                       f"block reduction: {inner.notes or 'no map'}")
        sigma = sigma_from_sequence(inner.witness.sequence, G.n)
        f = inner.witness.hom
        switched2 = apply_sequence(G2, inner.witness.sequence)
        seq = lift_blockwise_witness(G, _collapsed_as_m(switched2, G.m),
                                     sigma, group)
        align_h = lift_blockwise_witness(H, _collapsed_as_m(H2, G.m),
                                         (0,) * H.n, group)
        seq = seq + pull_back_steps(align_h.inverse(), f, G.n)
        return _yes(METHOD_DIHEDRAL_EVEN, Witness(sequence=seq, hom=f),
                    notes=f"block reduction: {inner.method}")
    return switchable_hom_by_oracle(G, H, group, cap)


def switchable_hom_by_oracle(G, H, group, cap=DEFAULT_STATE_CAP) -> DecisionOutcome:
    """Ground truth by definition: test every reachable member for a
    homomorphism, in BFS order with early exit."""
    if G.m != H.m or G.m != group.m:
        raise ValueError("graphs and group must share one colour degree")
    for member, seq in iter_reachable(G, group, cap=cap):
        f = _hom_search(member, H)
        if f is not None:
            return _yes(METHOD_ORACLE, Witness(sequence=seq, hom=f))
    return _no(METHOD_ORACLE)


# -- switchable k-colouring ---------------------------------------------------------

def _complete_mono(k, m, colour):
    return EdgeColouredGraph.monochromatic(
        m, k, combinations(range(k), 2), colour)


def _kcol_by_sweep(G, k, group, cap, method, prune_underlying):
    if prune_underlying and plain_k_colouring(G.n, G.edge_pairs(), k) is None:
        return _no(method, "underlying graph has no k-colouring")
    for member, seq in iter_reachable(G, group, cap=cap):
        inner = k_colouring_exists(member, k)
        if inner.verdict:
            return _yes(method, Witness(sequence=seq, hom=inner.witness.hom,
                                        target=inner.witness.target))
    return _no(method)


def switchable_k_colouring(G, k, group, cap=DEFAULT_STATE_CAP) -> DecisionOutcome:
    """Does some member of G's switch class have a k-colouring?

    Dispatch: with a uniformisable colour the answer is plain
    k-colourability of the underlying graph; even-degree dihedral groups
    get the polynomial block test for k <= 2 and an exact reachable-member
    search for k >= 3; other groups run the oracle composition.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if G.m != group.m:
        raise ValueError("graph and group must share one colour degree")
    j = first_property_t_colour(group)
    if j is not None:
        colouring = plain_k_colouring(G.n, G.edge_pairs(), k)
        if colouring is None:
            return _no(METHOD_PROPERTY_T, "underlying graph has no k-colouring")
        seq = monochromatize_sequence(G, j, group)
        return _yes(METHOD_PROPERTY_T,
                    Witness(sequence=seq, hom=tuple(colouring),
                            target=_complete_mono(k, G.m, j)),
                    notes=f"monochromatized to colour {j}")
    if is_even_dihedral(group):
        if k == 1:
            if G.edges:
                return _no(METHOD_DIHEDRAL_EVEN, "source has an edge")
            return _yes(METHOD_DIHEDRAL_EVEN,
                        Witness(sequence=SwitchingSequence.empty(),
                                hom=(0,) * G.n,
                                target=EdgeColouredGraph(G.m, 1)),
                        notes="edgeless source")
        if k == 2:
            bip, sides = G.is_bipartite()
            if not bip:
                return _no(METHOD_DIHEDRAL_EVEN, "underlying graph is odd")
            alt = hom_to_alternating_c4(G.collapse_blocks())
            if not alt.verdict:
                return _no(METHOD_DIHEDRAL_EVEN,
                           "block graph fails the alternating-4-cycle test")
            f2 = alt.witness.hom
            sigma = tuple(1 if f2[v] in (2, 3) else 0 for v in range(G.n))
            mono_target = EdgeColouredGraph.monochromatic(
                G.m, G.n, G.edge_pairs(), 1)
            seq = lift_blockwise_witness(G, mono_target, sigma, group)
            return _yes(METHOD_DIHEDRAL_EVEN,
                        Witness(sequence=seq, hom=sides,
                                target=_complete_mono(2, G.m, 1)),
                        notes="bipartite + alternating-4-cycle propagation")
        return _kcol_by_sweep(G, k, group, cap, METHOD_EXACT,
                              prune_underlying=True)
    return _kcol_by_sweep(G, k, group, cap, METHOD_ORACLE,
                          prune_underlying=True)


def switchable_k_colouring_exact(G, k, group, cap=DEFAULT_STATE_CAP):
    """The exact reachable-member search for any k (the branch used for
    k >= 3 under even dihedral groups), exposed for cross-checks."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return _kcol_by_sweep(G, k, group, cap, METHOD_EXACT,
                          prune_underlying=True)


def switchable_k_colouring_by_oracle(G, k, group, cap=DEFAULT_STATE_CAP):
    """Pure oracle composition: sweep every reachable member, no pruning."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return _kcol_by_sweep(G, k, group, cap, METHOD_ORACLE,
                          prune_underlying=False)


# -- hardness reduction builders ---------------------------------------------------

def build_kcol_reduction(n, pairs, k, m, j) -> EdgeColouredGraph:
    """Disjoint union of a plain graph and a complete graph on k vertices,
    every edge coloured j: the plain graph is k-colourable exactly when the
    output is switchably k-colourable under the even dihedral group."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if not 1 <= j <= m:
        raise ValueError(f"colour {j} out of range 1..{m}")
    edges = [(u, v, j) for u, v in pairs]
    edges.extend((n + a, n + b, j) for a, b in combinations(range(k), 2))
    return EdgeColouredGraph(m, n + k, edges)


def build_hom_reduction(F, m) -> EdgeColouredGraph:
    """The 2-coloured graph F reread with m colours; its block collapse is
    F again."""
    if F.m != 2:
        raise ValueError("source of the reduction must be 2-coloured")
    if m < 2 or m % 2 != 0:
        raise ValueError(f"need an even colour count >= 2, got {m}")
    return EdgeColouredGraph(m, F.n, F.edges)


# -- witness replay ----------------------------------------------------------------

def verify_hom_witness(G, H, outcome: DecisionOutcome) -> bool:
    """Replay: switch G by the witness sequence, then check the map."""
    if not outcome.verdict or outcome.witness is None:
        return False
    w = outcome.witness
    if w.hom is None:
        return False
    switched = apply_sequence(G, w.sequence or SwitchingSequence.empty())
    return is_homomorphism(switched, H, w.hom)


def verify_kcol_witness(G, k, outcome: DecisionOutcome) -> bool:
    """Replay: the witness target must have k vertices and the switched
    source must map into it."""
    if not outcome.verdict or outcome.witness is None:
        return False
    w = outcome.witness
    if w.hom is None or w.target is None:
        return False
    if w.target.n != k or w.target.m != G.m:
        return False
    switched = apply_sequence(G, w.sequence or SwitchingSequence.empty())
    return is_homomorphism(switched, w.target, w.hom)

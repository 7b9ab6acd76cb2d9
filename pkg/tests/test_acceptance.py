"""Acceptance suite: one test per criterion, each printing one PASS/FAIL line.

Run ``pytest -s tests/test_acceptance.py -v`` to watch the lines live.

The oracles used here are re-implemented from scratch on raw colour tuples
(union-find over the full signature space driven by generator images,
exhaustive switch-subset enumeration, product colourability sweeps), so
agreement with the library is a genuine cross-check rather than the
library testing itself.
"""

import itertools
import random
import time

import pytest

from ecswitch import cli
from ecswitch.graphs import EdgeColouredGraph, parse, serialize
from ecswitch.groups import Permutation, has_property_Tj, make_named
from ecswitch.homomorphisms import (build_hom_reduction, build_kcol_reduction,
                                    switchable_hom_by_oracle,
                                    switchable_hom_exists,
                                    switchable_k_colouring,
                                    switchable_k_colouring_by_oracle,
                                    switchable_k_colouring_exact,
                                    verify_hom_witness, verify_kcol_witness)
from ecswitch.switching import (SwitchingSequence, apply_sequence,
                                monochromatize_sequence,
                                reachable_signatures, recolour_edge_sequence,
                                s2_equivalent_labelled, switch_equivalent,
                                verify_equivalence_witness)
from ecswitch.errors import NoWitnessError
from helpers import (brute_hom_exists, brute_k_colourable, coloured,
                     graphs_up_to_iso, mono, pairs_of, random_signature,
                     s2_switched_signatures)

S3 = make_named("symmetric", 3)
S4 = make_named("symmetric", 4)
A4 = make_named("alternating", 4)
D3 = make_named("dihedral", 3)
D4 = make_named("dihedral", 4)
D5 = make_named("dihedral", 5)
Z3 = make_named("cyclic", 3)
Z4 = make_named("cyclic", 4)
GROUPS_BY_DEGREE = {3: (S3, D3, Z3), 4: (S4, A4, D4, Z4)}


def report(number, failures, detail, t0):
    status = "PASS" if not failures else f"FAIL ({len(failures)} problems)"
    line = (f"ACCEPTANCE {number}: {status} — {detail} "
            f"[{time.perf_counter() - t0:.1f}s]")
    print(line)
    assert not failures, line + " :: " + "; ".join(str(f) for f in failures[:5])


# -- independent oracle machinery ------------------------------------------------

def _sig_index(sig, m):
    idx = 0
    for c in reversed(sig):
        idx = idx * m + (c - 1)
    return idx


def _signature_classes(n, pairs, m, group):
    """Union-find partition of every one of the m^|E| signatures under
    single generator switches, on raw digit arithmetic."""
    count = len(pairs)
    size = m ** count
    parent = list(range(size))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    incident = [[e for e, (u, v) in enumerate(pairs) if w in (u, v)]
                for w in range(n)]
    weights = [m ** e for e in range(count)]
    images = [p.image for p in group.generators]
    for idx in range(size):
        digits = []
        t = idx
        for _ in range(count):
            digits.append(t % m)
            t //= m
        for w in range(n):
            for image in images:
                other = idx
                for e in incident[w]:
                    other += (image[digits[e]] - 1 - digits[e]) * weights[e]
                ra, rb = find(idx), find(other)
                if ra != rb:
                    parent[ra] = rb
    return find


def _plain_automorphisms(n, pairs):
    eset = set(pairs)
    out = []
    for perm in itertools.permutations(range(n)):
        if {tuple(sorted((perm[u], perm[v]))) for u, v in pairs} == eset:
            out.append(perm)
    return out


def _edge_permutations(pairs, vertex_perms):
    index = {p: e for e, p in enumerate(pairs)}
    out = []
    for psi in vertex_perms:
        out.append(tuple(index[tuple(sorted((psi[u], psi[v])))]
                         for u, v in pairs))
    return out


def _permute_signature(sig, edge_perm):
    out = [0] * len(sig)
    for e, c in enumerate(sig):
        out[edge_perm[e]] = c
    return tuple(out)


# -- criterion 1 -------------------------------------------------------------------

def test_criterion_1_paper_sequences():
    t0 = time.perf_counter()
    failures = []
    g = EdgeColouredGraph(3, 2, [(0, 1, 1)])
    a = Permutation.parse("(1 2)", 3)
    b = Permutation.parse("(2 3)", 3)
    interleaved = SwitchingSequence([(0, a), (1, b), (0, a.inverse())])
    grouped = SwitchingSequence([(0, a), (0, a.inverse()), (1, b)])
    if apply_sequence(g, interleaved).signature() != (3,):
        failures.append("interleaved sequence did not end on colour 3")
    if apply_sequence(g, grouped).signature() != (1,):
        failures.append("grouped sequence did not end on colour 1")
    report(1, failures, "single-edge switching sequences end on colours 3 and 1",
           t0)


# -- criterion 2 -------------------------------------------------------------------

def test_criterion_2_property_t_classification():
    t0 = time.perf_counter()
    failures = []
    checked = 0

    def expect(group, value):
        nonlocal checked
        for j in range(1, group.m + 1):
            checked += 1
            if has_property_Tj(group, j) != value:
                failures.append(f"{group.name} j={j}: expected {value}")

    for m in range(3, 8):
        expect(make_named("symmetric", m), True)
    expect(make_named("alternating", 3), False)
    for m in range(4, 8):
        expect(make_named("alternating", m), True)
    for m in range(2, 8):
        expect(make_named("dihedral", m), m % 2 == 1)
    for m in range(2, 8):
        expect(make_named("cyclic", m), False)
    report(2, failures,
           f"classification table reproduced for every m <= 7 ({checked} "
           "group/colour checks)", t0)


# -- criterion 3 -------------------------------------------------------------------

def test_criterion_3_equivalence_fast_paths_match_oracle():
    t0 = time.perf_counter()
    failures = []
    catalogue = graphs_up_to_iso(5, max_edges=6, connected=True)
    comparisons = replays = 0
    for gi, (n, pairs) in enumerate(catalogue):
        auts = _plain_automorphisms(n, pairs)
        edge_perms = _edge_permutations(pairs, auts)
        for m in (3, 4):
            base = mono(m, n, pairs, 1)
            rng = random.Random(3101 + 17 * gi + m)
            sig_pairs = [(random_signature(rng, len(pairs), m),
                          random_signature(rng, len(pairs), m))
                         for _ in range(200)]
            for group in GROUPS_BY_DEGREE[m]:
                find = _signature_classes(n, pairs, m, group)
                for sa, sb in sig_pairs:
                    root = find(_sig_index(sa, m))
                    expected = any(
                        find(_sig_index(_permute_signature(sb, ep), m)) == root
                        for ep in edge_perms)
                    G = base.with_signature(sa)
                    H = base.with_signature(sb)
                    got = switch_equivalent(G, H, group)
                    comparisons += 1
                    if got.verdict != expected:
                        failures.append(
                            f"graph {gi} {group.name} {sa} vs {sb}: "
                            f"fast={got.verdict} oracle={expected}")
                    elif got.verdict:
                        replays += 1
                        if not verify_equivalence_witness(G, H, got):
                            failures.append(
                                f"graph {gi} {group.name} {sa} vs {sb}: "
                                "witness failed to replay")
    report(3, failures,
           f"{comparisons} verdicts over {len(catalogue)} connected graphs "
           f"agree with the full-space oracle; {replays} witnesses replayed",
           t0)


# -- criterion 4 -------------------------------------------------------------------

def test_criterion_4_gadget_soundness():
    t0 = time.perf_counter()
    failures = []
    rng = random.Random(4004)
    gadget_groups = [S3, S4, A4, D3, D4, D5, Z3, Z4]
    done = 0
    while done < 1000:
        group = rng.choice(gadget_groups)
        n = rng.randint(2, 7)
        candidates = pairs_of(n)
        chosen = rng.sample(candidates, rng.randint(1, len(candidates)))
        g = coloured(group.m, n, chosen,
                     random_signature(rng, len(chosen), group.m))
        edge = rng.choice(chosen)
        j = rng.randint(1, group.m)
        if g.colour_of(*edge) == j:
            continue
        try:
            seq = recolour_edge_sequence(g, edge, j, group)
        except NoWitnessError:
            continue
        h = apply_sequence(g, seq)
        diffs = [p for p in g.edge_pairs() if g.colour_of(*p) != h.colour_of(*p)]
        if h.colour_of(*edge) != j or diffs != [tuple(sorted(edge))]:
            failures.append(f"recolour {group.name} {edge}->{j} touched {diffs}")
        done += 1
    mono_groups = [S3, S4, A4, D3, D5]
    for _ in range(200):
        group = rng.choice(mono_groups)
        n = rng.randint(1, 7)
        candidates = pairs_of(n)
        chosen = [p for p in candidates if rng.random() < 0.6]
        g = coloured(group.m, n, chosen,
                     random_signature(rng, len(chosen), group.m))
        j = rng.randint(1, group.m)
        seq = monochromatize_sequence(g, j, group)
        h = apply_sequence(g, seq)
        if len(seq) > 4 * len(g.edges):
            failures.append(f"monochromatize length {len(seq)} > 4|E|")
        if not h.is_monochromatic(j) or h.edge_pairs() != g.edge_pairs():
            failures.append(f"monochromatize to {j} failed for {group.name}")
    report(4, failures,
           "1000 single-edge recolourings and 200 monochromatizations "
           "replayed exactly", t0)


# -- criterion 5 -------------------------------------------------------------------

def test_criterion_5_cycle_parity_criterion_vs_switch_subsets():
    t0 = time.perf_counter()
    failures = []
    rng = random.Random(5005)
    pairs_checked = 0
    for _ in range(500):
        n = rng.randint(2, 8)
        chosen = [p for p in pairs_of(n) if rng.random() < 0.45]
        count = len(chosen)
        for _ in range(3):
            base_sig = random_signature(rng, count, 2)
            g = coloured(2, n, chosen, base_sig)
            reachable = s2_switched_signatures(g)
            partners = [random_signature(rng, count, 2) for _ in range(4)]
            for _ in range(3):
                mask = rng.randrange(2 ** n)
                partners.append(tuple(
                    3 - c if ((mask >> u) ^ (mask >> v)) & 1 else c
                    for (u, v), c in zip(chosen, base_sig)))
            for sig in partners:
                h = g.with_signature(sig)
                expected = sig in reachable
                out = s2_equivalent_labelled(g, h)
                pairs_checked += 1
                if out.verdict != expected:
                    failures.append(f"n={n} {base_sig} vs {sig}")
                elif out.verdict and apply_sequence(g, out.witness.sequence) != h:
                    failures.append(f"witness replay failed for {base_sig}->{sig}")
    assert pairs_checked >= 10_000
    report(5, failures,
           f"cycle-parity criterion matches 2^n switch enumeration on "
           f"{pairs_checked} signature pairs", t0)


# -- criteria 6 and 7 ---------------------------------------------------------------

CAT4 = graphs_up_to_iso(4, connected=True) + [(2, ()), (4, ((0, 1), (2, 3)))]


@pytest.fixture(scope="module")
def dispatch_sample():
    sample = {}
    for m in (3, 4):
        rng = random.Random(6006 + m)
        instances = []
        for ns, ps in CAT4:
            for nt, pt in CAT4:
                for _ in range(2):
                    instances.append(
                        (coloured(m, ns, ps, random_signature(rng, len(ps), m)),
                         coloured(m, nt, pt, random_signature(rng, len(pt), m))))
        sample[m] = instances
    return sample


def test_criterion_6_dispatch_agrees_with_oracle_composition(dispatch_sample):
    t0 = time.perf_counter()
    failures = []
    hom_checked = kcol_checked = 0
    for m in (3, 4):
        for G, H in dispatch_sample[m]:
            for group in GROUPS_BY_DEGREE[m]:
                fast = switchable_hom_exists(G, H, group)
                slow = switchable_hom_by_oracle(G, H, group)
                hom_checked += 1
                if fast.verdict != slow.verdict:
                    failures.append(
                        f"hom {group.name} {G.edges}->{H.edges}: "
                        f"fast={fast.verdict} oracle={slow.verdict}")
                elif fast.verdict and not (verify_hom_witness(G, H, fast)
                                           and verify_hom_witness(G, H, slow)):
                    failures.append(f"hom witness replay {group.name}")
        rng = random.Random(6600 + m)
        for ns, ps in CAT4:
            for _ in range(3):
                G = coloured(m, ns, ps, random_signature(rng, len(ps), m))
                for k in (1, 2, 3):
                    for group in GROUPS_BY_DEGREE[m]:
                        fast = switchable_k_colouring(G, k, group)
                        slow = switchable_k_colouring_by_oracle(G, k, group)
                        kcol_checked += 1
                        if fast.verdict != slow.verdict:
                            failures.append(
                                f"kcol {group.name} k={k} {G.edges}: "
                                f"fast={fast.verdict} oracle={slow.verdict}")
                        elif fast.verdict and not (
                                verify_kcol_witness(G, k, fast)
                                and verify_kcol_witness(G, k, slow)):
                            failures.append(
                                f"kcol witness replay {group.name} k={k}")
    report(6, failures,
           f"{hom_checked} homomorphism and {kcol_checked} k-colouring "
           "dispatches agree with oracle composition (witnesses replayed)",
           t0)


def test_criterion_7_quantified_composition_theorem(dispatch_sample):
    t0 = time.perf_counter()
    failures = []
    checked = 0
    for G, H in dispatch_sample[3]:
        auts = _plain_automorphisms(H.n, H.edge_pairs())
        edge_perms = _edge_permutations(H.edge_pairs(), auts)
        for group in GROUPS_BY_DEGREE[3]:
            lhs = switchable_hom_by_oracle(G, H, group).verdict
            reach_g = reachable_signatures(G, group)
            reach_h = reachable_signatures(H, group)
            members_g = [reach_g.graph_for(sig) for sig in reach_g]
            memo = {}

            def mapped_onto(sig_h):
                canon = min(_permute_signature(sig_h, ep) for ep in edge_perms)
                if canon not in memo:
                    target = reach_h.graph_for(canon)
                    memo[canon] = any(brute_hom_exists(Gp, target)
                                      for Gp in members_g)
                return memo[canon]

            rhs = all(mapped_onto(sig) for sig in reach_h)
            checked += 1
            if lhs != rhs:
                failures.append(
                    f"{group.name} {G.edges}->{H.edges}: one-sided={lhs} "
                    f"quantified={rhs}")
    report(7, failures,
           f"the for-all/exists composition equivalence held on {checked} "
           "instances, both sides by reachability sweep", t0)


# -- criterion 8 -------------------------------------------------------------------

def test_criterion_8_reduction_soundness():
    t0 = time.perf_counter()
    failures = []
    kcol_checked = 0
    for n, pairs in graphs_up_to_iso(5):
        for k in (2, 3):
            expected = brute_k_colourable(n, pairs, k)
            reduced = build_kcol_reduction(n, pairs, k, 4, 1)
            got = switchable_k_colouring_exact(reduced, k, D4)
            kcol_checked += 1
            if got.verdict != expected:
                failures.append(
                    f"reduction n={n} edges={pairs} k={k}: "
                    f"plain={expected} switchable={got.verdict}")
            elif got.verdict and not verify_kcol_witness(reduced, k, got):
                failures.append(f"reduction witness replay n={n} k={k}")
    rng = random.Random(8008)
    round_trips = 0
    for _ in range(100):
        n = rng.randint(0, 7)
        chosen = [p for p in pairs_of(n) if rng.random() < 0.5]
        f = coloured(2, n, chosen, random_signature(rng, len(chosen), 2))
        m = rng.choice((2, 4, 6, 8))
        if build_hom_reduction(f, m).collapse_blocks() != f:
            failures.append(f"collapse round trip failed at m={m}")
        round_trips += 1
    report(8, failures,
           f"{kcol_checked} colouring reductions match plain colourability; "
           f"{round_trips} collapse round trips are identities", t0)


# -- criterion 9 -------------------------------------------------------------------

def test_criterion_9_cli_contract(tmp_path, capsys):
    t0 = time.perf_counter()
    failures = []
    rng = random.Random(9009)
    for _ in range(500):
        n = rng.randint(0, 8)
        m = rng.randint(1, 5)
        chosen = [p for p in pairs_of(n) if rng.random() < 0.5]
        g = coloured(m, n, chosen, random_signature(rng, len(chosen), m))
        if parse(serialize(g)) != g:
            failures.append(f"round trip failed for {g}")

    def run(argv):
        code = cli.main(argv)
        return code, capsys.readouterr().out

    g = coloured(3, 4, [(0, 1), (1, 2), (2, 3), (0, 3)], [1, 2, 3, 1])
    h = g.relabel([1, 2, 3, 0]).with_signature((2, 2, 3, 1))
    gpath = tmp_path / "g.ecg"
    hpath = tmp_path / "h.ecg"
    gpath.write_text(serialize(g))
    hpath.write_text(serialize(h))
    witness = tmp_path / "w.seq"
    commands = [
        ["equiv", str(gpath), str(hpath), "--group", "S3", "--oracle",
         "--witness", str(witness)],
        ["mono", str(gpath), "--group", "S3", "--colour", "2",
         "--witness", str(witness)],
        ["hom", str(gpath), str(hpath), "--group", "S3", "--oracle"],
        ["kcol", str(gpath), "--group", "S3", "--k", "2", "--oracle"],
        ["oracle", str(gpath), "--group", "Z3"],
    ]
    for argv in commands:
        code_a, out_a = run(argv)
        code_b, out_b = run(argv)
        if (code_a, out_a) != (code_b, out_b):
            failures.append(f"non-deterministic output for {argv[0]}")
        if code_a not in (0, 1):
            failures.append(f"unexpected exit {code_a} for {argv[0]}")

    # replay the equivalence witness through the CLI
    code, out = run(["equiv", str(gpath), str(hpath), "--group", "S3",
                     "--witness", str(witness)])
    if code != 0:
        failures.append("equivalence expected yes for relabelled signature")
    else:
        bijection = [int(t) for line in out.splitlines()
                     if line.startswith("bijection ") for t in line.split()[1:]]
        code, out = run(["apply", str(gpath), str(witness)])
        if code != 0 or parse(out).relabel(bijection) != h:
            failures.append("CLI equivalence witness failed to replay")
    # replay the monochromatization witness through the CLI
    code, _ = run(["mono", str(gpath), "--group", "S3", "--colour", "2",
                   "--witness", str(witness)])
    if code != 0:
        failures.append("mono expected yes under S3")
    else:
        code, out = run(["apply", str(gpath), str(witness)])
        if code != 0 or not parse(out).is_monochromatic(2):
            failures.append("CLI mono witness failed to replay")
    report(9, failures,
           "500 serialisation round trips, deterministic stdout, CLI witness "
           "replays (criteria 3-6 verified their witnesses inline)", t0)

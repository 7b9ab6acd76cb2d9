"""Command-line front end.

Subcommands: equiv, mono, apply, kcol, hom, gen, oracle.
Exit codes: 0 yes, 1 no, 2 usage or parse error, 3 budget exceeded,
4 fast-path/oracle self-check mismatch.

All output is deterministic for a given invocation, so repeated runs can
be compared byte for byte.
"""

from __future__ import annotations

import argparse
import random
import sys
from itertools import combinations

from .errors import CapExceededError, ParseError
from .graphs import parse as parse_graph
from .graphs import serialize as serialize_graph
from .graphs import EdgeColouredGraph
from .groups import find_T_witness, has_property_Tj, parse_group_spec
from .homomorphisms import (switchable_hom_by_oracle, switchable_hom_exists,
                            switchable_k_colouring,
                            switchable_k_colouring_by_oracle)
from .switching import (DEFAULT_STATE_CAP, SwitchingSequence, apply_sequence,
                        monochromatize_sequence, reachable_signatures,
                        switch_equivalent, switch_equivalent_by_oracle)

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_MISMATCH = 4


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path):
    return parse_graph(_read(path))


def _verdict_line(flag):
    return "verdict yes" if flag else "verdict no"


def _write_witness(path, outcome):
    lines = []
    w = outcome.witness
    if w is not None and w.sequence is not None:
        lines.append(w.sequence.serialize())
    if w is not None and w.bijection is not None:
        lines.append("# bijection " + " ".join(str(x) for x in w.bijection) + "\n")
    if w is not None and w.hom is not None:
        lines.append("# map " + " ".join(str(x) for x in w.hom) + "\n")
    if w is not None and w.target is not None:
        for line in serialize_graph(w.target).splitlines():
            lines.append(f"# target {line}\n")
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("".join(lines))


def _cmd_equiv(args):
    G = _load_graph(args.graph)
    H = _load_graph(args.other)
    group = parse_group_spec(args.group)
    if G.m != H.m or G.m != group.m:
        print("error: graphs and group must share one colour degree",
              file=sys.stderr)
        return EXIT_USAGE
    outcome = switch_equivalent(G, H, group, cap=args.budget)
    print(_verdict_line(outcome.verdict))
    print(f"method {outcome.method}")
    if args.oracle:
        check = switch_equivalent_by_oracle(G, H, group, cap=args.budget)
        print(f"oracle-verdict {'yes' if check.verdict else 'no'}")
        if check.verdict != outcome.verdict:
            print("self-check mismatch")
            return EXIT_MISMATCH
        print("self-check ok")
    if outcome.verdict and outcome.witness.bijection is not None:
        print("bijection " + " ".join(str(x) for x in outcome.witness.bijection))
    if args.witness and outcome.verdict:
        _write_witness(args.witness, outcome)
    return EXIT_YES if outcome.verdict else EXIT_NO


def _cmd_mono(args):
    G = _load_graph(args.graph)
    group = parse_group_spec(args.group)
    j = args.colour
    if G.m != group.m:
        print("error: graph and group must share one colour degree",
              file=sys.stderr)
        return EXIT_USAGE
    if not 1 <= j <= G.m:
        print(f"error: colour {j} out of range 1..{G.m}", file=sys.stderr)
        return EXIT_USAGE
    if not has_property_Tj(group, j):
        failing = next(i for i in range(1, group.m + 1)
                       if find_T_witness(group, i, j) is None)
        print("verdict no")
        print(f"missing-witness i {failing} j {j}")
        return EXIT_NO
    seq = monochromatize_sequence(G, j, group)
    print("verdict yes")
    print(f"steps {len(seq)}")
    if args.witness:
        with open(args.witness, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(seq.serialize())
    return EXIT_YES


def _cmd_apply(args):
    G = _load_graph(args.graph)
    seq = SwitchingSequence.parse(_read(args.sequence), G.m)
    try:
        result = apply_sequence(G, seq)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = serialize_graph(result)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    sys.stdout.write(text)
    return EXIT_YES


def _cmd_kcol(args):
    G = _load_graph(args.graph)
    group = parse_group_spec(args.group)
    if G.m != group.m:
        print("error: graph and group must share one colour degree",
              file=sys.stderr)
        return EXIT_USAGE
    outcome = switchable_k_colouring(G, args.k, group, cap=args.budget)
    print(_verdict_line(outcome.verdict))
    print(f"method {outcome.method}")
    if args.oracle:
        check = switchable_k_colouring_by_oracle(G, args.k, group,
                                                 cap=args.budget)
        print(f"oracle-verdict {'yes' if check.verdict else 'no'}")
        if check.verdict != outcome.verdict:
            print("self-check mismatch")
            return EXIT_MISMATCH
        print("self-check ok")
    if outcome.verdict:
        print("map " + " ".join(str(x) for x in outcome.witness.hom))
        for line in serialize_graph(outcome.witness.target).splitlines():
            print(f"target {line}")
    if args.witness and outcome.verdict:
        _write_witness(args.witness, outcome)
    return EXIT_YES if outcome.verdict else EXIT_NO


def _cmd_hom(args):
    G = _load_graph(args.graph)
    H = _load_graph(args.other)
    group = parse_group_spec(args.group)
    if G.m != H.m or G.m != group.m:
        print("error: graphs and group must share one colour degree",
              file=sys.stderr)
        return EXIT_USAGE
    outcome = switchable_hom_exists(G, H, group, cap=args.budget)
    print(_verdict_line(outcome.verdict))
    print(f"method {outcome.method}")
    if args.oracle:
        check = switchable_hom_by_oracle(G, H, group, cap=args.budget)
        print(f"oracle-verdict {'yes' if check.verdict else 'no'}")
        if check.verdict != outcome.verdict:
            print("self-check mismatch")
            return EXIT_MISMATCH
        print("self-check ok")
    if outcome.verdict:
        print("map " + " ".join(str(x) for x in outcome.witness.hom))
    if args.witness and outcome.verdict:
        _write_witness(args.witness, outcome)
    return EXIT_YES if outcome.verdict else EXIT_NO


def _cmd_gen(args):
    if args.vertices < 0 or args.m < 1 or args.edges < 0:
        print("error: need vertices >= 0, edges >= 0, m >= 1", file=sys.stderr)
        return EXIT_USAGE
    pairs = list(combinations(range(args.vertices), 2))
    if args.edges > len(pairs):
        print(f"error: {args.edges} edges do not fit on {args.vertices} "
              "vertices", file=sys.stderr)
        return EXIT_USAGE
    rng = random.Random(args.seed)
    chosen = rng.sample(pairs, args.edges)
    graph = EdgeColouredGraph(
        args.m, args.vertices,
        [(u, v, rng.randint(1, args.m)) for u, v in chosen])
    text = serialize_graph(graph)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_YES


def _cmd_oracle(args):
    G = _load_graph(args.graph)
    group = parse_group_spec(args.group)
    if G.m != group.m:
        print("error: graph and group must share one colour degree",
              file=sys.stderr)
        return EXIT_USAGE
    sc = reachable_signatures(G, group, cap=args.budget,
                              by_generators=args.generators_only)
    print(f"vertices {G.n}")
    print(f"edges {len(G.edges)}")
    print(f"group {group.name}")
    print(f"order {group.order}")
    print(f"signatures {len(sc)}")
    print(f"max-depth {sc.max_depth()}")
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ecswitch",
        description="Switching of edge-coloured graphs under permutation groups")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, budget=True):
        p.add_argument("--group", required=True,
                       help="group spec: S<m>, A<m>, D<m>, Z<m> or gens<m>:...")
        if budget:
            p.add_argument("--budget", type=int, default=DEFAULT_STATE_CAP,
                           help="state budget for exhaustive searches")

    p = sub.add_parser("equiv", help="decide switch equivalence")
    p.add_argument("graph")
    p.add_argument("other")
    common(p)
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against the BFS oracle")
    p.add_argument("--witness", help="write the witness sequence here")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("mono", help="monochromatizing witness sequence")
    p.add_argument("graph")
    common(p, budget=False)
    p.add_argument("--colour", type=int, required=True)
    p.add_argument("--witness", help="write the witness sequence here")
    p.set_defaults(func=_cmd_mono)

    p = sub.add_parser("apply", help="replay a switching sequence")
    p.add_argument("graph")
    p.add_argument("sequence")
    p.add_argument("-o", "--output", help="also write the result here")
    p.set_defaults(func=_cmd_apply)

    p = sub.add_parser("kcol", help="decide switchable k-colouring")
    p.add_argument("graph")
    common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--witness")
    p.set_defaults(func=_cmd_kcol)

    p = sub.add_parser("hom", help="decide switchable homomorphism")
    p.add_argument("graph")
    p.add_argument("other")
    common(p)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--witness")
    p.set_defaults(func=_cmd_hom)

    p = sub.add_parser("gen", help="generate a random graph")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("oracle", help="dump reachable-class statistics")
    p.add_argument("graph")
    common(p)
    p.add_argument("--generators-only", action="store_true",
                   help="expand by generators instead of all elements")
    p.set_defaults(func=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_YES
    if getattr(args, "budget", 1) <= 0:
        print("error: --budget must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Exit codes: 0 success, 2 input or validation error, 3 verdict failure.
Structured output (``--format structured``) is one JSON object per line.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import allowseq, bounds, decomp, digraph, geom, kedges
from .errors import CrossnumError

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VERDICT = 3


class InputError(Exception):
    pass


def _load_sets(args) -> list[geom.PointSet]:
    if args.input is None:
        raise InputError("--input is required")
    path = Path(args.input)
    try:
        if args.bits is not None:
            if args.n is None:
                raise InputError("binary input needs --n (the format has no header)")
            return geom.read_order_type_db(path, args.n, args.bits)
        return geom.read_point_file(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _join(xs) -> str:
    return " ".join(str(x) for x in xs)


# ----------------------------------------------------------------------
# commands; each returns (records, text lines, exit code)

def cmd_analyze(args):
    records, text, code = [], [], EXIT_OK
    for idx, P in enumerate(_load_sets(args)):
        n = P.n
        E = kedges.edge_vector(P)
        cum = list(E.cumulative)
        bound = [kedges.lower_bound_leq_k(n, k) for k in range(n // 2)]
        tight = [c == b for c, b in zip(cum, bound)]
        rep = kedges.crossing_report(P)
        if not rep.agreement:
            code = EXIT_VERDICT
        records.append({
            "set": idx, "n": n, "hull": geom.convex_hull_size(P),
            "E_k": list(E.counts), "E_leq_k": cum, "bound": bound, "tight": tight,
            "cr": {"brute": rep.brute_count, "edges": rep.identity_count,
                   "cumulative": rep.cumulative_count},
            "agreement": rep.agreement,
        })
        text += [
            f"set {idx}",
            f"n {n}",
            f"hull {geom.convex_hull_size(P)}",
            f"E_k {_join(E.counts)}",
            f"E_<=k {_join(cum)}",
            f"bound {_join(bound)}",
            f"tight {_join('T' if t else 'F' for t in tight)}",
            f"cr {rep.brute_count} {rep.identity_count} {rep.cumulative_count} "
            f"{'OK' if rep.agreement else 'MISMATCH'}",
        ]
    return records, text, code


def cmd_circseq(args):
    records, text = [], []
    for idx, P in enumerate(_load_sets(args)):
        H = allowseq.from_point_set(P)
        rec = {"set": idx, "n": H.n, "initial": list(H.initial), "gates": list(H.gates),
               "N_k": list(allowseq.critical_profile(H).N)}
        if args.k is not None:
            rep = allowseq.is_perfect(H, args.k)
            rec["k"] = args.k
            rec["confined_steps"] = list(rep.confined_steps)
            rec["perfect"] = rep.perfect if rep.decided else None
        records.append(rec)
        text.append(allowseq.format_half_period(H).rstrip("\n"))
        if args.k is not None:
            status = "UNDECIDED (confined steps)" if not rep.decided else ("YES" if rep.perfect else "NO")
            text.append(f"# k={args.k} perfect: {status}")
        text.append("")
    return records, text[:-1], EXIT_OK


def cmd_decomp(args):
    records, text = [], []
    for idx, P in enumerate(_load_sets(args)):
        if P.n % 3:
            raise InputError(f"set {idx}: n={P.n} is not divisible by 3")
        H = allowseq.from_point_set(P)
        D = decomp.search_decomposition(H)
        rec = {"set": idx, "n": P.n, "decomposable": D is not None}
        text.append(f"set {idx}")
        if D is None:
            text.append("decomposable NO")
        else:
            stats = decomp.phase_stats(H, D)
            rec.update(D.to_dict())
            rec["bi"] = list(stats.bi)
            rec["mono"] = list(stats.mono)
            rec["middle_third"] = decomp.middle_third_check(H, D)
            text += [
                "decomposable YES",
                f"rotation {D.rotation}",
                f"A {_join(D.A)}",
                f"B {_join(D.B)}",
                f"C {_join(D.C)}",
                f"s {D.s}",
                f"t {D.t}",
                f"N_k^bi {_join(stats.bi)}",
                f"N_k^mono {_join(stats.mono)}",
                f"middle-third {'YES' if rec['middle_third'] else 'NO'}",
            ]
        records.append(rec)
    return records, text, EXIT_OK


def cmd_verify_main(args):
    records, text, code = [], [], EXIT_OK
    for idx, P in enumerate(_load_sets(args)):
        if P.n % 3:
            raise InputError(f"set {idx}: n={P.n} is not divisible by 3")
        verdict = decomp.main_theorem_check(P)
        if not verdict.holds:
            code = EXIT_VERDICT
        rec = {"set": idx, "n": P.n, "hypothesis": verdict.hypothesis,
               "failing_k": verdict.failing_k,
               "decomposable": None if not verdict.hypothesis else verdict.witness is not None}
        if verdict.witness is not None:
            rec["witness"] = verdict.witness.to_dict()
        records.append(rec)
        text.append(f"set {idx}: {verdict.summary()}")
    return records, text, code


def cmd_bounds(args):
    n = args.n
    if n is None or n < 4:
        raise InputError("--n must be given and at least 4")
    rows = [{"k": k, "lower_bound_leq_k": kedges.lower_bound_leq_k(n, k)} for k in range(n // 2)]
    text = ["k  E_<=k lower bound"] + [f"{r['k']}  {r['lower_bound_leq_k']}" for r in rows]
    rec = {"n": n, "levels": rows, "N_leq_nm1_lower": bounds.cumulative_lower_bound_nm1(n)}
    text.append(f"N_<={n // 2 - 1} lower bound {rec['N_leq_nm1_lower']}")
    if n >= 6:
        tight_nm2 = kedges.lower_bound_leq_k(n, n // 2 - 3)
        rec["halving_upper_if_tight"] = bounds.halving_upper_bound(n, tight_nm2)
        text.append(f"N_{n // 2} upper bound with tight N_<={n // 2 - 2}={tight_nm2}: "
                    f"{rec['halving_upper_if_tight']}")
    if n % 3 == 0:
        rec["bichromatic"] = [decomp.bichromatic_closed_form(n, k) for k in range(1, n // 2 + 1)]
        text.append(f"N_<=k^bi (3-decomposable) {_join(rec['bichromatic'])}")
    return [rec], text, EXIT_OK


def cmd_d0(args):
    if args.v is None or args.m is None:
        raise InputError("--v and --m are required")
    try:
        G = digraph.build_D0(args.v, args.m)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rec = {"v": args.v, "m": args.m, "count": len(G), "edges": [list(e) for e in G.sorted_edges()]}
    return [rec], digraph.format_digraph(G, args.m).rstrip("\n").splitlines(), EXIT_OK


def cmd_k30(args):
    rep = bounds.k30_report()
    return [rep.to_dict()], rep.render().splitlines(), EXIT_OK if rep.ok else EXIT_VERDICT


def cmd_gen(args):
    if args.n is None:
        raise InputError("--n is required")
    try:
        if args.tuned:
            if args.kind != "three-ray":
                raise InputError("--tuned only applies to three-ray")
            P = kedges.tuned_three_ray(args.n, args.seed, args.growth)
        else:
            P = geom.generate(args.kind, args.n, args.seed, args.growth)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rec = {"n": P.n, "points": [list(p) for p in P]}
    return [rec], geom.format_point_text([P]).rstrip("\n").splitlines(), EXIT_OK


COMMANDS = {
    "analyze": (cmd_analyze, "edge vector, (<=k)-edge bounds and crossing counts"),
    "circseq": (cmd_circseq, "circular sequence (half-period) of each set"),
    "decomp": (cmd_decomp, "search for a 3-decomposition of the circular sequence"),
    "verify-main": (cmd_verify_main, "tight (<=k)-edges imply 3-decomposability"),
    "bounds": (cmd_bounds, "table of (<=k)-edge and halving bounds for n"),
    "d0": (cmd_d0, "extremal digraph D0(v, m)"),
    "k30": (cmd_k30, "replay the K_30 crossing-number arithmetic"),
    "gen": (cmd_gen, "generate a fixture point set"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crossnum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=("text", "structured"), default="text")
        if name in ("analyze", "circseq", "decomp", "verify-main"):
            p.add_argument("--input", help="point file (text format, or binary with --bits)")
            p.add_argument("--bits", type=int, choices=(8, 16))
            p.add_argument("--n", type=int, help="points per set for binary input")
        if name == "circseq":
            p.add_argument("--k", type=int, help="also report perfectness for this k")
        if name == "bounds":
            p.add_argument("--n", type=int)
        if name == "d0":
            p.add_argument("--v", type=int)
            p.add_argument("--m", type=int)
        if name == "gen":
            p.add_argument("kind", choices=geom.GENERATORS)
            p.add_argument("--n", type=int)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--growth", type=int, default=8)
            p.add_argument("--tuned", action="store_true",
                           help="three-ray only: retry until the tight edge vector is confirmed")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        records, text, code = func(args)
    except (InputError, CrossnumError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "structured":
        out = "".join(json.dumps({"command": args.command, **r}, sort_keys=True) + "\n" for r in records)
    else:
        out = "\n".join(text) + "\n"
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``mrhsglue gen | deficit | solve | simulate``.

Exit status: 0 on success, 2 on invalid input, 1 on internal failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

from . import constructions as cons
from .deficit import (
    DEFAULT_EXACT_CAP,
    Growth,
    VectorFamily,
    min_deficit_bruteforce,
    min_deficit_exact,
    min_deficit_greedy,
    prefix_deficit,
    universal_bound,
)
from .errors import EnumerationTooLarge, MrhsError
from .formats import dump_family, dump_system, parse_family, parse_system, read_text, sniff, write_text
from .harness import CSV_HELP, ORDER_STRATEGIES, choose_order, matrices_family, simulate
from .linalg import Mat
from .mrhs import (
    DEFAULT_ENUM_CAP,
    brute_force_solutions,
    extract_solutions,
    predicted_cost_bound,
    solve_system,
)


def _emit(text: str, out: str | None) -> None:
    if out:
        write_text(out, text)
    else:
        sys.stdout.write(text)


def _say(args, line: str) -> None:
    # stdout carries the generated file unless --out is given
    print(line, file=sys.stdout if args.out else sys.stderr)


def _load_any(path: str):
    text = read_text(sys.stdin if path == "-" else path)
    if sniff(text) == "system":
        return parse_system(text)
    return parse_family(text)


def _as_family(obj) -> VectorFamily:
    if isinstance(obj, VectorFamily):
        return obj
    return matrices_family([e.a for e in obj.equations])


# ---------------------------------------------------------------------------
# gen


def cmd_gen(args) -> int:
    kind = args.kind
    comments = [f"generated by: gen {kind}"]
    if args.system and args.seed is None:
        raise MrhsError("--system draws random right-hand sides and needs --seed")
    if kind == "vandermonde":
        fam = cons.vandermonde_family(args.n, args.t, args.q)
    elif kind == "gv":
        _require_seed(args)
        w, fam = cons.gv_pair_family(args.n, args.d, args.seed)
        comments.append(f"gv N={2 * args.n} r={w.r} d={w.d} verified_up_to={w.verified_up_to}")
        _say(args, f"gv witness: {2 * args.n} rows in GF(2)^{args.n}, greedy part r={w.r}, "
                   f"no dependent subset of size <= {w.verified_up_to} (exhaustive check passed); "
                   f"any {(args.d - 1) // 2} pairs independent")
    elif kind == "thm10":
        _require_seed(args)
        t10 = cons.theorem10_family(args.n, args.seed)
        fam = t10.family
        comments.append("sigma " + " ".join(map(str, t10.sigma)))
        comments.append("tau " + " ".join(map(str, t10.tau)))
    elif kind == "random":
        _require_seed(args)
        fam = cons.random_family(args.n, args.m or args.n, args.t, args.q or 2, args.seed)
    else:  # pragma: no cover - argparse restricts choices
        raise MrhsError(f"unknown generator {kind}")
    if args.system:
        system, reduced = cons.family_to_system(fam, args.seed)
        if reduced:
            comments.append("rank-reduced sets: " + " ".join(map(str, reduced)))
        _emit(dump_system(system, comments), args.out)
    else:
        _emit(dump_family(fam, comments), args.out)
    line = (f"n={fam.n} m={fam.m} t={fam.t} q={fam.field.q} "
            f"deficit_bound={universal_bound(fam.n, fam.t)}")
    _say(args, line)
    return 0


def _require_seed(args):
    if args.seed is None:
        raise MrhsError(f"gen {args.kind} is randomised and needs --seed")


# ---------------------------------------------------------------------------
# deficit


def cmd_deficit(args) -> int:
    fam = _as_family(_load_any(args.file))
    mode = Growth(args.mode)
    if args.strategy == "exact":
        rep = min_deficit_exact(fam, mode, args.cap)
    elif args.strategy == "greedy":
        rep = min_deficit_greedy(fam, mode)
    elif args.strategy == "brute":
        rep = min_deficit_bruteforce(fam, mode)
    else:
        rep = prefix_deficit(fam, mode, None)
    print(f"m={fam.m} n={fam.n} t={fam.t} q={fam.field.q} mode={mode.value} strategy={args.strategy}")
    print(f"max_deficit {rep.max_deficit}")
    print(f"argmax_k {rep.argmax_k}")
    print("permutation " + " ".join(map(str, rep.permutation)))
    if fam.m == fam.n:
        print(f"bound {universal_bound(fam.n, fam.t)}")
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "set", "growth", "deficit"])
        for (k, g, d), i in zip(rep.profile, rep.permutation):
            w.writerow([k, i, g, d])
        write_text(args.csv, buf.getvalue())
    return 0


# ---------------------------------------------------------------------------
# solve


def cmd_solve(args) -> int:
    system = parse_system(read_text(sys.stdin if args.file == "-" else args.file))
    if args.order == "random" and args.seed is None:
        raise MrhsError("--order random needs --seed")
    order = choose_order([e.a for e in system.equations], args.order, args.seed)
    final, trace = solve_system(system, order)
    q = system.field.q
    print(f"order {' '.join(map(str, order))}")
    try:
        sols = extract_solutions(final, args.cap)
    except EnumerationTooLarge as exc:
        sols = None
        print(f"enumeration skipped: {exc}")
        print(f"final equation: t={final.t} |S|={len(final.s)} "
              f"solutions={len(final.s) * q ** (system.n - final.t)}")
    if sols is not None:
        print(f"solutions {len(sols)}")
        if len(sols) <= 100:
            for x in sols:
                print("  " + " ".join(map(str, x)))
    print("step k rank s_left s_right s_out cost")
    for i, st in enumerate(trace.steps, start=1):
        print(f"{i} {st.k} {st.rank} {st.s_left} {st.s_right} {st.s_out} {st.cost}"
              + (" skipped" if st.skipped else ""))
    bound = predicted_cost_bound(system, order)
    print(f"total_cost {trace.total}")
    print(f"predicted_bound {bound!r}")
    print(f"ratio {trace.total / bound!r}")
    if args.trace_csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "k", "rank", "s_left", "s_right", "s_out", "cost", "skipped"])
        for i, st in enumerate(trace.steps, start=1):
            w.writerow([i, st.k, st.rank, st.s_left, st.s_right, st.s_out, st.cost, int(st.skipped)])
        write_text(args.trace_csv, buf.getvalue())
    if args.verify == "brute":
        if sols is None:
            raise MrhsError("--verify brute needs the solutions to be enumerated")
        expected = brute_force_solutions(system)
        if expected != sols:
            print("verify brute: MISMATCH", file=sys.stderr)
            return 1
        print(f"verify brute: OK ({len(expected)} solutions)")
    return 0


# ---------------------------------------------------------------------------
# simulate


def _sim_matrices(args) -> list[Mat]:
    if args.system:
        system = parse_system(read_text(args.system))
        return [e.a for e in system.equations]
    if args.gen is None:
        raise MrhsError("give either --system FILE or --gen KIND")
    if args.n is None:
        raise MrhsError(f"--gen {args.gen} needs --n")
    if args.gen == "vandermonde":
        fam = cons.vandermonde_family(args.n, args.t, args.q)
    elif args.gen == "random":
        fam = cons.random_family(args.n, args.m or args.n, args.t, args.q or 2, args.family_seed)
    elif args.gen == "gv":
        _, fam = cons.gv_pair_family(args.n, args.d, args.family_seed)
    else:
        fam = cons.theorem10_family(args.n, args.family_seed).family
    return [Mat(cons.independent_subset(s, fam.field), fam.field, fam.n) for s in fam.sets]


def cmd_simulate(args) -> int:
    mats = _sim_matrices(args)
    order = choose_order(mats, args.order, args.seed)
    sim = simulate(mats, args.trials, args.seed, order, workers=args.workers)
    if args.csv:
        write_text(args.csv, sim.to_csv())
    print(f"trials={args.trials} seed={args.seed} m={sim.m} q={sim.q} order={' '.join(map(str, order))}")
    print("k r_k predicted_size mean_size rel_err")
    for k, p, s, err in sim.size_errors():
        print(f"{k} {sim.ranks[k - 1]} {p!r} {s!r} {err:.4f}")
    print(f"max_excess {max(r - k for k, r in enumerate(sim.ranks, start=1))}")
    print(f"mean_cost {sim.mean_cost!r}")
    print(f"predicted_bound {sim.predicted_bound!r}")
    print(f"mean_ratio {sim.mean_ratio!r}")
    print(f"max_ratio {sim.max_ratio!r}")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mrhsglue", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate a family or system file")
    g.add_argument("kind", choices=["vandermonde", "gv", "thm10", "random"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--t", type=int, default=2)
    g.add_argument("--m", type=int)
    g.add_argument("--q", type=int)
    g.add_argument("--d", type=int, default=5)
    g.add_argument("--seed", type=int)
    g.add_argument("--system", action="store_true", help="emit an MRHS system with random right-hand sides")
    g.add_argument("--out", help="output path (default stdout)")
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("deficit", help="min over orderings of the max prefix deficit")
    d.add_argument("file", help="family or system file, '-' for stdin")
    d.add_argument("--strategy", choices=["exact", "greedy", "brute", "given"], default="exact")
    d.add_argument("--mode", choices=[mode.value for mode in Growth], default="rank")
    d.add_argument("--cap", type=int, default=DEFAULT_EXACT_CAP, help="largest m for the exact DP")
    d.add_argument("--csv", help="write the prefix profile as CSV (k,set,growth,deficit)")
    d.set_defaults(func=cmd_deficit)

    s = sub.add_parser("solve", help="solve an MRHS system by gluing")
    s.add_argument("file")
    s.add_argument("--order", choices=ORDER_STRATEGIES, default="given")
    s.add_argument("--seed", type=int)
    s.add_argument("--cap", type=int, default=DEFAULT_ENUM_CAP,
                   help="largest coset size q^(n-t) to enumerate")
    s.add_argument("--verify", choices=["brute"])
    s.add_argument("--trace-csv", help="write the glue trace as CSV")
    s.set_defaults(func=cmd_solve)

    m = sub.add_parser("simulate", help="Monte Carlo cost runs with fresh right-hand sides",
                       epilog=CSV_HELP)
    m.add_argument("--system", help="take the matrices from this system file")
    m.add_argument("--gen", choices=["vandermonde", "random", "gv", "thm10"])
    m.add_argument("--n", type=int)
    m.add_argument("--m", type=int)
    m.add_argument("--t", type=int, default=2)
    m.add_argument("--q", type=int)
    m.add_argument("--d", type=int, default=5)
    m.add_argument("--family-seed", type=int, default=0, help="seed for the generated matrices")
    m.add_argument("--trials", type=int, default=1000)
    m.add_argument("--seed", type=int, required=True)
    m.add_argument("--order", choices=ORDER_STRATEGIES, default="given")
    m.add_argument("--workers", type=int, default=1)
    m.add_argument("--csv", help="write per-trial rows plus a summary row")
    m.set_defaults(func=cmd_simulate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "trials", 1) < 1:
        parser.error("--trials must be >= 1")
    try:
        return args.func(args)
    except (MrhsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

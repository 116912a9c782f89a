"""Command-line interface: ``catrand <command> ...``.

Exit codes: 0 ok, 1 verification failed, 2 parse/usage error, 3 invalid
object, 4 classification error, 5 dimension mismatch, 6 resource cap.
Reports go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Optional, Sequence

import numpy as np

from catrand import fileio
from catrand.bipartite import (
    EXTENDED,
    STRICT,
    dcd,
    delocalized_catalytic_entropy,
    dreo_spectrum,
    is_tq_tq,
    least_disordered_spectrum,
)
from catrand.catalysis import construct_dreo_plan, run_delocalized_catalysis, simulate_chain
from catrand.channels import channel_catalytic_entropy, map_entropy, supertrace
from catrand.errors import CatrandError
from catrand.linalg import DEFAULT_TOL
from catrand.states import catalytic_decomposition, catalytic_renyi_entropy, renyi_entropy, reo_spectrum
from catrand.suites import REGISTRY, run_suite

DEFAULT_ALPHAS = (0.0, 0.5, 1.0, 2.0, math.inf)
EXECUTE_TOL = 1e-8


def parse_alphas(text: str) -> tuple[float, ...]:
    out = []
    for tok in text.split(","):
        tok = tok.strip().lower()
        if not tok:
            continue
        try:
            a = math.inf if tok in ("inf", "infinity") else float(tok)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a Renyi order: {tok!r}")
        if a < 0 or math.isnan(a):
            raise argparse.ArgumentTypeError(f"Renyi orders must be non-negative, got {tok!r}")
        out.append(a)
    if not out:
        raise argparse.ArgumentTypeError("empty alpha list")
    return tuple(out)


def alpha_label(a: float) -> str:
    return "inf" if math.isinf(a) else f"{a:g}"


def bits(x: float) -> float:
    return round(float(x), 6) + 0.0


def _vec(v) -> list[float]:
    return [round(float(x), 12) + 0.0 for x in v]


def _emit(report: dict, as_json: bool, text: str):
    if as_json:
        sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)


def _fmt(x: float) -> str:
    return f"{x:.6f}"


# --- commands -------------------------------------------------------------------

def cmd_analyze_state(args) -> int:
    rho = fileio.load_state(args.path)
    dec = catalytic_decomposition(rho, args.tol)
    spec = rho.spectrum()
    blocks = [{"value": round(b.value, 12), "rank": b.rank, "sector": b.sector} for b in dec.blocks]
    ent = {alpha_label(a): {"S": bits(renyi_entropy(spec, a)), "S_cat": bits(catalytic_renyi_entropy(dec, a))}
           for a in args.alpha}
    reo = reo_spectrum(dec)
    report = {"dim": rho.dim, "blocks": blocks, "entropies": ent, "reo_spectrum": _vec(reo), "reo_dim": int(reo.size)}
    lines = [f"dim {rho.dim}", "catalytic decomposition:", "  lambda        rank  sector"]
    lines += [f"  {b['value']:<12.6g}  {b['rank']:<4d}  {b['sector']}" for b in blocks]
    lines += ["alpha      S          S_cat"]
    lines += [f"{k:<10} {_fmt(v['S']):<10} {_fmt(v['S_cat'])}" for k, v in ent.items()]
    lines += [f"REO spectrum ({reo.size}): " + " ".join(f"{x:.6g}" for x in reo)]
    _emit(report, args.json, "\n".join(lines) + "\n")
    return 0


def _ess_doc(ess) -> list[dict]:
    return [{"dim": b.dim, "kind": b.kind.value, "weight": round(b.weight, 12),
             "sector": b.sector, "extract_dim": b.extract_dim} for b in ess.blocks]


def cmd_analyze_bipartite(args) -> int:
    src = fileio.load_bipartite(args.path, args.dim_a, args.dim_b)
    d = dcd(src, args.tol, args.mode, args.seed)
    tq = is_tq_tq(src, args.tol)
    spec = dreo_spectrum(d)
    ent = {alpha_label(a): bits(delocalized_catalytic_entropy(d, a)) for a in args.alpha}
    least = least_disordered_spectrum(src, args.tol, args.mode)
    report = {
        "dims": list(src.dims),
        "mode": args.mode,
        "essential_a": _ess_doc(d.ess_a),
        "essential_b": _ess_doc(d.ess_b),
        "tq_tq": tq,
        "dcd": [{"i": c.i, "j": c.j, "weight": round(c.weight, 12)} for c in d.cells],
        "dreo_spectrum": _vec(spec),
        "entropies": ent,
        "least_disordered": _vec(least),
    }
    lines = [f"dims {src.dim_a} x {src.dim_b} ({args.mode} mode)"]
    for side, ess in (("A", d.ess_a), ("B", d.ess_b)):
        lines.append(f"essential decomposition of {side}:")
        lines += [f"  block {k}: dim {b.dim}, type {b.kind.value}, weight {b.weight:.6f}" for k, b in enumerate(ess.blocks)]
    lines.append(f"TQ-TQ: {'yes' if tq else 'no'}")
    lines.append("DCD cells: " + ", ".join(f"({c.i},{c.j}) p={c.weight:.6f}" for c in d.cells))
    lines.append(f"DREO spectrum ({spec.size}): " + " ".join(f"{x:.6g}" for x in spec))
    lines += [f"S_cat,cat[{k}] = {_fmt(v)}" for k, v in ent.items()]
    lines.append("least disordered spectrum on A: " + " ".join(f"{x:.6f}" for x in least))
    _emit(report, args.json, "\n".join(lines) + "\n")
    return 0


def cmd_analyze_channel(args) -> int:
    ch = fileio.load_channel(args.path)
    ent = {alpha_label(a): bits(channel_catalytic_entropy(ch, a, tol=args.tol, mode=args.mode)) for a in args.alpha}
    choi_spec = np.sort(np.clip(np.linalg.eigvalsh(ch.choi), 0, None))[::-1]
    report = {"dim_in": ch.dim_in, "dim_out": ch.dim_out, "supertrace": bits(supertrace(ch)),
              "map_entropy": bits(map_entropy(ch)), "entropies": ent, "choi_spectrum": _vec(choi_spec)}
    lines = [f"channel {ch.dim_in} -> {ch.dim_out}", f"supertrace {_fmt(report['supertrace'])}",
             f"map entropy {_fmt(report['map_entropy'])}"]
    lines += [f"S_cat[{k}] = {_fmt(v)}" for k, v in ent.items()]
    lines.append("Choi spectrum: " + " ".join(f"{x:.6g}" for x in choi_spec))
    _emit(report, args.json, "\n".join(lines) + "\n")
    return 0


def cmd_construct(args) -> int:
    src = fileio.load_bipartite(args.path, args.dim_a, args.dim_b)
    d = dcd(src, args.tol, STRICT, args.seed)
    plan = construct_dreo_plan(d)
    fileio.write_json(args.out, fileio.plan_doc(plan))
    s1 = delocalized_catalytic_entropy(d, 1.0)
    if s1 <= 1e-9:
        print("warning: zero extractable randomness; the plan is trivial", file=sys.stderr)
    a0, b0, a1, b1 = plan.dims
    report = {"out": str(args.out), "dims": {"dim_a0": a0, "dim_b0": b0, "dim_a1": a1, "dim_b1": b1},
              "entropy_1": bits(s1)}
    _emit(report, args.json,
          f"wrote {args.out}: targets {a0} x {a1} for catalyst {b0} x {b1}; S_cat,cat[1] = {_fmt(s1)}\n")
    return 0


def cmd_execute(args) -> int:
    plan = fileio.load_plan(args.plan)
    src = fileio.load_bipartite(args.source, args.dim_a or plan.dims[1], args.dim_b or plan.dims[3])
    res = run_delocalized_catalysis(plan, None, src)
    ok = res.deviation <= EXECUTE_TOL
    ent = {alpha_label(a): bits(res.entropy(a)) for a in args.alpha}
    report = {"status": "PASS" if ok else "FAIL", "deviation": float(f"{res.deviation:.3e}"), "entropies": ent,
              "output_dim": plan.dims[0] * plan.dims[2]}
    lines = [f"{'PASS' if ok else 'FAIL'}: catalyst deviation {res.deviation:.3e}"]
    lines += [f"S[{k}] = {_fmt(v)}" for k, v in ent.items()]
    _emit(report, args.json, "\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_chain(args) -> int:
    rho = fileio.load_state(args.path)
    trace = simulate_chain(rho, args.steps, args.mode, args.alpha[0])
    rows = [(n, d, bits(s)) for n, d, s in trace.steps]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["step", "dim", "entropy"])
    for n, d, s in rows:
        w.writerow([n, d, f"{s:.6f}"])
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            fh.write(buf.getvalue())
    report = {"mode": args.mode, "alpha": alpha_label(args.alpha[0]),
              "steps": [{"step": n, "dim": d, "entropy": s} for n, d, s in rows]}
    _emit(report, args.json, buf.getvalue())
    return 0


def cmd_verify(args) -> int:
    results = run_suite(args.suite, args.seed, args.trials)
    ok = all(r.passed for r in results)
    report = {"passed": ok, "seed": args.seed, "suites": [r.to_dict() for r in results]}
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  ({r.seconds:.2f} s)")
        lines += [f"      failed: {f}" for f in r.failures]
    lines.append("all properties hold" if ok else "verification FAILED")
    _emit(json.loads(json.dumps(report, default=_json_default)), args.json, "\n".join(lines) + "\n")
    return 0 if ok else 1


def _json_default(x):
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    return str(x)


# --- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="catrand", description="Catalytic randomness analysis.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, alphas=True, dims=False, mode=False):
        sp.add_argument("--json", action="store_true", help="emit one JSON document on stdout")
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL, help="classification tolerance")
        sp.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
        if alphas:
            sp.add_argument("--alpha", type=parse_alphas, default=DEFAULT_ALPHAS,
                            help="comma-separated Renyi orders, 'inf' allowed (default 0,0.5,1,2,inf)")
        if dims:
            sp.add_argument("--dim-a", type=int, default=None)
            sp.add_argument("--dim-b", type=int, default=None)
        if mode:
            sp.add_argument("--mode", choices=(STRICT, EXTENDED), default=STRICT)

    sp = sub.add_parser("analyze-state", help="catalytic decomposition and entropies of a state")
    sp.add_argument("path")
    common(sp)
    sp.set_defaults(func=cmd_analyze_state)

    sp = sub.add_parser("analyze-bipartite", help="essential decompositions, DCD, DREO of a bipartite state")
    sp.add_argument("path")
    common(sp, dims=True, mode=True)
    sp.set_defaults(func=cmd_analyze_bipartite)

    sp = sub.add_parser("analyze-channel", help="supertrace, map entropy and catalytic entropies of a channel")
    sp.add_argument("path")
    common(sp, mode=True)
    sp.set_defaults(func=cmd_analyze_channel)

    sp = sub.add_parser("construct", help="write the DREO-achieving catalysis plan for a bipartite source")
    sp.add_argument("path")
    sp.add_argument("--out", required=True)
    common(sp, alphas=False, dims=True)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("execute", help="run a plan on its source and check the catalyst comes back")
    sp.add_argument("plan")
    sp.add_argument("source")
    common(sp, dims=True)
    sp.set_defaults(func=cmd_execute)

    sp = sub.add_parser("chain", help="simulate a randomness chain")
    sp.add_argument("path")
    sp.add_argument("--steps", type=int, default=2)
    sp.add_argument("--mode", choices=("quantum", "classical"), default="quantum")
    sp.add_argument("--csv", default=None, help="also write the trace to this CSV file")
    common(sp)
    sp.set_defaults(func=cmd_chain, alpha=(1.0,))

    sp = sub.add_parser("verify", help="run property suites")
    sp.add_argument("suite", choices=tuple(REGISTRY) + ("all",))
    sp.add_argument("--trials", type=int, default=None, help="override each suite's sample count")
    common(sp, alphas=False)
    sp.set_defaults(func=cmd_verify, seed=42)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CatrandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

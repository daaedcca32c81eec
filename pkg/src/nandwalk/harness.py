"""Command-line harness: single runs, sweeps, bound scans and diagnostics.

Subcommands:
  eval          classical evaluation of an instance
  scatter       y(E)/T(E) table with reflect/transmit bound checks
  run           one packet-scattering decision run (JSON verdict)
  sweep         gamma x instance grid of runs (CSV)
  embed-parity  build the parity embedding and verify it by brute force
  diagnose      packet-spectrum inequality checks (CSV)

Exit status: 0 success, 1 a verification failed, 2 usage error.  Output
files embed the configuration hash, package version and column schema.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .nand_core import (
    TreeInput,
    embed_parity,
    eval_nand,
    parity_blocks,
    parse_input,
    randomized_eval,
)
from .scattering import energy_grid, scan_bounds, CSV_COLUMNS
from .dynamics import RunConfig, run_algorithm
from .spectral import (
    dispersion_smallness,
    packet_spectrum,
    parseval_total,
    tail_mass,
)

SWEEP_COLUMNS = (
    "N", "instance_id", "gamma", "L", "M", "t_run",
    "p_right", "T0_sq", "decision", "nand", "correct",
)
DIAG_COLUMNS = ("L", "eps", "quantity", "value", "bound", "pass")


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved parameters of one harness invocation; hashable for output
    provenance."""

    command: str
    params: dict

    def canonical_json(self) -> str:
        return json.dumps({"command": self.command, **self.params}, sort_keys=True)

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()[:16]


def _header_lines(config: ExperimentConfig, schema) -> list:
    return [
        f"# config_hash: {config.digest}",
        f"# version: {__version__}",
        f"# schema: {','.join(schema)}",
        f"# generated_at: {datetime.now(timezone.utc).isoformat()}",
    ]


def _json_payload(config: ExperimentConfig, schema, rows, extra=None) -> str:
    payload = {
        "config_hash": config.digest,
        "version": __version__,
        "schema": list(schema),
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "rows": rows,
    }
    if extra:
        payload.update(extra)
    return json.dumps(payload, sort_keys=True) + "\n"


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get("NANDWALK_WORKERS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------


def _cmd_eval(args) -> int:
    tree = parse_input(args.input)
    value = eval_nand(tree)
    if args.format == "json":
        payload = {"bits": tree.to_text(), "n": tree.depth, "value": value}
        if args.seed is not None:
            trace = randomized_eval(tree, args.seed)
            payload["randomized_value"] = trace.value
            payload["queries"] = trace.queries
        print(json.dumps(payload, sort_keys=True))
    else:
        print(value)
    return 0


# ---------------------------------------------------------------------------
# scatter
# ---------------------------------------------------------------------------


def _cmd_scatter(args) -> int:
    tree = parse_input(args.input)
    if args.emax == "auto":
        grid = energy_grid(tree.n_leaves, points=args.points)
    else:
        emax = float(args.emax)
        grid = np.geomspace(1e-8, emax, args.points)
    report = scan_bounds(tree, grid)
    config = ExperimentConfig(
        command="scatter",
        params={"input": tree.to_text(), "emax": args.emax, "points": args.points},
    )
    if args.format == "json":
        rows = [dataclasses.asdict(r) for r in report.rows]
        text = _json_payload(config, CSV_COLUMNS, rows)
    else:
        text = "\n".join(_header_lines(config, CSV_COLUMNS)) + "\n" + report.to_csv()
    _emit(text, args.out)
    if not report.all_pass:
        print(f"{len(report.violations)} bound violations", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# run
# ---------------------------------------------------------------------------


def _cmd_run(args) -> int:
    tree = parse_input(args.input)
    if len(args.gamma) != 1:
        raise ValueError("run takes a single --gamma; use sweep for several")
    if args.format == "csv":
        raise ValueError("run emits a json verdict; csv applies to scatter/sweep/diagnose")
    config = RunConfig.for_tree(
        tree.n_leaves,
        gamma=args.gamma[0],
        m_factor=args.m_factor,
        propagator=args.propagator,
        tolerance=args.tol,
    )
    verdict = run_algorithm(tree, config)
    exp = ExperimentConfig(
        command="run",
        params={
            "input": tree.to_text(),
            "gamma": args.gamma[0],
            "m_factor": args.m_factor,
            "propagator": args.propagator,
            "tol": args.tol,
        },
    )
    payload = json.loads(verdict.to_json())
    payload["config_hash"] = exp.digest
    payload["version"] = __version__
    _emit(json.dumps(payload, sort_keys=True) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def _sweep_task(task):
    bits, gamma, m_factor, propagator, tol = task
    tree = TreeInput.from_bits(bits)
    config = RunConfig.for_tree(
        tree.n_leaves, gamma=gamma, m_factor=m_factor,
        propagator=propagator, tolerance=tol,
    )
    verdict = run_algorithm(tree, config)
    nand = eval_nand(tree)
    return {
        "N": tree.n_leaves,
        "gamma": gamma,
        "L": config.L,
        "M": config.M,
        "t_run": config.t_run,
        "p_right": verdict.p_right,
        "T0_sq": verdict.analytic_T0_sq,
        "decision": verdict.decision,
        "nand": nand,
        "correct": int(verdict.decision == nand),
    }


def sweep(n_leaves: int, gammas, instances: int, seed: int,
          m_factor: int = 3, propagator: str = "auto", tol: float = 1e-12):
    """Run the gamma x instance grid; returns (rows, summary).

    Rows are ordered by (instance, gamma) grid index regardless of worker
    scheduling; instances are drawn once from the seed.
    """
    if not gammas or instances < 1:
        raise ValueError("sweep grid is empty")
    rng = np.random.default_rng(seed)
    bit_sets = [tuple(int(b) for b in rng.integers(0, 2, n_leaves)) for _ in range(instances)]
    tasks = []
    ids = []
    for inst_id, bits in enumerate(bit_sets):
        for gamma in gammas:
            tasks.append((bits, float(gamma), m_factor, propagator, tol))
            ids.append(inst_id)
    workers = _worker_count()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_task, tasks))
    else:
        results = [_sweep_task(t) for t in tasks]
    rows = []
    for inst_id, rec in zip(ids, results):
        rec = dict(rec)
        rec["instance_id"] = inst_id
        rows.append(rec)
    summary = {}
    for gamma in gammas:
        sel = [r for r in rows if r["gamma"] == float(gamma)]
        errs = [abs(r["p_right"] - r["T0_sq"]) for r in sel]
        summary[float(gamma)] = {
            "error_rate": 1.0 - sum(r["correct"] for r in sel) / len(sel),
            "mean_abs_err": sum(errs) / len(errs),
        }
    gs = sorted(summary)
    if len(gs) >= 2:
        xs = np.log(gs)
        ys = np.log([max(summary[g]["mean_abs_err"], 1e-300) for g in gs])
        summary["fit_exponent"] = float(np.polyfit(xs, ys, 1)[0])
    return rows, summary


def _cmd_sweep(args) -> int:
    exp = ExperimentConfig(
        command="sweep",
        params={
            "n": args.n, "gamma": list(args.gamma), "instances": args.instances,
            "seed": args.seed, "m_factor": args.m_factor,
            "propagator": args.propagator, "tol": args.tol,
        },
    )
    rows, summary = sweep(
        args.n, list(args.gamma), args.instances, args.seed,
        m_factor=args.m_factor, propagator=args.propagator, tol=args.tol,
    )
    if args.format == "json":
        json_summary = {f"{g:g}": summary[g] for g in summary if isinstance(g, float)}
        if "fit_exponent" in summary:
            json_summary["fit_exponent"] = summary["fit_exponent"]
        _emit(_json_payload(exp, SWEEP_COLUMNS, rows, {"summary": json_summary}), args.out)
        return 0
    lines = _header_lines(exp, SWEEP_COLUMNS)
    lines.append(",".join(SWEEP_COLUMNS))
    for r in rows:
        lines.append(
            f"{r['N']},{r['instance_id']},{r['gamma']:g},{r['L']},{r['M']},"
            f"{r['t_run']:g},{r['p_right']:.12e},{r['T0_sq']:g},"
            f"{r['decision']},{r['nand']},{r['correct']}"
        )
    for gamma in sorted(k for k in summary if isinstance(k, float)):
        s = summary[gamma]
        lines.append(
            f"# summary gamma={gamma:g}: error_rate={s['error_rate']:.6f} "
            f"mean_abs_err={s['mean_abs_err']:.6e}"
        )
    if "fit_exponent" in summary:
        lines.append(f"# summary fit: mean_abs_err ~ gamma^{summary['fit_exponent']:.3f}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# embed-parity
# ---------------------------------------------------------------------------


def _cmd_embed_parity(args) -> int:
    if args.format == "csv":
        raise ValueError("embed-parity emits a json report; csv applies to scatter/sweep/diagnose")
    k = args.k
    exhaustive = k <= 12
    assignments = (
        [[(m >> j) & 1 for j in range(k)] for m in range(2 ** k)]
        if exhaustive
        else [list(np.random.default_rng(s).integers(0, 2, k)) for s in range(256)]
    )
    failures = 0
    for x in assignments:
        tree = embed_parity(x)
        if eval_nand(tree) != (1 + sum(x)) % 2:
            failures += 1
    payload = {
        "k": k,
        "n_leaves": k * k,
        "assignments_checked": len(assignments),
        "exhaustive": exhaustive,
        "failures": failures,
        "verified": failures == 0,
        "blocks": [list(b) for b in parity_blocks(k)],
    }
    if args.bits is not None:
        x = [int(c) for c in args.bits]
        payload["instance"] = embed_parity(x).to_text()
        payload["instance_value"] = eval_nand(embed_parity(x))
    _emit(json.dumps(payload, sort_keys=True) + "\n", args.out)
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------
# diagnose
# ---------------------------------------------------------------------------


def _cmd_diagnose(args) -> int:
    exp = ExperimentConfig(
        command="diagnose", params={"L": list(args.L), "eps": list(args.eps)},
    )
    records = []
    ok = True

    def row(L, eps, quantity, value, bound, passed):
        nonlocal ok
        ok = ok and passed
        records.append({"L": L, "eps": eps, "quantity": quantity,
                        "value": value, "bound": bound, "pass": passed})

    for L in args.L:
        total = parseval_total(L)
        row(L, None, "band_total", total, 1.0, abs(total - 1.0) < 1e-10)
        for eps in args.eps:
            tail = tail_mass(L, eps)
            row(L, eps, "tail_mass", tail, math.pi / (L * eps), tail < math.pi / (L * eps))
            phis = np.linspace(-eps, eps, 1001)
            _, B = packet_spectrum(L, phis)
            worst = float(np.max(np.abs(B) ** 2))
            b_bound = 1.0 / (L * math.cos(eps / 2.0) ** 2)
            row(L, eps, "alt_peak", worst, b_bound, worst < b_bound)
    # cubic-dispersion smallness applies to the algorithm's own pairing of
    # packet length and energy window: L = gamma sqrt(N), eps = 1/(16 sqrt(N))
    for gamma in (16.0, 64.0, 256.0):
        for n_leaves in (4, 1024):
            root = math.sqrt(n_leaves)
            small = dispersion_smallness(gamma * root, 1.0 / (16.0 * root))
            row(int(gamma * root), 1.0 / (16.0 * root), "cubic_dispersion",
                small, 0.1, small < 0.1)
    if args.format == "json":
        text = _json_payload(exp, DIAG_COLUMNS, records)
    else:
        lines = _header_lines(exp, DIAG_COLUMNS)
        lines.append(",".join(DIAG_COLUMNS))
        for r in records:
            eps_str = "nan" if r["eps"] is None else f"{r['eps']:g}"
            lines.append(
                f"{r['L']},{eps_str},{r['quantity']},{r['value']:.12e},"
                f"{r['bound']:.12e},{'true' if r['pass'] else 'false'}"
            )
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if not ok:
        print("diagnostic inequality violated", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nandwalk",
        description="NAND-tree evaluation by wave-packet scattering on a tree+runway graph",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_out=True):
        if with_out:
            p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=None,
                       help="output format (subcommand default if omitted)")

    p = sub.add_parser("eval", help="classical NAND-tree evaluation",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--input", required=True, help="leaf bit string, length a power of two")
    p.add_argument("--seed", type=int, default=None,
                   help="also run the randomized evaluator with this seed (json output)")
    add_common(p, with_out=False)
    p.set_defaults(func=_cmd_eval, format="text")

    p = sub.add_parser("scatter", help="y(E)/T(E) table with bound checks",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--input", required=True)
    p.add_argument("--emax", default="auto",
                   help="'auto' for 1/(16 sqrt(N)), or an explicit upper energy")
    p.add_argument("--points", type=int, default=64)
    add_common(p)
    p.set_defaults(func=_cmd_scatter, format="csv")

    p = sub.add_parser("run", help="single decision run",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--input", required=True)
    p.add_argument("--gamma", type=float, nargs="+", default=[16.0],
                   help="packet-length multiplier L = gamma sqrt(N)")
    p.add_argument("--m-factor", type=int, default=3, help="half-runway M = m_factor * L")
    p.add_argument("--propagator", choices=("auto", "cheb", "exact"), default="auto")
    p.add_argument("--tol", type=float, default=1e-12)
    add_common(p)
    p.set_defaults(func=_cmd_run, format="json")

    p = sub.add_parser("sweep", help="gamma x instance grid of runs",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--n", type=int, required=True, help="number of leaves N (power of two)")
    p.add_argument("--gamma", type=float, nargs="+", default=[4.0, 16.0, 64.0])
    p.add_argument("--instances", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m-factor", type=int, default=3)
    p.add_argument("--propagator", choices=("auto", "cheb", "exact"), default="auto")
    p.add_argument("--tol", type=float, default=1e-12)
    add_common(p)
    p.set_defaults(func=_cmd_sweep, format="csv")

    p = sub.add_parser("embed-parity", help="build and verify the parity embedding",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--k", type=int, required=True, help="number of parity variables (power of two)")
    p.add_argument("--bits", default=None, help="emit the instance for this assignment")
    add_common(p)
    p.set_defaults(func=_cmd_embed_parity, format="json")

    p = sub.add_parser("diagnose", help="packet-spectrum inequality checks",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--L", type=int, nargs="+", default=[16, 64, 256])
    p.add_argument("--eps", type=float, nargs="+", default=[0.1, 0.3])
    add_common(p)
    p.set_defaults(func=_cmd_diagnose, format="csv")

    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    propagator = getattr(args, "propagator", None)
    if propagator == "cheb":
        args.propagator = "chebyshev"
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()

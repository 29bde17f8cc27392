"""Command-line entry point.

Subcommands: patterns (beam-pattern export), simulate (single user count),
campaign (full sweep), replay (trace-driven campaign). All numeric output is
locale independent; results and aggregates are CSV, run metadata is JSON.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .arraymodel import beam_hpbw, beam_peak_angle, beam_port_response, write_pattern_csv
from .config import parse_config, resolve_config
from .errors import SimulationError
from .experiment import build_frontend, load_trace, run_campaign

MAX_SKIP_RATE = 0.01

RESULTS_HEADER = "K,frontend,precoder,realization,user,theta_bs_deg,se_bpshz,sum_se_bpshz"
AGGREGATE_HEADER = "K,frontend,precoder,se_median,se_q1,se_q3,sum_se_mean"


def _sig(x) -> str:
    return f"{float(x):.6g}"


def write_results_csv(path, results) -> None:
    with open(path, "w", newline="\n") as f:
        f.write(RESULTS_HEADER + "\n")
        for r in results:
            for u in range(r.num_users):
                f.write(f"{r.num_users},{r.frontend},{r.precoder},{r.realization},"
                        f"{u + 1},{_sig(r.theta_bs_deg[u])},{_sig(r.per_user_se[u])},"
                        f"{_sig(r.sum_se)}\n")


def write_aggregate_csv(path, aggregates) -> None:
    with open(path, "w", newline="\n") as f:
        f.write(AGGREGATE_HEADER + "\n")
        for row in aggregates:
            f.write(f"{row['K']},{row['frontend']},{row['precoder']},"
                    f"{_sig(row['se_median'])},{_sig(row['se_q1'])},"
                    f"{_sig(row['se_q3'])},{_sig(row['sum_se_mean'])}\n")


def write_metadata(path, plan, report, wall_s, threads) -> None:
    resolved = dict(plan.raw)
    blob = json.dumps(resolved, sort_keys=True).encode()
    meta = {
        "tool": "mbsim",
        "version": __version__,
        "seed": plan.seed,
        "config": resolved,
        "config_sha256": hashlib.sha256(blob).hexdigest(),
        "threads": threads,
        "wall_time_s": round(wall_s, 3),
        "realizations_attempted": report.attempted,
        "realizations_skipped": report.skipped,
        "skip_rate": report.skip_rate,
    }
    with open(path, "w") as f:
        json.dump(meta, f, indent=2, sort_keys=True)
        f.write("\n")


def _load_plan(args):
    if args.config:
        plan = parse_config(args.config)
    else:
        plan = resolve_config({})
    if args.seed is not None:
        raw = dict(plan.raw)
        raw["seed"] = args.seed
        plan = resolve_config(raw)
    return plan


def cmd_patterns(args) -> int:
    plan = _load_plan(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    res = args.resolution_deg
    grid = np.arange(-90.0, 90.0 + res / 2, res)
    summary = {}
    for tag in plan.frontends:
        front = build_frontend(tag)
        write_pattern_csv(out / f"patterns_{tag}.csv", front, grid)
        beams = []
        for port in range(1, front.num_ports + 1):
            peak = beam_peak_angle(front, port)
            gain = 10.0 * np.log10(np.abs(beam_port_response(front, port, peak)) ** 2)
            beams.append({
                "port": port,
                "peak_angle_deg": round(peak, 6),
                "peak_gain_dbi": round(float(gain), 6),
                "hpbw_deg": round(beam_hpbw(front, port), 6),
            })
        summary[tag] = beams
    with open(out / "patterns_summary.json", "w") as f:
        json.dump(summary, f, indent=2)
        f.write("\n")
    print(f"wrote pattern tables for {len(plan.frontends)} frontend(s) to {out}")
    return 0


def _run_and_write(plan, args, trace=None) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    report = run_campaign(plan.scenarios(trace=trace), threads=args.threads)
    wall = time.perf_counter() - t0
    write_results_csv(out / "results.csv", report.results)
    write_aggregate_csv(out / "aggregate.csv", report.aggregates)
    write_metadata(out / "metadata.json", plan, report, wall, args.threads)
    print(f"{len(report.results)} realization records, "
          f"{report.skipped}/{report.attempted} skipped, {wall:.1f}s -> {out}")
    if report.skip_rate > MAX_SKIP_RATE:
        print(f"error: skip rate {report.skip_rate:.2%} exceeds {MAX_SKIP_RATE:.0%}",
              file=sys.stderr)
        return 2
    return 0


def cmd_simulate(args) -> int:
    plan = _load_plan(args)
    if len(plan.users) > 1:
        raw = dict(plan.raw)
        raw["users"] = plan.users[0]
        plan = resolve_config(raw)
    return _run_and_write(plan, args)


def cmd_campaign(args) -> int:
    plan = _load_plan(args)
    return _run_and_write(plan, args)


def cmd_replay(args) -> int:
    plan = _load_plan(args)
    raw = dict(plan.raw)
    raw["mode"] = "replay"
    raw["trace"] = str(args.trace)
    plan = resolve_config(raw)
    trace = load_trace(args.trace)
    return _run_and_write(plan, args, trace=trace)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mbsim",
        description="Multi-beam mmWave MU-MIMO downlink link-level simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", type=Path, default=None, help="JSON config file")
        p.add_argument("--out", type=Path, default=Path("out"), help="output directory")
        p.add_argument("--seed", type=int, default=None, help="seed override")
        p.add_argument("--threads", type=int, default=1, help="realization thread cap")

    p = sub.add_parser("patterns", help="export beam pattern tables and summary")
    common(p)
    p.add_argument("--resolution-deg", type=float, default=0.1)
    p.set_defaults(func=cmd_patterns)

    p = sub.add_parser("simulate", help="run a single-scenario simulation")
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("campaign", help="run the full Monte Carlo sweep")
    common(p)
    p.set_defaults(func=cmd_campaign)

    p = sub.add_parser("replay", help="replay a recorded channel trace")
    common(p)
    p.add_argument("--trace", type=Path, required=True, help="trace CSV file")
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SimulationError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

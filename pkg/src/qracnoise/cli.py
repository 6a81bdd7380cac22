"""Command line front end: ``qracnoise {eval,sweep,threshold,optimize}``.

All tabular output is CSV (UTF-8, LF line endings, header row first) with
numbers rendered to 12 significant digits, so repeated runs with the same
flags produce byte-identical files.
"""

import argparse
import csv
import io
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .channels import CHANNEL_KINDS, DAMPING_MODELS, NoiseChannel
from .protocol import SCAN_MAX, SCAN_STEP, EvalPoint, classical_success, evaluate, threshold_gamma_t
from .seesaw import SeesawConfig, povm_deviation, seesaw

SWEEP_COLUMNS = ["channel", "d", "gamma_t", "p", "pq", "pc", "ratio", "optimized", "iterations", "povm_deviation"]
THRESHOLD_COLUMNS = ["channel", "d", "optimized", "crossed", "gamma_t_star", "p_star"]

CHANNEL_LABELS = {
    "ditflip": "Dit flip",
    "dphaseflip": "D-phase flip",
    "dephasing": "Dephasing",
    "amplitudedamping": "Amplitude damping",
    "depolarizing": "Depolarizing",
}


def fmt(x) -> str:
    if x is None:
        return "none"
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".12g")


def record_row(pt: EvalPoint) -> list[str]:
    return [
        pt.channel_kind,
        fmt(pt.dim),
        fmt(pt.gamma_t),
        fmt(pt.p),
        fmt(pt.pq),
        fmt(pt.pc),
        fmt(pt.ratio),
        fmt(pt.optimized),
        fmt(pt.iterations),
        fmt(pt.povm_deviation),
    ]


def write_csv(stream, header, rows):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _channel_list(text: str) -> list[str]:
    names = [c.strip().lower() for c in text.split(",") if c.strip()]
    if not names:
        raise argparse.ArgumentTypeError("channel list is empty")
    if names == ["all"]:
        return list(CHANNEL_KINDS)
    for name in names:
        if name not in CHANNEL_KINDS:
            raise argparse.ArgumentTypeError(f"unknown channel {name!r}; choose from {', '.join(CHANNEL_KINDS)}")
    return names


def _dim_list(text: str) -> list[int]:
    dims = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo, hi = (int(v) for v in part.split("-", 1))
            dims.extend(range(lo, hi + 1))
        else:
            dims.append(int(part))
    if not dims or min(dims) < 2:
        raise argparse.ArgumentTypeError("dimensions must be integers >= 2")
    return dims


def _nonneg(text: str) -> float:
    val = float(text)
    if not val >= 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return val


def _positive(text: str) -> float:
    val = float(text)
    if not val > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return val


def _config(args) -> SeesawConfig:
    return SeesawConfig(tol=args.tol, max_iters=args.max_iters, restarts=args.restarts, seed=args.seed)


def _open_output(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def cmd_eval(args) -> int:
    optimizer = _config(args) if args.optimized else None
    pt = evaluate(args.channel, args.d, args.gamma_t, optimizer, args.damping)
    write_csv(sys.stdout, SWEEP_COLUMNS, [record_row(pt)])
    return 0


def _sweep_job(job):
    kind, d, g, optimizer, damping = job
    return record_row(evaluate(kind, d, g, optimizer, damping))


def sweep_jobs(channels, dims, start, stop, step, modes, config, damping):
    n = int(round((stop - start) / step))
    gammas = [start + i * step for i in range(n + 1)]
    jobs = []
    for kind in channels:
        for d in dims:
            for g in gammas:
                for optimized in modes:
                    jobs.append((kind, d, g, config if optimized else None, damping))
    return jobs


def cmd_sweep(args) -> int:
    modes = [False, True] if args.both else [args.optimized]
    jobs = sweep_jobs(args.channels, args.dims, args.start, args.stop, args.step, modes, _config(args), args.damping)
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(_sweep_job, jobs, chunksize=8))
    else:
        rows = [_sweep_job(j) for j in jobs]
    buf = io.StringIO()
    write_csv(buf, SWEEP_COLUMNS, rows)
    stream, close = _open_output(args.output)
    try:
        stream.write(buf.getvalue())
    finally:
        if close:
            stream.close()
    return 0


def threshold_table(results, dims) -> str:
    """Aligned text layout: one row per channel, one column per dimension."""
    by_key = {(r.channel_kind, r.dim): r for r in results}
    channels = list(dict.fromkeys(r.channel_kind for r in results))
    label_w = max(len(CHANNEL_LABELS[c]) for c in channels)
    head = "Channel".ljust(label_w) + "".join(f"{'d=' + str(d):>9}" for d in dims)
    lines = [head]
    for c in channels:
        cells = []
        for d in dims:
            r = by_key[(c, d)]
            cells.append(f"{r.gamma_t_star:9.4f}" if r.crossed else f"{'none':>9}")
        lines.append(CHANNEL_LABELS[c].ljust(label_w) + "".join(cells))
    return "\n".join(lines) + "\n"


def cmd_threshold(args) -> int:
    optimizer = _config(args) if args.optimized else None
    results = [
        threshold_gamma_t(kind, d, optimizer, args.scan_max, args.step, args.damping)
        for kind in args.channels
        for d in args.dims
    ]
    sys.stdout.write(threshold_table(results, args.dims))
    if args.output:
        rows = [[r.channel_kind, fmt(r.dim), fmt(args.optimized), fmt(r.crossed), fmt(r.gamma_t_star), fmt(r.p_star)] for r in results]
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            write_csv(fh, THRESHOLD_COLUMNS, rows)
    return 0


def _matrix_lines(M: np.ndarray) -> list[str]:
    lines = []
    for part in (M.real, M.imag):
        for row in part:
            lines.append(" ".join(fmt(v) for v in row))
    return lines


def format_dump(channel: NoiseChannel, gamma_t: float, result) -> str:
    s = result.strategy
    d = s.dim
    out = [
        f"channel {channel.kind}",
        f"d {d}",
        f"gamma_t {fmt(gamma_t)}",
        f"p {fmt(channel.p)}",
        f"objective {fmt(result.objective)}",
        f"ratio {fmt(result.objective / classical_success(d))}",
        f"iterations {result.iterations}",
        f"converged {int(result.converged)}",
        f"povm_deviation_q0 {fmt(povm_deviation(s.effects_q0))}",
        f"povm_deviation_q1 {fmt(povm_deviation(s.effects_q1))}",
        f"objective_trace {len(result.objective_trace)}",
    ]
    out.extend(fmt(v) for v in result.objective_trace)
    for x0 in range(d):
        for x1 in range(d):
            out.append(f"state {x0} {x1}")
            out.extend(_matrix_lines(s.states[x0, x1]))
    for q, effects in (("q0", s.effects_q0), ("q1", s.effects_q1)):
        for b in range(d):
            out.append(f"effect {q} {b}")
            out.extend(_matrix_lines(effects[b]))
    return "\n".join(out) + "\n"


def parse_dump(text: str) -> dict:
    """Read back a strategy dump written by ``optimize``."""
    lines = text.splitlines()
    info: dict = {"states": {}, "effects_q0": {}, "effects_q1": {}}
    i = 0

    def read_matrix(i, d):
        rows = [[float(v) for v in lines[i + k].split()] for k in range(2 * d)]
        arr = np.array(rows)
        return arr[:d] + 1j * arr[d:], i + 2 * d

    while i < len(lines):
        parts = lines[i].split()
        key = parts[0]
        if key == "objective_trace":
            n = int(parts[1])
            info["objective_trace"] = [float(v) for v in lines[i + 1 : i + 1 + n]]
            i += 1 + n
        elif key == "state":
            info["states"][int(parts[1]), int(parts[2])], i = read_matrix(i + 1, info["d"])
        elif key == "effect":
            info[f"effects_{parts[1]}"][int(parts[2])], i = read_matrix(i + 1, info["d"])
        else:
            val = parts[1]
            info[key] = val if key == "channel" else (int(val) if key in ("d", "iterations", "converged") else float(val))
            i += 1
    return info


def cmd_optimize(args) -> int:
    channel = NoiseChannel.from_gamma_t(args.channel, args.d, args.gamma_t, damping=args.damping)
    result = seesaw(channel, _config(args))
    text = format_dump(channel, args.gamma_t, result)
    stream, close = _open_output(args.output)
    try:
        stream.write(text)
    finally:
        if close:
            stream.close()
    return 0


def _add_seesaw_flags(p):
    p.add_argument("--tol", type=_positive, default=1e-10, help="stop when an iteration improves P^Q by less than this")
    p.add_argument("--max-iters", type=int, default=500)
    p.add_argument("--restarts", type=int, default=1, help="extra runs from random effects (1 = no restarts)")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qracnoise", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, single_channel=True):
        if single_channel:
            p.add_argument("--channel", required=True, choices=CHANNEL_KINDS)
        else:
            p.add_argument("--channels", required=True, type=_channel_list, help="comma separated, or 'all'")
        p.add_argument("--damping", choices=DAMPING_MODELS, default="ladder", help="amplitude damping model")

    p = sub.add_parser("eval", help="evaluate one (channel, d, gamma_t) point")
    common(p)
    p.add_argument("--d", required=True, type=int)
    p.add_argument("--gamma-t", required=True, type=_nonneg)
    p.add_argument("--optimized", action="store_true")
    _add_seesaw_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="ratio curves over a gamma_t grid, written as CSV")
    common(p, single_channel=False)
    p.add_argument("--dims", required=True, type=_dim_list, help="e.g. 2,3 or 2-7")
    p.add_argument("--start", type=_nonneg, default=0.0)
    p.add_argument("--stop", type=_positive, required=True)
    p.add_argument("--step", type=_positive, default=SCAN_STEP)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--optimized", action="store_true")
    mode.add_argument("--both", action="store_true", help="emit non-optimized and optimized rows")
    p.add_argument("--output", required=True, help="CSV path, '-' for stdout")
    p.add_argument("--workers", type=int, default=1)
    _add_seesaw_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("threshold", help="gamma_t at which P^Q/P^C reaches 1")
    common(p, single_channel=False)
    p.add_argument("--dims", type=_dim_list, default=list(range(2, 8)))
    p.add_argument("--optimized", action="store_true")
    p.add_argument("--scan-max", type=_positive, default=SCAN_MAX)
    p.add_argument("--step", type=_positive, default=SCAN_STEP)
    p.add_argument("--output", help="also write the results as CSV")
    _add_seesaw_flags(p)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("optimize", help="run the see-saw and dump the strategy")
    common(p)
    p.add_argument("--d", required=True, type=int)
    p.add_argument("--gamma-t", required=True, type=_nonneg)
    p.add_argument("--output", default="-")
    _add_seesaw_flags(p)
    p.set_defaults(func=cmd_optimize)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "d", 2) < 2:
        parser.error("--d must be >= 2")
    if args.command == "sweep" and not args.stop > args.start:
        parser.error("--stop must exceed --start")
    if getattr(args, "max_iters", 1) < 1 or getattr(args, "restarts", 1) < 1:
        parser.error("--max-iters and --restarts must be >= 1")
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

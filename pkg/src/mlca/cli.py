"""Command-line driver: general runs, reference scenarios, and exports.

Commands
    run             simulate a PBM image under a config, export traces
    oracle          digital reference edge map for a fixed neighborhood
    reproduce-fig3  the four 3x3 reference scenarios (a|b|c|d)
    sweep-vlearn    empirical vs analytic switching probability table

Exit codes: 0 success, 1 validation error, 2 I/O error.
"""

import argparse
import csv
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import ConfigError, RunConfig
from .device import ResistiveState
from .edges import oracle_edges, summarize_run
from .learning import Action, Reinforcement
from .pbm import PBMError, load_image, write_pbm
from .streams import StreamFactory

_ACTION_NAMES = {Action.VON_NEUMANN: "von_neumann", Action.MOORE: "moore"}
_SIGNAL_NAMES = {
    Reinforcement.NEUTRAL: "neutral",
    Reinforcement.REWARD_MOORE: "reward_moore",
    Reinforcement.REWARD_VON_NEUMANN: "reward_von_neumann",
}


def save_outputs(traces, stats, out_dir, config: RunConfig | None = None) -> list:
    """Write per-step edge maps (PBM), the full trace CSV, a summary JSON,
    and the resolved config echo into ``out_dir``. Returns written paths."""
    traces = list(traces)
    if not traces:
        raise ValueError("no traces to save")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    for trace in traces:
        frame = out / f"edge_{trace.step_index:05d}.pbm"
        write_pbm(frame, trace.edge_map)
        written.append(frame)

    trace_path = out / "trace.csv"
    with open(trace_path, "w", encoding="ascii", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["step", "row", "col", "action", "edge", "v_learn", "reinforcement"])
        for trace in traces:
            h, w = trace.actions.shape
            for i in range(h):
                for j in range(w):
                    writer.writerow(
                        [
                            trace.step_index,
                            i,
                            j,
                            _ACTION_NAMES[Action(trace.actions[i, j])],
                            int(trace.edge_map[i, j]),
                            f"{trace.v_learn_map[i, j]:.9f}",
                            _SIGNAL_NAMES[Reinforcement(trace.reinforcement_map[i, j])],
                        ]
                    )
    written.append(trace_path)

    summary = {
        "n_steps": len(traces),
        "height": int(traces[0].actions.shape[0]),
        "width": int(traces[0].actions.shape[1]),
        "window": list(stats.window),
        "moore_frequency": stats.moore_frequency.tolist(),
        "edge_frequency": stats.edge_frequency.tolist(),
        "final_v_learn": traces[-1].v_learn_map.tolist(),
    }
    summary_path = out / "summary.json"
    with open(summary_path, "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    written.append(summary_path)

    if config is not None:
        config_path = out / "config_used.json"
        config.save(config_path)
        written.append(config_path)
    return written


def _load_config(args) -> RunConfig:
    cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
    if getattr(args, "seed", None) is not None:
        cfg = replace(cfg, seed=args.seed)
    if getattr(args, "steps", None) is not None:
        cfg = replace(cfg, n_steps=args.steps)
    if getattr(args, "out", None) is not None:
        cfg = replace(cfg, output_dir=args.out)
    cfg.validate()
    return cfg


def _simulate(cfg: RunConfig, image, parallel: bool = False):
    grid = cfg.build_grid(image)
    streams = StreamFactory(cfg.seed)
    traces = grid.run(
        streams, cfg.n_steps, schedule=cfg.forced_reinforcement(), parallel=parallel
    )
    return grid, traces


def cmd_run(args) -> int:
    cfg = _load_config(args)
    image = load_image(args.image, invert=args.invert)
    _, traces = _simulate(cfg, image, parallel=args.parallel)
    stats = summarize_run(traces)
    save_outputs(traces, stats, cfg.output_dir, config=cfg)
    print(
        f"ran {cfg.n_steps} steps on {image.height}x{image.width} image, "
        f"outputs in {cfg.output_dir}"
    )
    print(f"mean edge frequency: {stats.edge_frequency.mean():.4f}")
    return 0


def cmd_oracle(args) -> int:
    image = load_image(args.image, invert=args.invert)
    action = Action.MOORE if args.action == "moore" else Action.VON_NEUMANN
    actions = np.full(image.pixels.shape, action, dtype=np.uint8)
    edge_map = oracle_edges(image, actions)
    if args.out:
        write_pbm(args.out, edge_map)
        print(f"wrote {args.out}")
    else:
        for row in edge_map:
            print("".join(str(int(v)) for v in row))
    return 0


FIG3_VARIANTS = {
    # variant: (clear SE corner pixel, reinforcement mode)
    "a": (False, "neutral"),
    "b": (True, "neutral"),
    "c": (True, "reward_moore"),
    "d": (True, "reward_von_neumann"),
}


def cmd_fig3(args) -> int:
    clear_se, mode = FIG3_VARIANTS[args.variant]
    cfg = replace(_load_config(args), reinforcement_mode=mode)
    cfg.validate()
    image = np.ones((3, 3), dtype=np.uint8)
    if clear_se:
        image[2, 2] = 0
    _, traces = _simulate(cfg, image)
    stats = summarize_run(traces)
    out_dir = Path(cfg.output_dir) / f"fig3_{args.variant}"
    save_outputs(traces, stats, out_dir, config=replace(cfg, output_dir=str(out_dir)))
    center_freq = stats.edge_frequency[1, 1]
    final_v = traces[-1].v_learn_map[1, 1]
    print(f"variant {args.variant}: {cfg.n_steps} steps, outputs in {out_dir}")
    print(f"center-cell edge frequency: {center_freq:.4f}")
    print(f"center-cell final learning voltage: {final_v:.6f} V")
    return 0


def cmd_sweep(args) -> int:
    cfg = _load_config(args)
    m1 = cfg.build_m1()
    learning = cfg.build_learning()
    rng = np.random.default_rng(cfg.seed)
    amplitudes = np.linspace(learning.v_min, learning.v_max, args.points)
    rows = []
    for amp in amplitudes:
        analytic = m1.switching_probability(amp)
        hits = 0
        for _ in range(args.trials):
            m1.write_saturated(ResistiveState.OFF)
            if m1.apply_write_pulse(amp, rng).switched:
                hits += 1
        empirical = hits / args.trials
        rows.append((amp, analytic, empirical, abs(empirical - analytic)))

    print(f"{'v_learn':>10} {'analytic':>10} {'empirical':>10} {'abs_err':>10}")
    for amp, analytic, empirical, err in rows:
        print(f"{amp:>10.4f} {analytic:>10.4f} {empirical:>10.4f} {err:>10.4f}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        path = out / "sweep_vlearn.csv"
        with open(path, "w", encoding="ascii", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["v_learn", "analytic", "empirical", "abs_err"])
            writer.writerows(
                (f"{a:.6f}", f"{p:.6f}", f"{e:.6f}", f"{d:.6f}") for a, p, e, d in rows
            )
        print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlca",
        description="Memristive learning cellular automata simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="simulate an image under a config")
    run_p.add_argument("--image", required=True, help="input PBM (P1 or P4)")
    run_p.add_argument("--config", help="JSON run configuration")
    run_p.add_argument("--seed", type=int, help="override config seed")
    run_p.add_argument("--steps", type=int, help="override config n_steps")
    run_p.add_argument("--out", help="override config output directory")
    run_p.add_argument("--invert", action="store_true", help="invert PBM polarity")
    run_p.add_argument("--parallel", action="store_true", help="thread-pool cell evaluation")
    run_p.set_defaults(func=cmd_run)

    oracle_p = sub.add_parser("oracle", help="digital reference edge map")
    oracle_p.add_argument("--image", required=True, help="input PBM (P1 or P4)")
    oracle_p.add_argument("--action", required=True, choices=("moore", "vn"))
    oracle_p.add_argument("--out", help="write the map as PBM instead of stdout")
    oracle_p.add_argument("--invert", action="store_true", help="invert PBM polarity")
    oracle_p.set_defaults(func=cmd_oracle)

    fig3_p = sub.add_parser(
        "reproduce-fig3", help="run one of the 3x3 reference scenarios"
    )
    fig3_p.add_argument("variant", choices=sorted(FIG3_VARIANTS))
    fig3_p.add_argument("--config", help="JSON run configuration")
    fig3_p.add_argument("--seed", type=int, help="override config seed")
    fig3_p.add_argument("--steps", type=int, help="override config n_steps")
    fig3_p.add_argument("--out", help="override config output directory")
    fig3_p.set_defaults(func=cmd_fig3)

    sweep_p = sub.add_parser(
        "sweep-vlearn", help="empirical vs analytic switching probability"
    )
    sweep_p.add_argument("--config", help="JSON run configuration")
    sweep_p.add_argument("--seed", type=int, help="override config seed")
    sweep_p.add_argument("--points", type=int, default=13, help="amplitudes in the window")
    sweep_p.add_argument("--trials", type=int, default=10000, help="pulses per amplitude")
    sweep_p.add_argument("--out", help="also write sweep_vlearn.csv here")
    sweep_p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except (PBMError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

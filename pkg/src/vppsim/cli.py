"""Command line driver: run one BER sweep and write it as CSV."""

from __future__ import annotations

import argparse
import sys

from .harness import sweep, write_csv
from .system import Modulation, PerturbationKind, PrecoderKind, SystemConfig


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vppsim",
        description="Monte Carlo BER-vs-SNR sweep for vector-perturbation precoding.",
    )
    parser.add_argument("--tx", type=int, default=4, metavar="M", help="transmit antennas")
    parser.add_argument("--users", type=int, default=4, metavar="K", help="single-antenna users")
    parser.add_argument(
        "--modulation", choices=[m.value for m in Modulation], default="qpsk"
    )
    parser.add_argument(
        "--precoder", choices=[p.value for p in PrecoderKind], default="inv"
    )
    parser.add_argument(
        "--perturbation", choices=[p.value for p in PerturbationKind], default="none"
    )
    parser.add_argument("--snr-start", type=float, default=0.0, metavar="dB")
    parser.add_argument("--snr-stop", type=float, default=20.0, metavar="dB")
    parser.add_argument("--snr-step", type=float, default=2.0, metavar="dB")
    parser.add_argument("--trials", type=int, default=20000, metavar="N",
                        help="trial budget per SNR point")
    parser.add_argument("--seed", type=int, default=0, metavar="S")
    parser.add_argument("--window", type=int, default=2, metavar="B",
                        help="lattice search radius per real dimension")
    parser.add_argument("--out", required=True, metavar="FILE", help="output CSV path")
    parser.add_argument("--no-early-stop", action="store_true",
                        help="always run the full trial budget per point")
    parser.add_argument("--workers", type=int, default=1,
                        help="parallel workers (results are worker-independent)")
    return parser


def snr_grid(start: float, stop: float, step: float) -> list[float]:
    if step <= 0:
        raise ValueError(f"--snr-step must be positive, got {step}")
    if stop < start:
        raise ValueError(f"--snr-stop {stop} below --snr-start {start}")
    grid = []
    i = 0
    while True:
        snr = start + i * step
        if snr > stop + 1e-9:
            break
        grid.append(snr)
        i += 1
    return grid


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = SystemConfig(
            tx_antennas=args.tx,
            users=args.users,
            noise_variance=0.0,
            modulation=Modulation(args.modulation),
            precoder_kind=PrecoderKind(args.precoder),
            perturbation_kind=PerturbationKind(args.perturbation),
            seed=args.seed,
            window=args.window,
        )
        grid = snr_grid(args.snr_start, args.snr_stop, args.snr_step)
        curve = sweep(
            cfg,
            grid,
            args.trials,
            early_stop=not args.no_early_stop,
            workers=args.workers,
        )
        write_csv(curve, args.out)
    except (ValueError, OSError) as exc:
        print(f"vppsim: error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {len(curve.points)} points to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Driving the command-line runner and consuming its CSV output.

The CLI wraps sweep() and writes one CSV per run, with the configuration
recorded in '#' comment lines above the header.  read_csv() restores both
the curve and the configuration, and snr_at_ber() interpolates crossings
on a log-linear scale, which is how the scheme-to-scheme dB gains quoted
in the test suite are measured.
"""

import tempfile

from vppsim import read_csv, snr_at_ber
from vppsim.cli import main as cli_main


def main():
    with tempfile.NamedTemporaryFile(suffix=".csv", delete=False) as f:
        out = f.name

    rc = cli_main([
        "--tx", "4", "--users", "4",
        "--modulation", "qpsk",
        "--precoder", "inv",
        "--perturbation", "continuous",
        "--snr-start", "6", "--snr-stop", "21", "--snr-step", "3",
        "--trials", "3000",
        "--seed", "5",
        "--out", out,
    ])
    assert rc == 0

    curve = read_csv(out)
    cfg = curve.config
    print(f"\nconfig restored from CSV: {cfg.tx_antennas}x{cfg.users}, "
          f"{cfg.modulation.value}, {cfg.precoder_kind.value} + {cfg.perturbation_kind.value}, "
          f"seed {cfg.seed}")
    print(f"{'snr_db':>7} {'trials':>7} {'bits':>8} {'errors':>7} {'ber':>10}")
    for p in curve.points:
        print(f"{p.snr_db:7.1f} {p.trials:7d} {p.bits:8d} {p.bit_errors:7d} {p.ber:10.3e}")

    for target in (1e-1, 3e-2, 1e-2):
        x = snr_at_ber(curve, target)
        where = f"{x:.2f} dB" if x is not None else "not bracketed on this grid"
        print(f"BER {target:.0e} crossed at {where}")


if __name__ == "__main__":
    main()

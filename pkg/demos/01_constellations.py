"""Gray-labeled constellations and the perturbation interval tau.

Walks through the two supported symbol alphabets, shows the bit-to-point
tables, and derives the folding interval tau = 2 (c_max + delta/2) that
every lattice-perturbation scheme shares.
"""

import numpy as np

from vppsim import Modulation, demodulate, make_constellation, modulate, tau


def show(kind):
    c = make_constellation(kind)
    print(f"\n{c.name}: {c.points.size} points, {c.bits_per_symbol} bits/symbol")
    print(f"  mean energy      : {np.mean(np.abs(c.points) ** 2):.12f}")
    print(f"  extreme coordinate c_max = {c.c_max:.6f}, spacing delta = {c.delta:.6f}")
    print(f"  tau = 2 (c_max + delta/2) = {tau(c):.6f}")
    width = c.bits_per_symbol
    print("  bits -> point")
    for i, point in enumerate(c.points):
        bits = format(i, f"0{width}b")
        print(f"   {bits}  {point.real:+.4f} {point.imag:+.4f}j")


def roundtrip(kind, n_symbols=6, seed=0):
    c = make_constellation(kind)
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, size=n_symbols * c.bits_per_symbol).astype(np.uint8)
    symbols = modulate(bits, c)
    back = demodulate(symbols, c)
    print(f"\n{c.name} roundtrip on {n_symbols} random symbols:")
    print("  tx bits:", "".join(map(str, bits)))
    print("  rx bits:", "".join(map(str, back)), "(identical)" if np.array_equal(bits, back) else "(MISMATCH)")


if __name__ == "__main__":
    print("Unit-average-energy constellations with per-dimension Gray labels.")
    print("The first half of each label selects the real coordinate (high bits")
    print("first), the second half the imaginary coordinate.")
    for kind in (Modulation.QPSK, Modulation.QAM16):
        show(kind)
        roundtrip(kind)

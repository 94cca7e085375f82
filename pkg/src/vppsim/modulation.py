"""Constellations, Gray bit mapping, the perturbation interval, and slicing.

Both constellations are normalized to unit average symbol energy and are
Gray-coded independently per real dimension.  The canonical bit tables,
with bits written MSB first, are:

QPSK (coordinate unit a = 1/sqrt(2)), bits ``(b0, b1)`` -> ``I + jQ``::

    b0 -> I: 0 -> +a, 1 -> -a
    b1 -> Q: 0 -> +a, 1 -> -a

16QAM (coordinate unit a = 1/sqrt(10)), bits ``(b0, b1, b2, b3)``; the
pair ``(b0, b1)`` selects I, ``(b2, b3)`` selects Q::

    00 -> +3a    01 -> +a    11 -> -a    10 -> -3a

Index ``i`` in :attr:`Constellation.points` is the integer value of the
bit pattern (MSB first); this ordering is also the slicer's tie-break
order.  The per-real-dimension folding interval is
``tau = 2 * (c_max + delta / 2)``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .system import Modulation

# Gray-coded coordinate levels, indexed by the per-dimension bit pattern.
_QPSK_LEVELS = np.array([+1.0, -1.0]) / np.sqrt(2.0)
_QAM16_LEVELS = np.array([+3.0, +1.0, -3.0, -1.0]) / np.sqrt(10.0)


@dataclass(frozen=True, eq=False)
class Constellation:
    """Unit-energy constellation with its Gray map and folding geometry.

    ``points[i]`` is the symbol for bit pattern ``i`` and
    ``bit_patterns[i]`` the pattern itself, so the two arrays together
    form the bit <-> point bijection.  ``c_max`` and ``delta`` are the
    largest coordinate magnitude and the spacing between adjacent
    coordinate levels, both per real dimension.
    """

    name: str
    points: np.ndarray
    bits_per_symbol: int
    bit_patterns: np.ndarray
    c_max: float
    delta: float


def _build(name: str, levels: np.ndarray) -> Constellation:
    bits_per_dim = int(np.log2(levels.size))
    bps = 2 * bits_per_dim
    n = 1 << bps
    patterns = ((np.arange(n)[:, None] >> np.arange(bps - 1, -1, -1)) & 1).astype(np.uint8)
    i_code = np.arange(n) >> bits_per_dim
    q_code = np.arange(n) & (levels.size - 1)
    points = levels[i_code] + 1j * levels[q_code]
    sorted_levels = np.sort(levels)
    return Constellation(
        name=name,
        points=points,
        bits_per_symbol=bps,
        bit_patterns=patterns,
        c_max=float(np.max(np.abs(levels))),
        delta=float(sorted_levels[1] - sorted_levels[0]),
    )


@functools.lru_cache(maxsize=None)
def make_constellation(kind: Modulation) -> Constellation:
    """Build the canonical QPSK or 16QAM constellation."""
    kind = Modulation(kind)
    if kind is Modulation.QPSK:
        return _build("qpsk", _QPSK_LEVELS)
    return _build("16qam", _QAM16_LEVELS)


def tau(c: Constellation) -> float:
    """Perturbation interval giving symmetric decoding regions per real dimension."""
    return 2.0 * (c.c_max + c.delta / 2.0)


def modulate(bits: np.ndarray, c: Constellation) -> np.ndarray:
    """Map a bit sequence (MSB first per symbol) to constellation symbols."""
    bits = np.asarray(bits)
    if bits.size % c.bits_per_symbol != 0:
        raise ValueError(
            f"bit count {bits.size} not divisible by bits_per_symbol {c.bits_per_symbol}"
        )
    groups = bits.reshape(-1, c.bits_per_symbol)
    weights = 1 << np.arange(c.bits_per_symbol - 1, -1, -1)
    return c.points[groups @ weights]


def demodulate(symbols: np.ndarray, c: Constellation) -> np.ndarray:
    """Minimum-distance slicing of symbols back to bits.

    Exact distance ties go to the point with the smaller index in the
    canonical ordering of ``c.points``.
    """
    symbols = np.atleast_1d(np.asarray(symbols))
    d2 = np.abs(symbols[:, None] - c.points[None, :]) ** 2
    idx = np.argmin(d2, axis=1)
    return c.bit_patterns[idx].reshape(-1)

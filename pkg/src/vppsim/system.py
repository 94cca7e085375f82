"""System configuration, random channel/noise generation, and SNR conventions.

Conventions used throughout the package:

* ``sigma2`` is the *total* complex noise variance per receive antenna;
  real and imaginary parts each carry ``sigma2 / 2``.
* Transmit power is instantaneously normalized to 1, so the SNR axis is
  ``10 * log10(1 / sigma2)``.
* Every Monte Carlo trial draws from its own random substream keyed by
  ``(seed, point_index, trial_index)``, which makes results independent of
  execution order and of the number of workers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class Modulation(str, enum.Enum):
    QPSK = "qpsk"
    QAM16 = "16qam"


class PrecoderKind(str, enum.Enum):
    INVERSE = "inv"
    REGULARIZED = "rinv"


class PerturbationKind(str, enum.Enum):
    NONE = "none"
    DISCRETE = "discrete"
    CONTINUOUS = "continuous"
    COMBINED = "combined"


@dataclass(frozen=True)
class SystemConfig:
    """Full description of one simulated downlink.

    Attributes
    ----------
    tx_antennas : int
        Number of base-station antennas M.
    users : int
        Number of single-antenna users K.  Requires ``users <= tx_antennas``
        so that ``H H*`` is invertible with probability 1.
    noise_variance : float
        Total complex noise variance per receive antenna.  BER sweeps
        override this per SNR point; it matters for single-link use.
    modulation : Modulation
    precoder_kind : PrecoderKind
    perturbation_kind : PerturbationKind
    seed : int
        Root seed, 64-bit unsigned.
    window : int
        Per-real-dimension search radius B for the lattice searches;
        candidate integers are drawn from ``{-B, ..., +B}``.
    """

    tx_antennas: int
    users: int
    noise_variance: float
    modulation: Modulation
    precoder_kind: PrecoderKind
    perturbation_kind: PerturbationKind
    seed: int
    window: int = 2

    def __post_init__(self):
        if self.tx_antennas < 1:
            raise ValueError(f"tx_antennas must be positive, got {self.tx_antennas}")
        if self.users < 1:
            raise ValueError(f"users must be positive, got {self.users}")
        if self.users > self.tx_antennas:
            raise ValueError(
                f"users ({self.users}) must not exceed tx_antennas ({self.tx_antennas})"
            )
        if self.noise_variance < 0:
            raise ValueError(f"noise_variance must be >= 0, got {self.noise_variance}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if self.window < 0:
            raise ValueError(f"window must be >= 0, got {self.window}")


def sample_channel(rng: np.random.Generator, users: int, tx_antennas: int) -> np.ndarray:
    """Draw a K x M Rayleigh flat-fading matrix with i.i.d. CN(0, 1) entries.

    Row k is the channel of user k.  Real and imaginary parts each have
    variance 1/2 so that E|h|^2 = 1.
    """
    z = rng.standard_normal((2, users, tx_antennas))
    return np.sqrt(0.5) * (z[0] + 1j * z[1])


def sample_noise(rng: np.random.Generator, users: int, sigma2: float) -> np.ndarray:
    """Draw a length-K AWGN vector with per-entry total variance ``sigma2``."""
    if sigma2 < 0:
        raise ValueError(f"sigma2 must be >= 0, got {sigma2}")
    z = rng.standard_normal((2, users))
    return np.sqrt(sigma2 / 2.0) * (z[0] + 1j * z[1])


def snr_to_sigma2(snr_db: float) -> float:
    """Noise variance for an SNR point: total unit transmit power over sigma^2."""
    return 10.0 ** (-snr_db / 10.0)


def trial_rng(seed: int, point_index: int, trial_index: int) -> np.random.Generator:
    """Independent substream for one Monte Carlo trial.

    Keyed by ``(seed, point_index, trial_index)`` so any trial can be
    regenerated in isolation and aggregation order cannot matter.
    """
    return np.random.default_rng(np.random.SeedSequence((seed, point_index, trial_index)))

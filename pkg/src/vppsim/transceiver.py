"""End-to-end symbol transmission: precode, perturb, normalize, receive, slice.

The receiver model is deliberately minimal: it knows the scalar
normalization ``sqrt(gamma)`` and, for schemes with a discrete component,
the folding interval ``tau``.  It never sees G or H, and the continuous
perturbation is not subtracted; the slicer works on ``u + p + sqrt(gamma) n``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .modulation import Constellation, demodulate
from .perturbation import Perturbation
from .precoding import Precoder

# Below this gamma the data-plus-perturbation vector is numerically zero
# and the unit-power normalization is meaningless; resample the trial.
GAMMA_FLOOR = 1e-20


class DegenerateGamma(Exception):
    """Transmit normalization vanished (u + v ~ 0); resample the trial."""


@dataclass(frozen=True, eq=False)
class TxSignal:
    """Unit-power transmit vector and the normalization it was scaled by."""

    x: np.ndarray
    gamma: float


@dataclass(frozen=True, eq=False)
class RxEstimate:
    """Per-user symbol estimates, entry k belonging to user k."""

    u_hat: np.ndarray


def transmit(G: Precoder, u: np.ndarray, pert: Perturbation, tau: float = 0.0) -> TxSignal:
    """Form ``x = G (u + tau l + p) / sqrt(gamma)`` with ``||x||^2 = 1``.

    ``tau`` may be omitted only for schemes whose integer part is zero.
    gamma is recomputed from the actual precoded vector so the power
    constraint holds to machine precision regardless of how the
    perturbation's cached gamma was obtained.
    """
    if tau <= 0.0 and np.any(pert.l != 0):
        raise ValueError("a positive tau is required when the integer offset is nonzero")
    s = G.matrix @ (u + tau * pert.l + pert.p)
    gamma = float(np.vdot(s, s).real)
    if gamma < GAMMA_FLOOR:
        raise DegenerateGamma(f"gamma {gamma:.3e} below {GAMMA_FLOOR}")
    return TxSignal(x=s / np.sqrt(gamma), gamma=gamma)


def propagate(H: np.ndarray, tx: TxSignal, n: np.ndarray) -> np.ndarray:
    """Channel output ``y = H x + n``."""
    return H @ tx.x + n


def fold_tau(values: np.ndarray, tau: float) -> np.ndarray:
    """Fold real and imaginary parts independently into ``(-tau/2, tau/2]``.

    Removes integer multiples of tau per real dimension; the exact lower
    boundary maps to the upper one so the interval is half-open on the
    left.
    """
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")

    def fold(t: np.ndarray) -> np.ndarray:
        r = t - np.floor((t + tau / 2.0) / tau) * tau
        # Inputs within half an ulp of a cell image can round one ulp past
        # the lower edge; wrap them back before remapping the edge itself.
        r = np.where(r < -tau / 2.0, r + tau, r)
        return np.where(r == -tau / 2.0, tau / 2.0, r)

    values = np.asarray(values)
    return fold(values.real) + 1j * fold(values.imag)


def receive(
    y: np.ndarray, gamma: float, tau: float | None = None, folding: bool = False
) -> RxEstimate:
    """Rescale by ``sqrt(gamma)`` and, for discrete schemes, fold by tau."""
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    u_hat = np.sqrt(gamma) * y
    if folding:
        if tau is None or tau <= 0:
            raise ValueError(f"tau must be positive when folding, got {tau}")
        u_hat = fold_tau(u_hat, tau)
    return RxEstimate(u_hat=u_hat)


def detect(est: RxEstimate, c: Constellation) -> np.ndarray:
    """Minimum-distance per-user slicing; bits concatenated in user order."""
    return demodulate(est.u_hat, c)

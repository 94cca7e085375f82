"""Construction of the precoding matrix G from the channel.

Both precoders are computed through a Cholesky factorization of the K x K
Hermitian system ``H H* (+ alpha I)`` instead of an explicit inverse; at
K = M the unregularized system is often poorly conditioned and the solve
form is the stable route.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve
from scipy.linalg.lapack import zpocon

from .system import PrecoderKind

# Reciprocal-condition gate below which a channel draw is rejected rather
# than inverted; near-singular draws produce power normalizations large
# enough to distort instantaneous-normalization BER.
RCOND_THRESHOLD = 1e-12


class IllConditioned(Exception):
    """Channel too close to singular to invert; resample and count it."""


@dataclass(frozen=True, eq=False)
class Precoder:
    """M x K precoding matrix with its kind and cached Gram matrix G* G."""

    matrix: np.ndarray
    kind: PrecoderKind
    gram: np.ndarray


def _hermitize(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.conj().T)


def _finish(g: np.ndarray, kind: PrecoderKind) -> Precoder:
    return Precoder(matrix=g, kind=kind, gram=_hermitize(g.conj().T @ g))


def inverse_precoder(H: np.ndarray) -> Precoder:
    """Channel inversion G = H* (H H*)^-1, so that H G = I.

    Raises
    ------
    IllConditioned
        If ``H H*`` has reciprocal condition estimate below
        :data:`RCOND_THRESHOLD` (or fails to factor outright).
    """
    a = H @ H.conj().T
    try:
        factor = cho_factor(a, lower=False)
    except np.linalg.LinAlgError as exc:
        raise IllConditioned(f"H H* not positive definite: {exc}") from exc
    rcond, info = zpocon(factor[0], np.linalg.norm(a, 1))
    if info != 0 or rcond < RCOND_THRESHOLD:
        raise IllConditioned(f"H H* reciprocal condition {rcond:.3e} < {RCOND_THRESHOLD}")
    g = cho_solve(factor, H).conj().T
    return _finish(g, PrecoderKind.INVERSE)


def regularized_precoder(H: np.ndarray, k_sigma2: float) -> Precoder:
    """Regularized inversion G = H* (H H* + alpha I)^-1 with alpha = K sigma^2.

    ``k_sigma2`` is the full regularization constant (users times noise
    variance).  With ``k_sigma2 = 0`` this reduces to plain inversion.
    """
    if k_sigma2 < 0:
        raise ValueError(f"k_sigma2 must be >= 0, got {k_sigma2}")
    users = H.shape[0]
    a = H @ H.conj().T + k_sigma2 * np.eye(users)
    g = cho_solve(cho_factor(a, lower=False), H).conj().T
    return _finish(g, PrecoderKind.REGULARIZED)

"""Discrete, continuous, and combined perturbation of the data vector.

The three schemes all reduce to quadratic problems:

* continuous: the closed form ``p = -a (I + a M)^-1 M u`` with
  ``a = K sigma^2`` and ``M`` the precoder Gram matrix, which is the
  stationary point of both the SINR denominator and the expected MSE;
* discrete: a closest-lattice-point search minimizing
  ``(u + tau l)^H Q (u + tau l)`` over Gaussian integers ``l``;
* combined: for each candidate ``l`` the continuous formula is applied to
  ``u + tau l`` and the expected MSE ``J = ||p||^2 + gamma K sigma^2`` is
  minimized.  Substituting the closed form collapses J to the single
  quadratic form ``(u + tau l)^H [a M (I + a M)^-1] (u + tau l)``, so the
  combined search reuses the same lattice core with a different matrix.

Searches enumerate a bounded window of Gaussian integers (real and
imaginary parts in ``{-B..B}``) with depth-first branch-and-bound on a
Cholesky factor of the real embedding.  Cost ties are broken by the
canonical candidate order: per component, in order, the real part ranked
by (magnitude, value) and then the imaginary part likewise, so the
all-zero vector always wins a full tie.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .precoding import Precoder


@dataclass(frozen=True)
class SearchWindow:
    """Per-real-dimension search radius B; candidates come from {-B..B}."""

    radius: int = 2

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError(f"radius must be >= 0, got {self.radius}")


@dataclass(frozen=True, eq=False)
class Perturbation:
    """A chosen perturbation pair (l, p) with its power normalization.

    ``gamma`` is the transmit normalization ``||G (u + tau l + p)||^2``
    and ``objective`` the scheme-dependent minimized cost.
    """

    l: np.ndarray
    p: np.ndarray
    gamma: float
    objective: float


def _hermitize(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.conj().T)


def _noise_weight(users: int, sigma2: float) -> float:
    if users < 1:
        raise ValueError(f"users must be >= 1, got {users}")
    if sigma2 < 0:
        raise ValueError(f"sigma2 must be >= 0, got {sigma2}")
    return users * sigma2


def gamma_of(G: Precoder, u: np.ndarray, v: np.ndarray) -> float:
    """Normalization ||G (u + v)||^2 evaluated through the cached Gram matrix."""
    w = u + v
    return float(np.real(np.vdot(w, G.gram @ w)))


def no_perturbation(G: Precoder, u: np.ndarray) -> Perturbation:
    """The trivial all-zero perturbation (plain linear precoding)."""
    zeros = np.zeros(u.size, dtype=complex)
    g = gamma_of(G, u, zeros)
    return Perturbation(l=zeros, p=zeros, gamma=g, objective=g)


def continuous_perturbation(
    G: Precoder, u: np.ndarray, users: int, sigma2: float
) -> Perturbation:
    """Closed-form continuous perturbation maximizing SINR.

    Solves ``(I + K sigma^2 M) p = -K sigma^2 M u`` with ``M = G* G``; the
    system matrix is Hermitian with eigenvalues >= 1, so a Cholesky solve
    always succeeds.  The objective reported is the minimized SINR
    denominator ``D = p*(I + aM)p + 2a Re(u* M p) + a u* M u``.
    """
    a = _noise_weight(users, sigma2)
    m = G.gram
    k = u.size
    if a == 0.0:
        p = np.zeros(k, dtype=complex)
    else:
        s = np.eye(k) + a * m
        p = -a * cho_solve(cho_factor(s, lower=False), m @ u)
    mu = m @ u
    mp = m @ p
    d = float(
        np.vdot(p, p).real
        + a * np.vdot(p, mp).real
        + 2.0 * a * np.vdot(u, mp).real
        + a * np.vdot(u, mu).real
    )
    return Perturbation(l=np.zeros(k, dtype=complex), p=p, gamma=gamma_of(G, u, p), objective=d)


def discrete_perturbation(
    H: np.ndarray, u: np.ndarray, tau: float, window: SearchWindow
) -> Perturbation:
    """Lattice offset minimizing ``(u + tau l)^H (H H*)^-1 (u + tau l)``.

    This is the power-minimizing integer perturbation for channel
    inversion, for which the minimized form equals the transmit
    normalization gamma.
    """
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")
    k = H.shape[0]
    a = H @ H.conj().T
    q = _hermitize(cho_solve(cho_factor(a, lower=False), np.eye(k)))
    return _discrete_from_quad(q, u, tau, window)


def discrete_perturbation_for_precoder(
    G: Precoder, u: np.ndarray, tau: float, window: SearchWindow
) -> Perturbation:
    """Discrete search against an arbitrary precoder's Gram matrix.

    Minimizes the actual transmit normalization ``||G (u + tau l)||^2``;
    for channel inversion this coincides with :func:`discrete_perturbation`.
    """
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")
    return _discrete_from_quad(G.gram, u, tau, window)


def combined_perturbation(
    G: Precoder,
    u: np.ndarray,
    tau: float,
    users: int,
    sigma2: float,
    window: SearchWindow,
) -> Perturbation:
    """Joint (l, p): continuous formula applied to ``u + tau l``, l by expected MSE.

    The expected MSE ``J(l) = ||p(l)||^2 + gamma(l) K sigma^2`` is
    minimized over the window; ``p(l)`` then comes from the closed form
    with ``u + tau l`` in place of ``u``.  At ``sigma2 = 0`` every J
    vanishes and the canonical tie-break keeps ``l = 0``, i.e. plain
    unperturbed transmission.
    """
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")
    a = _noise_weight(users, sigma2)
    k = u.size
    zeros = np.zeros(k, dtype=complex)
    if a == 0.0:
        return Perturbation(l=zeros, p=zeros, gamma=gamma_of(G, u, zeros), objective=0.0)
    m = G.gram
    factor = cho_factor(np.eye(k) + a * m, lower=False)
    qj = _hermitize(a * cho_solve(factor, m))
    l = _argmin_offset(qj, u, tau, window.radius)
    p = -a * cho_solve(factor, m @ (u + tau * l))
    g = gamma_of(G, u, tau * l + p)
    return Perturbation(l=l, p=p, gamma=g, objective=float(np.vdot(p, p).real + g * a))


def _discrete_from_quad(
    quad: np.ndarray, u: np.ndarray, tau: float, window: SearchWindow
) -> Perturbation:
    l = _argmin_offset(quad, u, tau, window.radius)
    w = u + tau * l
    cost = float(np.real(np.vdot(w, quad @ w)))
    return Perturbation(l=l, p=np.zeros(u.size, dtype=complex), gamma=cost, objective=cost)


def _argmin_offset(quad: np.ndarray, u: np.ndarray, tau: float, radius: int) -> np.ndarray:
    """Gaussian-integer l in the window minimizing ``(u + tau l)^H quad (u + tau l)``.

    Branch-and-bound on the Cholesky factor of the real embedding of
    ``quad``; exact cost ties resolve to the canonical candidate order.
    """
    k = u.size
    if radius == 0:
        return np.zeros(k, dtype=complex)
    ar = quad.real
    ai = quad.imag
    qr = np.block([[ar, -ai], [ai, ar]])
    qr = 0.5 * (qr + qr.T)
    try:
        cho = np.linalg.cholesky(qr)
    except np.linalg.LinAlgError:
        # PSD-singular embedding (e.g. vanishing noise); nudge onto the PD cone.
        jitter = 1e-14 * max(float(np.trace(qr)) / (2 * k), np.finfo(float).tiny)
        cho = np.linalg.cholesky(qr + jitter * np.eye(2 * k))
    r = cho.T
    ur = np.concatenate([u.real, u.imag])
    y = -(r @ ur) / tau
    z = _sphere_argmin(r, y, radius, k)
    return z[:k] + 1j * z[k:]


def _level_candidates(center: float, radius: int) -> list[int]:
    """Window integers ordered by distance to ``center`` (lower value first on ties)."""
    v0 = int(round(center))
    v0 = min(radius, max(-radius, v0))
    out = [v0]
    lo, hi = v0 - 1, v0 + 1
    while lo >= -radius or hi <= radius:
        if lo < -radius:
            out.append(hi)
            hi += 1
        elif hi > radius or abs(center - lo) <= abs(hi - center):
            out.append(lo)
            lo -= 1
        else:
            out.append(hi)
            hi += 1
    return out


def _canonical_key(z: list[int], k: int) -> tuple:
    key = []
    for i in range(k):
        re, im = z[i], z[k + i]
        key += [abs(re), re, abs(im), im]
    return tuple(key)


def _sphere_argmin(r: np.ndarray, y: np.ndarray, radius: int, k: int) -> np.ndarray:
    """Depth-first search for z in {-radius..radius}^(2k) minimizing ||r z - y||^2."""
    n = y.size
    rows = r.tolist()
    ys = y.tolist()
    z = [0] * n
    best_cost = np.inf
    best_z: list[int] | None = None
    best_key: tuple | None = None

    def descend(level: int, partial: float) -> None:
        nonlocal best_cost, best_z, best_key
        row = rows[level]
        s = ys[level]
        for j in range(level + 1, n):
            s -= row[j] * z[j]
        rll = row[level]
        for v in _level_candidates(s / rll, radius):
            t = rll * v - s
            cost = partial + t * t
            if cost > best_cost:
                break  # candidates are distance-ordered; the rest only cost more
            z[level] = v
            if level == 0:
                if cost < best_cost:
                    best_cost, best_z, best_key = cost, z.copy(), _canonical_key(z, k)
                else:  # exact tie
                    key = _canonical_key(z, k)
                    if best_key is None or key < best_key:
                        best_z, best_key = z.copy(), key
            else:
                descend(level - 1, cost)

    descend(n - 1, 0.0)
    assert best_z is not None
    return np.array(best_z, dtype=float)

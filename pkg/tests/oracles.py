"""Independent reference implementations used to check the production paths.

Everything here deliberately avoids the package's internal routes:
searches are unpruned exhaustive enumerations over literal cost formulas,
the continuous minimizer is a generic numerical optimizer, and matrix
inverses are formed explicitly.
"""

import itertools

import numpy as np
import scipy.optimize


def canonical_coordinate_order(radius):
    """Integers -radius..radius ranked by (magnitude, value): 0, -1, 1, -2, 2, ..."""
    return sorted(range(-radius, radius + 1), key=lambda t: (abs(t), t))


def enumerate_offsets(k, radius):
    """All Gaussian-integer vectors in the window, in canonical tie-break order."""
    order = canonical_coordinate_order(radius)
    for parts in itertools.product(order, repeat=2 * k):
        yield np.array(parts[0::2], dtype=float) + 1j * np.array(parts[1::2], dtype=float)


def brute_force_discrete(H, u, tau, radius):
    """Exhaustive argmin of (u + tau l)^H (H H*)^-1 (u + tau l)."""
    q = np.linalg.inv(H @ H.conj().T)
    best_l = None
    best_cost = None
    for l in enumerate_offsets(u.size, radius):
        w = u + tau * l
        cost = float(np.real(w.conj() @ (q @ w)))
        if best_cost is None or cost < best_cost:
            best_l, best_cost = l, cost
    return best_l, best_cost


def brute_force_combined(G_matrix, u, tau, users, sigma2, radius):
    """Exhaustive argmin of the expected MSE J(l) = ||p(l)||^2 + gamma(l) K sigma2.

    For each candidate the continuous closed form is applied to u + tau l
    with an explicit inverse, and gamma is the direct squared norm of the
    precoded vector.
    """
    a = users * sigma2
    m = G_matrix.conj().T @ G_matrix
    k = u.size
    w_inv = np.linalg.inv(np.eye(k) + a * m)
    best = None
    for l in enumerate_offsets(k, radius):
        p = -a * (w_inv @ (m @ (u + tau * l)))
        s = G_matrix @ (u + tau * l + p)
        gamma = float(np.real(s.conj() @ s))
        cost = float(np.real(p.conj() @ p)) + gamma * a
        if best is None or cost < best[2]:
            best = (l, p, cost, gamma)
    return best[0], best[1], best[2], best[3]


def sinr_denominator(p, u, gram, users, sigma2):
    """Literal SINR denominator D as a function of the perturbation p."""
    a = users * sigma2
    mp = gram @ p
    return float(
        np.real(p.conj() @ p)
        + a * np.real(p.conj() @ mp)
        + 2.0 * a * np.real(u.conj() @ mp)
        + a * np.real(u.conj() @ (gram @ u))
    )


def expected_mse(p, u, gram, users, sigma2):
    """Expected ||p + sqrt(gamma) n||^2 with E||n||^2 = K sigma2."""
    w = u + p
    gamma = float(np.real(w.conj() @ (gram @ w)))
    return float(np.real(p.conj() @ p)) + gamma * users * sigma2


def numeric_continuous_minimizer(u, gram, users, sigma2):
    """Minimize D numerically over p in C^K (BFGS on the real embedding)."""
    k = u.size

    def cost(x):
        p = x[:k] + 1j * x[k:]
        return sinr_denominator(p, u, gram, users, sigma2)

    res = scipy.optimize.minimize(
        cost, np.zeros(2 * k), method="BFGS", options={"gtol": 1e-12, "maxiter": 5000}
    )
    return res.x[:k] + 1j * res.x[k:]


def central_difference_gradient(f, p, step=1e-6):
    """Gradient of a real function of a complex vector, per real coordinate."""
    k = p.size
    grad = np.zeros(2 * k)
    for i in range(2 * k):
        d = np.zeros(2 * k)
        d[i] = step
        dp = d[:k] + 1j * d[k:]
        grad[i] = (f(p + dp) - f(p - dp)) / (2.0 * step)
    return grad

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vppsim import (
    DegenerateGamma,
    Modulation,
    combined_perturbation,
    continuous_perturbation,
    demodulate,
    detect,
    discrete_perturbation,
    fold_tau,
    inverse_precoder,
    make_constellation,
    modulate,
    no_perturbation,
    propagate,
    receive,
    regularized_precoder,
    sample_channel,
    sample_noise,
    tau,
    transmit,
    SearchWindow,
)

QPSK = make_constellation(Modulation.QPSK)
QAM16 = make_constellation(Modulation.QAM16)


def random_setup(seed, k=4, m=4, constellation=QPSK):
    rng = np.random.default_rng(seed)
    H = sample_channel(rng, k, m)
    bits = rng.integers(0, 2, size=k * constellation.bits_per_symbol).astype(np.uint8)
    u = modulate(bits, constellation)
    return rng, H, bits, u


class TestTransmit:
    def test_unit_power_always(self):
        for seed in range(50):
            _, H, _, u = random_setup(seed)
            G = inverse_precoder(H)
            tx = transmit(G, u, no_perturbation(G, u))
            assert abs(np.real(tx.x.conj() @ tx.x) - 1.0) < 1e-10

    def test_identity_channel_unit_symbols(self):
        G = inverse_precoder(np.eye(2, dtype=complex))
        u = np.array([1.0, 0.0], dtype=complex)
        tx = transmit(G, u, no_perturbation(G, u))
        assert tx.gamma == pytest.approx(1.0)
        assert np.allclose(tx.x, u)

    def test_gamma_equals_squared_norm_before_scaling(self):
        _, H, _, u = random_setup(1)
        G = inverse_precoder(H)
        pert = continuous_perturbation(G, u, users=4, sigma2=0.1)
        tx = transmit(G, u, pert)
        s = G.matrix @ (u + pert.p)
        assert tx.gamma == pytest.approx(float(np.real(s.conj() @ s)), rel=1e-12)

    def test_zero_signal_rejected(self):
        G = inverse_precoder(np.eye(2, dtype=complex))
        u = np.zeros(2, dtype=complex)
        with pytest.raises(DegenerateGamma):
            transmit(G, u, no_perturbation(G, u))

    def test_nonzero_offset_needs_tau(self):
        _, H, _, u = random_setup(0)  # this draw selects a nonzero offset
        G = inverse_precoder(H)
        pert = discrete_perturbation(H, u, tau(QPSK), SearchWindow(2))
        assert np.any(pert.l != 0)
        with pytest.raises(ValueError):
            transmit(G, u, pert)


class TestPropagate:
    def test_identity_channel_passthrough(self):
        _, H, _, u = random_setup(2, k=2, m=2)
        G = inverse_precoder(np.eye(2, dtype=complex))
        tx = transmit(G, u, no_perturbation(G, u))
        y = propagate(np.eye(2, dtype=complex), tx, np.zeros(2, dtype=complex))
        assert np.allclose(y, tx.x)

    def test_inversion_restores_scaled_data(self):
        _, H, _, u = random_setup(3)
        G = inverse_precoder(H)
        tx = transmit(G, u, no_perturbation(G, u))
        y = propagate(H, tx, np.zeros(4, dtype=complex))
        assert np.allclose(np.sqrt(tx.gamma) * y, u, atol=1e-8)

    def test_additive_noise(self):
        _, H, _, u = random_setup(4)
        G = inverse_precoder(H)
        tx = transmit(G, u, no_perturbation(G, u))
        n = np.full(4, 0.5 + 0.5j)
        clean = propagate(H, tx, np.zeros(4, dtype=complex))
        noisy = propagate(H, tx, n)
        assert np.allclose(noisy - clean, n)


class TestFoldTau:
    def test_documented_example(self):
        # Real part 5 with period 4 lands at 1.
        assert fold_tau(np.array([5.0 + 0.0j]), 4.0)[0] == pytest.approx(1.0 + 0.0j)

    def test_half_open_interval_upper_edge_kept(self):
        t = 4.0
        out = fold_tau(np.array([2.0 + 2.0j, -2.0 - 2.0j]), t)
        # +tau/2 maps to itself; -tau/2 maps to +tau/2.
        assert out[0] == pytest.approx(2.0 + 2.0j)
        assert out[1] == pytest.approx(2.0 + 2.0j)

    def test_inside_cell_untouched(self):
        rng = np.random.default_rng(0)
        t = tau(QPSK)
        y = rng.uniform(-t / 2 + 1e-9, t / 2, 100) + 1j * rng.uniform(
            -t / 2 + 1e-9, t / 2, 100
        )
        assert np.array_equal(fold_tau(y, t), y)

    def test_removes_integer_offsets(self):
        rng = np.random.default_rng(1)
        t = tau(QPSK)
        for _ in range(200):
            u = rng.uniform(-t / 2 + 1e-6, t / 2 - 1e-6, 4) + 1j * rng.uniform(
                -t / 2 + 1e-6, t / 2 - 1e-6, 4
            )
            l = rng.integers(-3, 4, 4) + 1j * rng.integers(-3, 4, 4)
            assert np.max(np.abs(fold_tau(u + t * l, t) - u)) < 1e-12

    def test_output_range(self):
        rng = np.random.default_rng(2)
        t = tau(QAM16)
        y = 30.0 * (rng.normal(size=500) + 1j * rng.normal(size=500))
        out = fold_tau(y, t)
        assert np.all(out.real > -t / 2) and np.all(out.real <= t / 2)
        assert np.all(out.imag > -t / 2) and np.all(out.imag <= t / 2)

    @given(
        st.floats(-50.0, 50.0),
        st.floats(-50.0, 50.0),
        st.sampled_from([Modulation.QPSK, Modulation.QAM16]),
    )
    @settings(max_examples=200, deadline=None)
    def test_idempotent(self, re, im, kind):
        t = tau(make_constellation(kind))
        y = np.array([re + 1j * im])
        once = fold_tau(y, t)
        twice = fold_tau(once, t)
        assert np.max(np.abs(twice - once)) < 1e-12

    def test_boundary_neighborhood_stays_in_cell(self):
        # Floats within an ulp of any cell image must fold into the cell
        # and stay put on a second fold.
        for t in (tau(QPSK), tau(QAM16)):
            edges = [m * t + t / 2.0 for m in range(-3, 4)]
            probes = []
            for e in edges:
                probes += [
                    np.nextafter(e, -np.inf),
                    e,
                    np.nextafter(e, np.inf),
                ]
            y = np.array(probes, dtype=complex)
            once = fold_tau(y, t)
            assert np.all(once.real > -t / 2) and np.all(once.real <= t / 2)
            assert np.array_equal(fold_tau(once, t), once)

    def test_rejects_nonpositive_period(self):
        with pytest.raises(ValueError):
            fold_tau(np.array([1.0 + 0j]), 0.0)


class TestReceive:
    def test_pure_scaling_without_folding(self):
        y = np.array([0.5 + 0.25j, -0.125j])
        est = receive(y, gamma=4.0, tau=None, folding=False)
        assert np.allclose(est.u_hat, 2.0 * y)

    def test_folding_applied(self):
        t = tau(QPSK)
        y = np.array([(0.1 + t) + 0.2j]) / 3.0
        est = receive(y, gamma=9.0, tau=t, folding=True)
        assert np.allclose(est.u_hat, [0.1 + 0.2j], atol=1e-12)

    def test_rejects_bad_gamma(self):
        with pytest.raises(ValueError):
            receive(np.array([1.0 + 0j]), gamma=0.0, tau=None, folding=False)

    def test_requires_tau_when_folding(self):
        with pytest.raises(ValueError):
            receive(np.array([1.0 + 0j]), gamma=1.0, tau=None, folding=True)


class TestNoiselessChains:
    """Full transmit/propagate/receive/detect loops with zero noise must be
    error free for every scheme and both constellations."""

    def run_chain(self, seed, constellation, scheme):
        rng, H, bits, u = random_setup(seed, constellation=constellation)
        t = tau(constellation)
        G = inverse_precoder(H)
        folding = scheme in ("discrete", "combined")
        if scheme == "none":
            pert = no_perturbation(G, u)
        elif scheme == "discrete":
            pert = discrete_perturbation(H, u, t, SearchWindow(2))
        elif scheme == "continuous":
            pert = continuous_perturbation(G, u, users=4, sigma2=0.0)
        else:
            pert = combined_perturbation(G, u, t, users=4, sigma2=0.0, window=SearchWindow(2))
        tx = transmit(G, u, pert, tau=t)
        y = propagate(H, tx, np.zeros(4, dtype=complex))
        est = receive(y, tx.gamma, tau=t if folding else None, folding=folding)
        return detect(est, constellation), bits

    @pytest.mark.parametrize("scheme", ["none", "discrete", "continuous", "combined"])
    @pytest.mark.parametrize("kind", [Modulation.QPSK, Modulation.QAM16])
    def test_error_free(self, scheme, kind):
        constellation = make_constellation(kind)
        for seed in range(100):
            got, want = self.run_chain(seed, constellation, scheme)
            assert np.array_equal(got, want), (scheme, kind, seed)

    def test_regularized_needs_no_folding_at_zero_noise(self):
        for seed in range(50):
            _, H, bits, u = random_setup(seed)
            G = regularized_precoder(H, 0.0)
            tx = transmit(G, u, no_perturbation(G, u))
            y = propagate(H, tx, np.zeros(4, dtype=complex))
            est = receive(y, tx.gamma, tau=None, folding=False)
            assert np.array_equal(detect(est, QPSK), bits)


class TestDetect:
    def test_matches_demodulate(self):
        rng = np.random.default_rng(0)
        y = rng.normal(size=8) + 1j * rng.normal(size=8)
        est = receive(y, gamma=1.0, tau=None, folding=False)
        assert np.array_equal(detect(est, QAM16), demodulate(y, QAM16))

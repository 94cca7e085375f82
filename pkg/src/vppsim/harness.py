"""Monte Carlo BER sweeps over SNR, with deterministic parallel aggregation.

Each trial draws a fresh channel, data vector, and noise vector from its
own substream (see :func:`vppsim.system.trial_rng`), so a sweep's output
is a pure function of (config, snrs, trials) no matter how many workers
execute it.  Early stopping is evaluated only at fixed block boundaries,
which keeps the stopping point itself worker-independent.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass

import numpy as np

from .modulation import make_constellation, modulate, tau
from .perturbation import (
    SearchWindow,
    combined_perturbation,
    continuous_perturbation,
    discrete_perturbation_for_precoder,
    no_perturbation,
)
from .precoding import IllConditioned, inverse_precoder, regularized_precoder
from .system import (
    PerturbationKind,
    PrecoderKind,
    SystemConfig,
    sample_channel,
    sample_noise,
    snr_to_sigma2,
    trial_rng,
)
from .transceiver import DegenerateGamma, detect, propagate, receive, transmit

# Trials between early-stop checks; fixed so the stopping point does not
# depend on worker count.
BLOCK_TRIALS = 2000
EARLY_STOP_MIN_ERRORS = 400
EARLY_STOP_MIN_TRIALS = 10_000

# A trial retries on IllConditioned / DegenerateGamma at most this often.
MAX_RESAMPLES = 100

CSV_HEADER = "snr_db,trials,bits,bit_errors,ber,resamples"


@dataclass(frozen=True)
class BerPoint:
    """Aggregate of one SNR point: trial/bit counts and the empirical BER."""

    snr_db: float
    trials: int
    bits: int
    bit_errors: int
    ber: float
    resamples: int


@dataclass(frozen=True, eq=False)
class BerCurve:
    config: SystemConfig
    points: tuple[BerPoint, ...]


def run_trial(
    cfg: SystemConfig, snr_db: float, rng: np.random.Generator
) -> tuple[int, int, int]:
    """One symbol-vector transmission; returns (bit_errors, bits, resamples).

    Draw order within the trial's stream is fixed: channel, data bits,
    noise.  An ill-conditioned channel or degenerate normalization redraws
    the whole trial from the same stream and is counted as a resample.
    """
    sigma2 = snr_to_sigma2(snr_db)
    const = make_constellation(cfg.modulation)
    t = tau(const)
    k = cfg.users
    window = SearchWindow(cfg.window)
    folding = cfg.perturbation_kind in (PerturbationKind.DISCRETE, PerturbationKind.COMBINED)

    resamples = 0
    while True:
        try:
            h = sample_channel(rng, k, cfg.tx_antennas)
            if cfg.precoder_kind is PrecoderKind.INVERSE:
                g = inverse_precoder(h)
            else:
                g = regularized_precoder(h, k * sigma2)
            bits = rng.integers(0, 2, size=k * const.bits_per_symbol, dtype=np.uint8)
            u = modulate(bits, const)
            if cfg.perturbation_kind is PerturbationKind.NONE:
                pert = no_perturbation(g, u)
            elif cfg.perturbation_kind is PerturbationKind.CONTINUOUS:
                pert = continuous_perturbation(g, u, k, sigma2)
            elif cfg.perturbation_kind is PerturbationKind.DISCRETE:
                pert = discrete_perturbation_for_precoder(g, u, t, window)
            else:
                pert = combined_perturbation(g, u, t, k, sigma2, window)
            tx = transmit(g, u, pert, t)
        except (IllConditioned, DegenerateGamma):
            resamples += 1
            if resamples > MAX_RESAMPLES:
                raise RuntimeError(
                    f"trial exceeded {MAX_RESAMPLES} resamples at snr_db={snr_db}"
                )
            continue
        n = sample_noise(rng, k, sigma2)
        y = propagate(h, tx, n)
        est = receive(y, tx.gamma, t, folding)
        rx_bits = detect(est, const)
        return int(np.count_nonzero(rx_bits != bits)), bits.size, resamples


def _run_range(cfg: SystemConfig, snr_db: float, point_index: int,
               start: int, stop: int) -> tuple[int, int, int]:
    errors = bits = resamples = 0
    for trial in range(start, stop):
        e, b, r = run_trial(cfg, snr_db, trial_rng(cfg.seed, point_index, trial))
        errors += e
        bits += b
        resamples += r
    return errors, bits, resamples


def _run_block(cfg: SystemConfig, snr_db: float, point_index: int,
               start: int, count: int, workers: int) -> tuple[int, int, int]:
    if workers <= 1 or count < 2 * workers:
        return _run_range(cfg, snr_db, point_index, start, start + count)
    bounds = np.linspace(start, start + count, workers + 1).astype(int)
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(
            pool.map(
                lambda ab: _run_range(cfg, snr_db, point_index, ab[0], ab[1]),
                zip(bounds[:-1], bounds[1:]),
            )
        )
    errors = sum(p[0] for p in parts)
    bits = sum(p[1] for p in parts)
    resamples = sum(p[2] for p in parts)
    return errors, bits, resamples


def sweep(
    cfg: SystemConfig,
    snrs,
    trials_per_point: int,
    *,
    early_stop: bool = True,
    workers: int = 1,
) -> BerCurve:
    """BER curve over an ascending SNR grid.

    ``trials_per_point`` is the per-point budget; with ``early_stop`` a
    point finishes once it has at least :data:`EARLY_STOP_MIN_ERRORS` bit
    errors and :data:`EARLY_STOP_MIN_TRIALS` trials, checked every
    :data:`BLOCK_TRIALS` trials.  Results are identical for any
    ``workers`` count.
    """
    snrs = [float(s) for s in snrs]
    if any(b <= a for a, b in zip(snrs, snrs[1:])):
        raise ValueError("snrs must be strictly increasing")
    if trials_per_point < 1:
        raise ValueError(f"trials_per_point must be >= 1, got {trials_per_point}")

    points = []
    for point_index, snr_db in enumerate(snrs):
        errors = bits = resamples = done = 0
        while done < trials_per_point:
            count = min(BLOCK_TRIALS, trials_per_point - done)
            e, b, r = _run_block(cfg, snr_db, point_index, done, count, workers)
            errors += e
            bits += b
            resamples += r
            done += count
            if early_stop and errors >= EARLY_STOP_MIN_ERRORS and done >= EARLY_STOP_MIN_TRIALS:
                break
        points.append(
            BerPoint(
                snr_db=snr_db,
                trials=done,
                bits=bits,
                bit_errors=errors,
                ber=errors / bits,
                resamples=resamples,
            )
        )
    return BerCurve(config=cfg, points=tuple(points))


def write_csv(curve: BerCurve, path) -> None:
    """Write a curve as CSV with a ``#``-prefixed config metadata block.

    Floats are written with :func:`repr`, which round-trips exactly and is
    deterministic, so identical curves produce byte-identical files.
    """
    cfg = curve.config
    lines = [
        "# vppsim ber curve",
        f"# tx_antennas={cfg.tx_antennas}",
        f"# users={cfg.users}",
        f"# noise_variance={cfg.noise_variance!r}",
        f"# modulation={cfg.modulation.value}",
        f"# precoder_kind={cfg.precoder_kind.value}",
        f"# perturbation_kind={cfg.perturbation_kind.value}",
        f"# seed={cfg.seed}",
        f"# window={cfg.window}",
        CSV_HEADER,
    ]
    for p in curve.points:
        lines.append(
            f"{p.snr_db!r},{p.trials},{p.bits},{p.bit_errors},{p.ber!r},{p.resamples}"
        )
    text = "\n".join(lines) + "\n"
    if hasattr(path, "write"):
        path.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def read_csv(path) -> BerCurve:
    """Parse a file written by :func:`write_csv` back into a BerCurve."""
    meta: dict[str, str] = {}
    points = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("# ")
                if "=" in body:
                    key, value = body.split("=", 1)
                    meta[key.strip()] = value.strip()
                continue
            if line == CSV_HEADER:
                continue
            snr, trials, bits, errs, ber, resamples = line.split(",")
            points.append(
                BerPoint(
                    snr_db=float(snr),
                    trials=int(trials),
                    bits=int(bits),
                    bit_errors=int(errs),
                    ber=float(ber),
                    resamples=int(resamples),
                )
            )
    from .system import Modulation  # local to avoid polluting module namespace

    cfg = SystemConfig(
        tx_antennas=int(meta["tx_antennas"]),
        users=int(meta["users"]),
        noise_variance=float(meta["noise_variance"]),
        modulation=Modulation(meta["modulation"]),
        precoder_kind=PrecoderKind(meta["precoder_kind"]),
        perturbation_kind=PerturbationKind(meta["perturbation_kind"]),
        seed=int(meta["seed"]),
        window=int(meta["window"]),
    )
    return BerCurve(config=cfg, points=tuple(points))


def snr_at_ber(curve: BerCurve, target_ber: float) -> float:
    """SNR (dB) where the curve crosses ``target_ber``, log-linear interpolated.

    Scans ascending SNR for the first adjacent pair bracketing the target
    with positive BERs; raises ValueError if the curve never crosses.
    """
    if target_ber <= 0:
        raise ValueError("target_ber must be positive")
    pts = [p for p in curve.points if p.ber > 0]
    for lo, hi in zip(pts, pts[1:]):
        if lo.ber >= target_ber >= hi.ber:
            if lo.ber == hi.ber:
                return lo.snr_db
            f = (np.log10(lo.ber) - np.log10(target_ber)) / (
                np.log10(lo.ber) - np.log10(hi.ber)
            )
            return float(lo.snr_db + f * (hi.snr_db - lo.snr_db))
    raise ValueError(f"curve never crosses ber={target_ber}")

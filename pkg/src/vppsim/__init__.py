"""Vector-perturbation precoding simulator for the multi-user MIMO downlink.

Channel-inversion and regularized-inversion precoding with discrete,
continuous, and combined vector perturbation, plus a Monte Carlo harness
for BER-vs-SNR sweeps.
"""

from .harness import (
    BerCurve,
    BerPoint,
    read_csv,
    run_trial,
    snr_at_ber,
    sweep,
    write_csv,
)
from .modulation import Constellation, demodulate, make_constellation, modulate, tau
from .perturbation import (
    Perturbation,
    SearchWindow,
    combined_perturbation,
    continuous_perturbation,
    discrete_perturbation,
    discrete_perturbation_for_precoder,
    gamma_of,
    no_perturbation,
)
from .precoding import IllConditioned, Precoder, inverse_precoder, regularized_precoder
from .system import (
    Modulation,
    PerturbationKind,
    PrecoderKind,
    SystemConfig,
    sample_channel,
    sample_noise,
    snr_to_sigma2,
    trial_rng,
)
from .transceiver import (
    DegenerateGamma,
    RxEstimate,
    TxSignal,
    detect,
    fold_tau,
    propagate,
    receive,
    transmit,
)

__all__ = [
    "BerCurve",
    "BerPoint",
    "Constellation",
    "DegenerateGamma",
    "IllConditioned",
    "Modulation",
    "Perturbation",
    "PerturbationKind",
    "Precoder",
    "PrecoderKind",
    "RxEstimate",
    "SearchWindow",
    "SystemConfig",
    "TxSignal",
    "combined_perturbation",
    "continuous_perturbation",
    "demodulate",
    "detect",
    "discrete_perturbation",
    "discrete_perturbation_for_precoder",
    "fold_tau",
    "gamma_of",
    "inverse_precoder",
    "make_constellation",
    "modulate",
    "no_perturbation",
    "propagate",
    "read_csv",
    "receive",
    "regularized_precoder",
    "run_trial",
    "sample_channel",
    "sample_noise",
    "snr_at_ber",
    "snr_to_sigma2",
    "sweep",
    "tau",
    "transmit",
    "trial_rng",
    "write_csv",
]

__version__ = "0.1.0"

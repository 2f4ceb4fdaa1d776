"""OFDM link simulator with receiver IQ-imbalance estimation and compensation.

The library couples a block-fading multipath OFDM link with a receiver
IQ-imbalance model, a two-pilot-symbol time-domain least-squares estimator
of the direct and image channel responses, a one-step frequency-domain
eliminator that removes the image at 2N complex multiplies per symbol, a
per-bin least-squares baseline, and a reproducible Monte-Carlo harness.
"""

from .channel import (
    PowerDelayProfile,
    add_awgn,
    apply_channel,
    draw_cir,
    effective_response,
    frequency_response,
    typical_urban_profile,
)
from .equalization import (
    GeCoefficients,
    MultiplyCounter,
    ge_equalize,
    ideal_zf_equalize,
    postfft_ls_equalize,
    snr_loss_ge,
)
from .estimation import (
    ChannelEstimate,
    FdEstimate,
    assemble_za,
    assemble_zb,
    fd_ls_estimate,
    make_fd_training,
    predict_mse,
    td_ls_estimate,
)
from .harness import (
    BerRecord,
    ConfigError,
    SimConfig,
    run_ber_sweep,
    run_mse_check,
    run_noise_suppression_check,
    run_snr_loss_check,
    run_snr_loss_surface,
)
from .iq import IqParams, distort_freq, distort_time, iq_params_from
from .ofdm import OfdmConfig, qpsk_demap, qpsk_map, strip_cp_and_fft, to_time_with_cp
from .pilots import PilotPair, build_pilot_pair, mirrored_pilots
from .spectral import dft, inverse_dft, mirror

__version__ = "0.1.0"

__all__ = [
    "PowerDelayProfile",
    "typical_urban_profile",
    "draw_cir",
    "frequency_response",
    "effective_response",
    "apply_channel",
    "add_awgn",
    "IqParams",
    "iq_params_from",
    "distort_time",
    "distort_freq",
    "OfdmConfig",
    "qpsk_map",
    "qpsk_demap",
    "to_time_with_cp",
    "strip_cp_and_fft",
    "PilotPair",
    "build_pilot_pair",
    "mirrored_pilots",
    "ChannelEstimate",
    "FdEstimate",
    "assemble_za",
    "assemble_zb",
    "td_ls_estimate",
    "predict_mse",
    "make_fd_training",
    "fd_ls_estimate",
    "GeCoefficients",
    "MultiplyCounter",
    "ge_equalize",
    "postfft_ls_equalize",
    "ideal_zf_equalize",
    "snr_loss_ge",
    "SimConfig",
    "BerRecord",
    "ConfigError",
    "run_ber_sweep",
    "run_mse_check",
    "run_noise_suppression_check",
    "run_snr_loss_check",
    "run_snr_loss_surface",
    "dft",
    "inverse_dft",
    "mirror",
]

"""Block-fading multipath channel: tapped-delay-line draws, frequency
response, cyclic-prefix convolution and AWGN injection.

The channel impulse response (CIR) is a length L+1 vector of sample-spaced
complex tap gains, drawn once per frame and held constant within it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import dft

__all__ = [
    "PowerDelayProfile",
    "typical_urban_profile",
    "draw_cir",
    "frequency_response",
    "effective_response",
    "apply_channel",
    "add_awgn",
]

# 6-path typical-urban profile: delays in microseconds, mean powers in dB.
TU_DELAYS_US = (0.0, 0.2, 0.5, 1.6, 2.3, 5.0)
TU_POWERS_DB = (-3.0, 0.0, -2.0, -6.0, -8.0, -10.0)


@dataclass(frozen=True)
class PowerDelayProfile:
    """Multipath power-delay profile with unit total mean power.

    ``delays`` are per-path delays in seconds (nonnegative, strictly
    increasing); ``powers`` are linear mean powers normalized to sum to 1.
    """

    delays: tuple[float, ...]
    powers: tuple[float, ...]

    def __post_init__(self):
        delays = np.asarray(self.delays, dtype=float)
        powers = np.asarray(self.powers, dtype=float)
        if delays.ndim != 1 or delays.size == 0 or delays.shape != powers.shape:
            raise ValueError("delays and powers must be equal-length 1-D sequences")
        if np.any(delays < 0) or np.any(np.diff(delays) <= 0):
            raise ValueError("delays must be nonnegative and strictly increasing")
        if np.any(powers <= 0):
            raise ValueError("path powers must be positive")
        total = powers.sum()
        object.__setattr__(self, "delays", tuple(delays))
        object.__setattr__(self, "powers", tuple(powers / total))

    @classmethod
    def from_db(cls, delays_us, powers_db) -> "PowerDelayProfile":
        """Build from delays in microseconds and mean powers in dB."""
        delays = tuple(d * 1e-6 for d in delays_us)
        powers = tuple(10.0 ** (p / 10.0) for p in powers_db)
        return cls(delays, powers)


def typical_urban_profile() -> PowerDelayProfile:
    """The default 6-path typical-urban profile (max delay 5 microseconds)."""
    return PowerDelayProfile.from_db(TU_DELAYS_US, TU_POWERS_DB)


def draw_cir(profile: PowerDelayProfile, sample_period: float, length: int, rng) -> np.ndarray:
    """Draw one block-fading CIR of ``length`` sample-spaced taps.

    Each profile path contributes an independent zero-mean circular complex
    Gaussian gain with variance equal to its mean power, placed on the tap
    nearest to its delay.  Paths rounding to the same tap add up, so
    E[||h||^2] = 1 regardless of the sampling grid.
    """
    if sample_period <= 0:
        raise ValueError("sample_period must be positive")
    if length < 1:
        raise ValueError("CIR length must be at least 1")
    delays = np.asarray(profile.delays)
    powers = np.asarray(profile.powers)
    taps = np.rint(delays / sample_period).astype(int)
    if taps.max() >= length:
        raise ValueError(
            f"profile too long: path at {delays[np.argmax(taps)] * 1e6:.2f} us maps to "
            f"tap {taps.max()}, beyond the {length}-tap window"
        )
    gains = (rng.standard_normal(len(powers)) + 1j * rng.standard_normal(len(powers)))
    gains *= np.sqrt(powers / 2.0)
    h = np.zeros(length, dtype=np.complex128)
    np.add.at(h, taps, gains)
    return h


def frequency_response(h, n: int) -> np.ndarray:
    """Unitary n-point DFT of the zero-padded CIR."""
    h = np.asarray(h, dtype=np.complex128)
    if h.ndim != 1 or h.size > n:
        raise ValueError(f"CIR must be 1-D with at most {n} taps, got shape {h.shape}")
    padded = np.zeros(n, dtype=np.complex128)
    padded[: h.size] = h
    return dft(padded)


def effective_response(h, n: int) -> np.ndarray:
    """Per-bin gain seen through the unitary transmit/receive transform pair.

    Circular convolution by the CIR multiplies each post-FFT bin by
    sqrt(n) times the unitary response; estimators and equalizers work in
    this effective scale throughout.
    """
    return np.sqrt(n) * frequency_response(h, n)


def apply_channel(x, h, cp_len: int) -> np.ndarray:
    """Convolve a cyclic-prefixed symbol with the CIR.

    Linear convolution truncated to the input window; once the prefix is
    stripped the result equals circular convolution of the core symbol with
    ``h``, provided the channel memory fits inside the prefix.
    """
    x = np.asarray(x, dtype=np.complex128)
    h = np.asarray(h, dtype=np.complex128)
    if h.size - 1 > cp_len:
        raise ValueError(
            f"cyclic prefix ({cp_len} samples) shorter than channel memory ({h.size - 1})"
        )
    return np.convolve(x, h)[: x.size]


def add_awgn(x, variance: float, rng) -> np.ndarray:
    """Add i.i.d. circular complex Gaussian noise of the given power per sample."""
    if variance < 0:
        raise ValueError("noise variance must be nonnegative")
    x = np.asarray(x, dtype=np.complex128)
    if variance == 0:
        return x.copy()
    noise = rng.standard_normal(x.shape) + 1j * rng.standard_normal(x.shape)
    return x + noise * np.sqrt(variance / 2.0)

"""OFDM modulation plumbing: QPSK mapping, IFFT and cyclic-prefix handling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import dft, inverse_dft

__all__ = [
    "OfdmConfig",
    "qpsk_map",
    "qpsk_demap",
    "to_time_with_cp",
    "strip_cp_and_fft",
]


@dataclass(frozen=True)
class OfdmConfig:
    """Link parameters: subcarrier count, prefix length, bandwidth, mapping."""

    n: int = 128
    cp_len: int = 16
    bandwidth: float = 2e6
    modulation: str = "qpsk"

    def __post_init__(self):
        if self.n < 8 or (self.n & (self.n - 1)) != 0:
            raise ValueError(f"subcarrier count must be a power of two >= 8, got {self.n}")
        if not 0 < self.cp_len <= self.n:
            raise ValueError(f"cyclic prefix must lie in (0, n], got {self.cp_len}")
        if self.bandwidth <= 0:
            raise ValueError("bandwidth must be positive")
        if self.modulation.lower() != "qpsk":
            raise ValueError(f"unsupported modulation {self.modulation!r}")
        object.__setattr__(self, "modulation", self.modulation.lower())

    @property
    def sample_period(self) -> float:
        return 1.0 / self.bandwidth


def qpsk_map(bits) -> np.ndarray:
    """Gray-map bit pairs to unit-power QPSK: (b1, b0) -> ((1-2*b1) + j(1-2*b0))/sqrt(2)."""
    bits = np.asarray(bits, dtype=np.int64).ravel()
    if bits.size % 2:
        raise ValueError(f"bit count must be even, got {bits.size}")
    b = bits.reshape(-1, 2)
    return ((1 - 2 * b[:, 0]) + 1j * (1 - 2 * b[:, 1])) / np.sqrt(2.0)


def qpsk_demap(symbols) -> np.ndarray:
    """Hard sign decisions per bin; exact inverse of :func:`qpsk_map` on clean input."""
    symbols = np.asarray(symbols, dtype=np.complex128).ravel()
    bits = np.empty((symbols.size, 2), dtype=np.int64)
    bits[:, 0] = symbols.real < 0
    bits[:, 1] = symbols.imag < 0
    return bits.ravel()


def to_time_with_cp(S, cfg: OfdmConfig) -> np.ndarray:
    """IFFT a spectrum and prepend its last cp_len samples as cyclic prefix."""
    S = np.asarray(S, dtype=np.complex128)
    if S.shape != (cfg.n,):
        raise ValueError(f"expected spectrum of length {cfg.n}, got shape {S.shape}")
    x = inverse_dft(S)
    return np.concatenate([x[-cfg.cp_len :], x])


def strip_cp_and_fft(x, cfg: OfdmConfig) -> np.ndarray:
    """Drop the cyclic prefix and return the unitary FFT of the core symbol."""
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (cfg.n + cfg.cp_len,):
        raise ValueError(
            f"expected {cfg.n + cfg.cp_len} samples (core + prefix), got shape {x.shape}"
        )
    return dft(x[cfg.cp_len :])

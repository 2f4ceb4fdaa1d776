"""Unitary DFT primitives and the conjugate-mirror operator.

Frequency-domain vectors use the receiver convention: index 0 is the DC bin
and index N/2 is the Nyquist bin.  All transforms carry the symmetric
1/sqrt(N) normalization, so ``dft`` is unitary and ``inverse_dft`` is its
exact adjoint.  Sizes must be powers of two (radix-2 grids only).
"""

from __future__ import annotations

import numpy as np

__all__ = ["dft", "inverse_dft", "mirror"]


def _as_radix2_vector(x, name: str) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128)
    if x.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {x.shape}")
    n = x.size
    if n < 2 or (n & (n - 1)) != 0:
        raise ValueError(f"{name} length must be a power of two >= 2, got {n}")
    return x


def dft(x) -> np.ndarray:
    """Unitary DFT of a time-domain vector (forward scaling 1/sqrt(N))."""
    x = _as_radix2_vector(x, "x")
    return np.fft.fft(x) / np.sqrt(x.size)


def inverse_dft(X) -> np.ndarray:
    """Adjoint of :func:`dft`; exact inverse thanks to the unitary scaling."""
    X = _as_radix2_vector(X, "X")
    return np.fft.ifft(X) * np.sqrt(X.size)


def mirror(X) -> np.ndarray:
    """Conjugate mirror of a spectrum.

    Bin 0 maps to its own conjugate and bin k to the conjugate of bin N-k,
    the unique index map with mirror(dft(x)) == dft(conj(x)).  Applying it
    twice is exactly the identity.
    """
    X = _as_radix2_vector(X, "X")
    out = np.conj(X)
    out[1:] = out[:0:-1]
    return out

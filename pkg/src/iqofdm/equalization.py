"""Frequency-domain equalizers and the imbalance SNR-loss bound.

The one-step eliminator forms z - kappa*mirror(z), which cancels the image
term in one shot, then divides by the precomputed per-bin gain
mu*g(k) - kappa*conj(nu)*g(k).  That is one complex multiply for the kappa
product and one for the reciprocal gain: 2N multiplies per symbol.  The
baseline instead solves the per-mirror-pair 2x2 system from per-bin gain
estimates.  Bins whose divisor collapses are flagged erased rather than
divided through.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .estimation import ChannelEstimate, FdEstimate
from .iq import IqParams
from .spectral import mirror

__all__ = [
    "GeCoefficients",
    "MultiplyCounter",
    "ge_equalize",
    "postfft_ls_equalize",
    "ideal_zf_equalize",
    "snr_loss_ge",
]

ERASURE_TOL = 1e-12


class MultiplyCounter:
    """Counts complex multiplies performed by instrumented equalizer calls."""

    def __init__(self):
        self.count = 0

    def add(self, n: int):
        self.count += int(n)


@dataclass(frozen=True)
class GeCoefficients:
    """Per-frame coefficients of the one-step eliminator.

    ``inv_denom`` holds the reciprocals of mu_H - kappa*nu_star_H (zeroed on
    unusable bins) so equalizing a symbol costs exactly two elementwise
    multiplies.
    """

    kappa: complex
    denom: np.ndarray
    usable: np.ndarray
    inv_denom: np.ndarray

    @classmethod
    def from_estimate(cls, est: ChannelEstimate) -> "GeCoefficients":
        return cls._build(est.kappa_hat, est.mu_H, est.nu_star_H)

    @classmethod
    def from_true(cls, p: IqParams, g_eff: np.ndarray) -> "GeCoefficients":
        """Genie coefficients from exact imbalance parameters and channel."""
        g_eff = np.asarray(g_eff, dtype=np.complex128)
        return cls._build(p.kappa, p.mu * g_eff, np.conj(p.nu) * g_eff)

    @classmethod
    def _build(cls, kappa: complex, mu_H, nu_star_H) -> "GeCoefficients":
        denom = np.asarray(mu_H, dtype=np.complex128) - kappa * np.asarray(
            nu_star_H, dtype=np.complex128
        )
        usable = np.abs(denom) >= ERASURE_TOL
        inv = np.zeros_like(denom)
        inv[usable] = 1.0 / denom[usable]
        return cls(kappa=complex(kappa), denom=denom, usable=usable, inv_denom=inv)


def ge_equalize(Z, est, counter: MultiplyCounter | None = None):
    """One-step elimination detector.

    ``est`` may be a :class:`ChannelEstimate` or prebuilt
    :class:`GeCoefficients` (build once per frame, the per-symbol cost is
    then 2N complex multiplies, tallied on ``counter`` when given).
    Returns (symbols, erased) where erased bins are zeroed and flagged.
    """
    coeffs = est if isinstance(est, GeCoefficients) else GeCoefficients.from_estimate(est)
    Z = np.asarray(Z, dtype=np.complex128)
    if Z.shape != coeffs.denom.shape:
        raise ValueError(f"spectrum shape {Z.shape} does not match coefficients")
    num = Z - coeffs.kappa * mirror(Z)
    if counter is not None:
        counter.add(Z.size)
    s_hat = num * coeffs.inv_denom
    if counter is not None:
        counter.add(Z.size)
    erased = ~coeffs.usable
    return s_hat, erased


def postfft_ls_equalize(Z, fd: FdEstimate):
    """Per-mirror-pair 2x2 solve using per-bin gain estimates.

    Inverts [z; mirror(z)] = [[a, b], [mirror(b), mirror(a)]] [s; mirror(s)]
    bin by bin (DC and Nyquist reduce to the scalar self-paired case).
    Pairs with vanishing determinant are erased.
    """
    Z = np.asarray(Z, dtype=np.complex128)
    a, b = fd.a, fd.b
    if Z.shape != a.shape:
        raise ValueError(f"spectrum shape {Z.shape} does not match estimate")
    am, bm = mirror(a), mirror(b)
    det = a * am - b * bm
    usable = np.abs(det) >= ERASURE_TOL
    s_hat = np.zeros_like(Z)
    s_hat[usable] = (am * Z - b * mirror(Z))[usable] / det[usable]
    return s_hat, ~usable


def ideal_zf_equalize(Z, g_eff):
    """Per-bin zero forcing with a known channel: z(k) / g(k)."""
    Z = np.asarray(Z, dtype=np.complex128)
    g = np.asarray(g_eff, dtype=np.complex128)
    if Z.shape != g.shape:
        raise ValueError(f"spectrum shape {Z.shape} does not match channel response")
    usable = np.abs(g) >= ERASURE_TOL
    s_hat = np.zeros_like(Z)
    s_hat[usable] = Z[usable] / g[usable]
    return s_hat, ~usable


def snr_loss_ge(p: IqParams, kappa: complex) -> float:
    """Post-elimination SNR loss in dB for white noise at the detector input.

    Eliminating the image with ratio ``kappa`` colors the noise by
    (1 + |kappa|^2) and scales the signal by |mu - kappa*conj(nu)|^2; the
    loss is the dB ratio of the two (0 dB when kappa=0 and mu=1).
    """
    num = 1.0 + abs(kappa) ** 2
    den = (
        abs(p.mu) ** 2
        - 2.0 * (kappa * np.conj(p.nu) * np.conj(p.mu)).real
        + abs(kappa) ** 2 * abs(p.nu) ** 2
    )
    if den <= ERASURE_TOL:
        raise ValueError("nonpositive denominator: elimination is degenerate at this point")
    return float(10.0 * np.log10(num / den))

"""Channel and imbalance estimation from the two-symbol pilot preamble.

The direct path scales each bin by mu*g and the image path couples it with
its mirror bin through conj(nu)*g, where g is the per-bin effective channel
gain.  Because each pilot symbol lights only half the band, the two received
pilot spectra can be re-stacked into one full-band observation of mu*g and
one of conj(nu)*g.  Dividing out the known pilots and truncating the inverse
transform to the channel memory (L+1 taps out of N bins) averages the
per-bin noise down by a factor N/(L+1) before the responses are rebuilt.

All estimates live in the effective-gain scale of the receive FFT (the
sqrt(N) of the unitary transform folded into the taps), so they divide
received spectra directly.

A per-bin least-squares baseline (``fd_ls_estimate``) fits the same
two-parameter model independently on every bin from full-band training
symbols; it needs no structure but keeps the full per-bin noise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import frequency_response
from .pilots import PilotPair
from .spectral import inverse_dft, mirror

__all__ = [
    "ChannelEstimate",
    "FdEstimate",
    "assemble_za",
    "assemble_zb",
    "td_ls_estimate",
    "predict_mse",
    "constellation_beta",
    "make_fd_training",
    "fd_ls_estimate",
]

KAPPA_DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class ChannelEstimate:
    """Joint estimate of the direct-path and image-path responses.

    ``mu_h`` and ``nu_star_h`` are the L+1 estimated taps of mu*g and
    conj(nu)*g (g the effective CIR); ``mu_H`` / ``nu_star_H`` their full
    N-bin responses; ``kappa_hat`` the image-to-direct ratio nu/conj(mu).
    """

    mu_h: np.ndarray
    nu_star_h: np.ndarray
    mu_H: np.ndarray
    nu_star_H: np.ndarray
    kappa_hat: complex


@dataclass(frozen=True)
class FdEstimate:
    """Per-bin baseline estimates: a(k) of the direct gain mu*g(k), b(k) of
    the image gain nu*mirror(g)(k)."""

    a: np.ndarray
    b: np.ndarray


def _check_pilot_spectra(z1, z2) -> tuple[np.ndarray, np.ndarray]:
    z1 = np.asarray(z1, dtype=np.complex128)
    z2 = np.asarray(z2, dtype=np.complex128)
    if z1.ndim != 1 or z1.shape != z2.shape:
        raise ValueError("received pilot spectra must be 1-D and equally sized")
    n = z1.size
    if n < 8 or (n & (n - 1)) != 0:
        raise ValueError(f"band size must be a power of two >= 8, got {n}")
    return z1, z2


def assemble_za(z1, z2) -> np.ndarray:
    """Stack the direct-path halves of the two received pilot spectra.

    Lower half from symbol 1, upper half from symbol 2; on the self-mirror
    DC/Nyquist bins the combination 0.5*z1 - 0.5j*z2 cancels the image tone
    and leaves the direct one.
    """
    z1, z2 = _check_pilot_spectra(z1, z2)
    n = z1.size
    za = np.empty(n, dtype=np.complex128)
    za[0] = 0.5 * z1[0] - 0.5j * z2[0]
    za[1 : n // 2] = z1[1 : n // 2]
    za[n // 2] = 0.5 * z1[n // 2] - 0.5j * z2[n // 2]
    za[n // 2 + 1 :] = z2[n // 2 + 1 :]
    return za


def assemble_zb(z1, z2) -> np.ndarray:
    """Stack the image-path halves and mirror the result.

    The complementary half-selection isolates the image contribution; the
    final mirror turns it into a direct observation of conj(nu)*g per bin.
    """
    z1, z2 = _check_pilot_spectra(z1, z2)
    n = z1.size
    zb_m = np.empty(n, dtype=np.complex128)
    zb_m[0] = 0.5 * z1[0] + 0.5j * z2[0]
    zb_m[1 : n // 2] = z2[1 : n // 2]
    zb_m[n // 2] = 0.5 * z1[n // 2] + 0.5j * z2[n // 2]
    zb_m[n // 2 + 1 :] = z1[n // 2 + 1 :]
    return mirror(zb_m)


def td_ls_estimate(z1, z2, pair: PilotPair, channel_order: int) -> ChannelEstimate:
    """Time-domain least-squares fit of the direct and image responses.

    ``channel_order`` is L, the channel memory in samples; the fit keeps
    L+1 taps.  Raises if any pilot template entry is zero or if the summed
    direct taps are too small to form the image-to-direct ratio.
    """
    z1, z2 = _check_pilot_spectra(z1, z2)
    n = z1.size
    taps = channel_order + 1
    if not 0 < taps <= n:
        raise ValueError(f"channel order must lie in [0, {n - 1}], got {channel_order}")
    if pair.n != n:
        raise ValueError(f"pilot pair is sized for {pair.n} bins, spectra have {n}")
    template = pair.template
    if np.any(template == 0):
        raise ValueError("pilot template contains zero entries; cannot divide them out")

    mu_h = inverse_dft(assemble_za(z1, z2) / template)[:taps]
    nu_star_h = inverse_dft(assemble_zb(z1, z2) / template)[:taps]

    direct_sum = mu_h.sum()
    if abs(direct_sum) < KAPPA_DEGENERATE_TOL:
        raise ValueError("degenerate image-to-direct ratio: direct taps sum to ~0")
    kappa_hat = complex(np.conj(nu_star_h.sum() / direct_sum))

    return ChannelEstimate(
        mu_h=mu_h,
        nu_star_h=nu_star_h,
        mu_H=frequency_response(mu_h, n),
        nu_star_H=frequency_response(nu_star_h, n),
        kappa_hat=kappa_hat,
    )


def constellation_beta(constellation: str = "qpsk") -> float:
    """Constellation factor E{|s|^2} / E{|1/s|^2} entering the MSE model."""
    if constellation.lower() != "qpsk":
        raise ValueError(
            f"beta is only defined here for constant-modulus QPSK, got {constellation!r}"
        )
    bits = np.array([[0, 0], [0, 1], [1, 0], [1, 1]])
    points = ((1 - 2 * bits[:, 0]) + 1j * (1 - 2 * bits[:, 1])) / np.sqrt(2.0)
    return float(np.mean(np.abs(points) ** 2) / np.mean(np.abs(1.0 / points) ** 2))


def predict_mse(n: int, channel_order: int, gamma: float, constellation: str = "qpsk") -> float:
    """Closed-form per-bin estimation MSE (L+1)*beta / (N*gamma).

    ``gamma`` is the linear per-bin SNR.  Holds for unit-power pilot
    templates; the time-domain truncation is what buys the 1/N.
    """
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    return (channel_order + 1) * constellation_beta(constellation) / (n * gamma)


def make_fd_training(n: int, n_t: int, rng, power: float = 1.0) -> np.ndarray:
    """Full-band QPSK training symbols for the per-bin baseline.

    Symbols come in pairs (t, j*t): rotating the second symbol by j makes
    the per-bin two-parameter fits orthogonal, so two symbols already
    determine every bin.  ``power`` is the per-bin transmit power.
    """
    if n_t < 2:
        raise ValueError(f"the per-bin fit needs at least two training symbols, got {n_t}")
    out = np.empty((n_t, n), dtype=np.complex128)
    for i in range(0, n_t, 2):
        bits = rng.integers(0, 2, size=(n, 2))
        t = ((1 - 2 * bits[:, 0]) + 1j * (1 - 2 * bits[:, 1])) / np.sqrt(2.0)
        t *= np.sqrt(power)
        out[i] = t
        if i + 1 < n_t:
            out[i + 1] = 1j * t
    return out


def fd_ls_estimate(received, sent) -> FdEstimate:
    """Per-bin least squares of z(k) = a(k)*t(k) + b(k)*mirror(t)(k).

    ``received`` and ``sent`` are (n_t, N) stacks of received and known
    training spectra.  Each bin solves its own 2x2 normal equations; a
    rank-deficient bin (training and mirrored training proportional across
    all symbols) raises a singular-fit error.
    """
    z = np.asarray(received, dtype=np.complex128)
    t = np.asarray(sent, dtype=np.complex128)
    if z.ndim != 2 or z.shape != t.shape:
        raise ValueError("received and sent must be matching (n_t, N) stacks")
    n_t, n = z.shape
    if n_t < 2:
        raise ValueError(f"the per-bin fit needs at least two training symbols, got {n_t}")

    tm = np.stack([mirror(row) for row in t])
    s11 = np.sum(np.abs(t) ** 2, axis=0)
    s22 = np.sum(np.abs(tm) ** 2, axis=0)
    s12 = np.sum(np.conj(t) * tm, axis=0)
    r1 = np.sum(np.conj(t) * z, axis=0)
    r2 = np.sum(np.conj(tm) * z, axis=0)
    det = s11 * s22 - np.abs(s12) ** 2

    scale = np.maximum(s11 * s22, 1e-300)
    bad = det <= 1e-10 * scale
    if np.any(bad):
        raise ValueError(
            f"singular per-bin fit at bins {np.flatnonzero(bad)[:8].tolist()}; "
            "training symbols and their mirrors are proportional there"
        )
    a = (s22 * r1 - s12 * r2) / det
    b = (s11 * r2 - np.conj(s12) * r1) / det
    return FdEstimate(a=a, b=b)

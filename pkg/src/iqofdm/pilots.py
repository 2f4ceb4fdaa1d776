"""Two-symbol pilot preamble with half-band occupancy.

The first pilot symbol carries the inner pilot vector s_p on the lower half
of the band and zeros on the upper half; the second symbol swaps the halves.
Both put a real tone of amplitude eta on the DC and Nyquist bins (rotated by
j on the second symbol).  The zeroed halves keep the direct and image
contributions of an IQ-imbalanced receiver on disjoint bins, which is what
lets the estimator separate them without any matrix inversion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import mirror

__all__ = ["PilotPair", "build_pilot_pair", "mirrored_pilots"]

ETA_RULES = ("sqrt", "literal")
# "paper" boosts each active pilot to roughly twice the data power so the
# preamble symbols carry full transmit energy; "unit" keeps per-pilot power
# equal to the data power.
POWER_RULES = ("paper", "unit")


@dataclass(frozen=True)
class PilotPair:
    """Frequency-domain pilot pair plus the inner pilots and tone amplitude."""

    s1: np.ndarray
    s2: np.ndarray
    s_p: np.ndarray
    eta: float

    @property
    def n(self) -> int:
        return self.s1.size

    @property
    def template(self) -> np.ndarray:
        """Per-bin pilot gains (eta; s_p; eta; s_p) divided out by the estimator."""
        n = self.n
        t = np.empty(n, dtype=np.complex128)
        t[0] = self.eta
        t[1 : n // 2] = self.s_p
        t[n // 2] = self.eta
        t[n // 2 + 1 :] = self.s_p
        return t


def build_pilot_pair(
    n: int,
    rng,
    p_avg: float = 1.0,
    eta_rule: str = "sqrt",
    power_rule: str = "paper",
) -> PilotPair:
    """Draw QPSK inner pilots and assemble the two pilot symbols.

    ``p_avg`` is the average transmit power of the data constellation.  The
    tone amplitude is sqrt(2*p_avg) under the default "sqrt" rule (tone
    power twice the data power) or the literal value 2*p_avg.  The inner
    pilot vector is scaled to total power (n-1)*p_avg ("paper") or
    (n/2-1)*p_avg ("unit").
    """
    if n < 8 or (n & (n - 1)) != 0:
        raise ValueError(f"pilot design needs a power-of-two band of >= 8 bins, got {n}")
    if eta_rule not in ETA_RULES:
        raise ValueError(f"eta_rule must be one of {ETA_RULES}, got {eta_rule!r}")
    if power_rule not in POWER_RULES:
        raise ValueError(f"power_rule must be one of {POWER_RULES}, got {power_rule!r}")
    if p_avg <= 0:
        raise ValueError("p_avg must be positive")

    eta = np.sqrt(2.0 * p_avg) if eta_rule == "sqrt" else 2.0 * p_avg
    half = n // 2 - 1
    total = (n - 1) * p_avg if power_rule == "paper" else half * p_avg
    points = rng.integers(0, 2, size=(half, 2))
    s_p = ((1 - 2 * points[:, 0]) + 1j * (1 - 2 * points[:, 1])) / np.sqrt(2.0)
    s_p *= np.sqrt(total / half)

    s1 = np.zeros(n, dtype=np.complex128)
    s1[0] = eta
    s1[1 : n // 2] = s_p
    s1[n // 2] = eta

    s2 = np.zeros(n, dtype=np.complex128)
    s2[0] = 1j * eta
    s2[n // 2] = 1j * eta
    s2[n // 2 + 1 :] = s_p

    return PilotPair(s1=s1, s2=s2, s_p=s_p, eta=float(eta))


def mirrored_pilots(pair: PilotPair) -> np.ndarray:
    """Upper-half slice of mirror(s1): the conjugate-reversed inner pilots."""
    return mirror(pair.s1)[pair.n // 2 + 1 :]

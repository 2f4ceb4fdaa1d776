"""Receiver IQ-imbalance model.

The imbalanced down-converter maps the clean baseband signal y to
mu*y + nu*conj(y): the direct term mu and the image term nu follow from a
phase mismatch theta (radians, split evenly across the branches) and a
fractional amplitude mismatch alpha (branch gains 1+alpha and 1-alpha):

    mu = cos(theta/2) + j*alpha*sin(theta/2)
    nu = alpha*cos(theta/2) - j*sin(theta/2)

Perfect matching (theta=0, alpha=0) gives mu=1, nu=0.  In the frequency
domain the image term couples each bin with its conjugate mirror, which is
what the downstream estimator and equalizer undo.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectral import mirror

__all__ = ["IqParams", "iq_params_from", "distort_time", "distort_freq"]


@dataclass(frozen=True)
class IqParams:
    """Phase/amplitude mismatch pair with derived distortion coefficients.

    ``theta`` is the phase imbalance in radians, ``alpha`` the fractional
    amplitude mismatch between the branches.  ``mu``, ``nu`` and ``kappa``
    are recomputed on access so they can never go stale.
    """

    theta: float
    alpha: float

    @property
    def mu(self) -> complex:
        return complex(math.cos(self.theta / 2), self.alpha * math.sin(self.theta / 2))

    @property
    def nu(self) -> complex:
        return complex(self.alpha * math.cos(self.theta / 2), -math.sin(self.theta / 2))

    @property
    def kappa(self) -> complex:
        """Image-to-direct ratio nu/conj(mu) used by the one-step equalizer."""
        return self.nu / self.mu.conjugate()

    @classmethod
    def from_deg_db(cls, theta_deg: float, alpha_db: float) -> "IqParams":
        """Build from a phase error in degrees and a gain error in dB.

        ``alpha_db`` is the I-to-Q amplitude ratio in dB; with branch gains
        1+alpha and 1-alpha the ratio r = 10**(dB/20) gives
        alpha = (r-1)/(r+1), so 0 dB means perfectly matched branches.
        """
        ratio = 10.0 ** (alpha_db / 20.0)
        alpha = (ratio - 1.0) / (ratio + 1.0)
        return cls(theta=math.radians(theta_deg), alpha=alpha)


def iq_params_from(theta_deg: float, alpha_db: float) -> IqParams:
    """Convenience wrapper for :meth:`IqParams.from_deg_db`."""
    return IqParams.from_deg_db(theta_deg, alpha_db)


def distort_time(y, p: IqParams) -> np.ndarray:
    """Apply the imbalance sample-wise: mu*y + nu*conj(y)."""
    y = np.asarray(y, dtype=np.complex128)
    return p.mu * y + p.nu * np.conj(y)


def distort_freq(Y, p: IqParams) -> np.ndarray:
    """Frequency-domain image of :func:`distort_time`: mu*Y + nu*mirror(Y)."""
    Y = np.asarray(Y, dtype=np.complex128)
    return p.mu * Y + p.nu * mirror(Y)

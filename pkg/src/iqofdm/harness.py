"""Monte-Carlo engine: frame pipeline, BER/MSE accumulation, reproducible
parallel sweeps and CSV persistence.

A frame is one block-fading channel draw followed by a preamble and
``n_data_symbols`` data symbols.  The compensated schemes put their training
at the head of the frame: the two-symbol pilot preamble for the time-domain
estimator, or ``n_t`` full-band training symbols for the per-bin baseline.
Each symbol runs the physical chain (IFFT, cyclic prefix, channel
convolution, receiver noise, IQ distortion, FFT); noise enters before the
imbalanced down-converter, where the front-end injects it.

Determinism: every frame derives counter-based random substreams from
(master seed, frame index), one per purpose (channel draw, data bits,
preamble noise, data noise), and accumulators are integers, so results are
byte-identical for any worker count.  Early stopping, when enabled, is
evaluated only at fixed chunk boundaries for the same reason.  Because the
substreams do not depend on the scheme or the SNR point, sweeps over
schemes share their channels, bits and (scaled) noise draws: scheme
comparisons at matched seeds are paired sample by sample.

The closed-form validation helpers (``run_mse_check``,
``run_snr_loss_check``) instead inject white noise directly at the detector
input, which is the noise model under which the analytic MSE and SNR-loss
expressions hold.
"""

from __future__ import annotations

import csv
import os
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields

import numpy as np

from .channel import (
    TU_DELAYS_US,
    TU_POWERS_DB,
    PowerDelayProfile,
    add_awgn,
    apply_channel,
    draw_cir,
    effective_response,
)
from .equalization import (
    GeCoefficients,
    ge_equalize,
    ideal_zf_equalize,
    postfft_ls_equalize,
    snr_loss_ge,
)
from .estimation import (
    fd_ls_estimate,
    make_fd_training,
    predict_mse,
    td_ls_estimate,
)
from .iq import IqParams, distort_freq, distort_time
from .ofdm import OfdmConfig, qpsk_map, strip_cp_and_fft, to_time_with_cp
from .pilots import ETA_RULES, POWER_RULES, build_pilot_pair

__all__ = [
    "ConfigError",
    "SimConfig",
    "BerRecord",
    "MseCheckResult",
    "NoiseSuppressionResult",
    "SnrLossResult",
    "SCHEMES",
    "CSV_COLUMNS",
    "OUTPUT_DIR_ENV",
    "parse_config_file",
    "parse_range",
    "run_ber_sweep",
    "run_mse_check",
    "run_noise_suppression_check",
    "run_snr_loss_check",
    "run_snr_loss_surface",
    "write_ber_csv",
    "write_surface_csv",
]

SCHEMES = ("ideal", "none", "td_ls_fd_ge", "fd_ls_postfft")

# Exact column order of BER sweep CSV files.
CSV_COLUMNS = (
    "scheme",
    "snr_db",
    "theta_deg",
    "alpha_db",
    "n",
    "cp",
    "frames",
    "bits",
    "errors",
    "ber",
    "erasures",
    "seed",
)

OUTPUT_DIR_ENV = "IQOFDM_OUTPUT_DIR"

# Early-stop decisions happen only at multiples of this many frames so that
# sweep results never depend on the worker count.
CHUNK_FRAMES = 25

_PHILOX_MIX = 0x9E3779B97F4A7C15
_DOMAIN_BER_CHANNEL = 0
_DOMAIN_BER_BITS = 1
_DOMAIN_BER_NOISE_PRE = 2
_DOMAIN_BER_NOISE_DATA = 3
_DOMAIN_MSE = 4
_DOMAIN_LOSS = 5


class ConfigError(ValueError):
    """Invalid simulation parameter or malformed configuration input."""


def _philox_rng(seed: int, domain: int, stream: int, index: int) -> np.random.Generator:
    """Independent substream addressed by (domain, stream, index).

    The low counter word is left free-running for the generator itself, so
    distinct addresses can never collide.
    """
    key = [np.uint64(seed & 0xFFFFFFFFFFFFFFFF), np.uint64(_PHILOX_MIX)]
    counter = [np.uint64(0), np.uint64(index), np.uint64(stream), np.uint64(domain)]
    return np.random.Generator(np.random.Philox(key=key, counter=counter))


# ---------------------------------------------------------------------------
# configuration


_TRUE_STRINGS = {"1", "true", "yes", "on"}
_FALSE_STRINGS = {"0", "false", "no", "off"}


@dataclass(frozen=True)
class SimConfig:
    """Full parameter set for one simulation run."""

    n: int = 128
    cp_len: int = 16
    bandwidth: float = 2e6
    modulation: str = "qpsk"
    theta_deg: float = 20.0
    alpha_db: float = 4.0
    snr_db: tuple[float, ...] = (10.0,)
    frames: int = 100
    scheme: str = "td_ls_fd_ge"
    n_t: int = 2
    n_data_symbols: int = 18
    master_seed: int = 1
    pilot_seed: int = 12345
    genie: bool = False
    eta_rule: str = "sqrt"
    pilot_power_rule: str = "paper"
    null_dc_nyquist: bool = False
    early_stop: bool = False
    min_errors: int = 200
    min_bits: int = 100_000
    pdp_delays_us: tuple[float, ...] = TU_DELAYS_US
    pdp_powers_db: tuple[float, ...] = TU_POWERS_DB

    def __post_init__(self):
        object.__setattr__(self, "snr_db", tuple(float(s) for s in self.snr_db))
        object.__setattr__(self, "pdp_delays_us", tuple(float(d) for d in self.pdp_delays_us))
        object.__setattr__(self, "pdp_powers_db", tuple(float(p) for p in self.pdp_powers_db))
        try:
            self.ofdm()  # validates n / cp_len / bandwidth / modulation
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}; choose from {SCHEMES}")
        if not self.snr_db:
            raise ConfigError("SNR grid must not be empty")
        if self.frames < 1:
            raise ConfigError("frames must be >= 1")
        if self.n_data_symbols < 1:
            raise ConfigError("n_data_symbols must be >= 1")
        if self.n_t < 2:
            raise ConfigError("n_t must be >= 2 for the per-bin baseline")
        if self.eta_rule not in ETA_RULES:
            raise ConfigError(f"eta_rule must be one of {ETA_RULES}")
        if self.pilot_power_rule not in POWER_RULES:
            raise ConfigError(f"pilot_power_rule must be one of {POWER_RULES}")
        if self.min_errors < 1 or self.min_bits < 1:
            raise ConfigError("early-stop thresholds must be positive")
        # The drawn CIR spans the prefix window; every profile path must fit.
        taps = np.rint(np.asarray(self.pdp_delays_us) * 1e-6 / self.ofdm().sample_period)
        if taps.max() >= self.cp_len:
            raise ConfigError(
                f"cyclic prefix ({self.cp_len}) shorter than the channel memory "
                f"(profile spans tap {int(taps.max())})"
            )

    def ofdm(self) -> OfdmConfig:
        return OfdmConfig(
            n=self.n, cp_len=self.cp_len, bandwidth=self.bandwidth, modulation=self.modulation
        )

    def iq(self) -> IqParams:
        return IqParams.from_deg_db(self.theta_deg, self.alpha_db)

    def profile(self) -> PowerDelayProfile:
        return PowerDelayProfile.from_db(self.pdp_delays_us, self.pdp_powers_db)

    @classmethod
    def from_mapping(cls, mapping: dict, **overrides) -> "SimConfig":
        """Build from flat string key/value pairs, then apply overrides.

        Unknown keys warn rather than fail; an explicit ``n_t`` combined
        with a non-baseline scheme also warns (it is simply unused).
        """
        known = {f.name: f for f in fields(cls)}
        values: dict = {}
        for key, raw in mapping.items():
            name = key.strip().lower().replace("-", "_")
            if name not in known:
                warnings.warn(f"ignoring unknown config key {key!r}", stacklevel=2)
                continue
            values[name] = _coerce(name, raw)
        for key, val in overrides.items():
            if val is None:
                continue
            if key not in known:
                raise ConfigError(f"unknown config override {key!r}")
            values[key] = _coerce(key, val) if isinstance(val, str) else val
        cfg = cls(**values)
        if "n_t" in values and cfg.scheme != "fd_ls_postfft":
            warnings.warn(
                f"n_t = {cfg.n_t} is unused by scheme {cfg.scheme!r}", stacklevel=2
            )
        return cfg


_INT_FIELDS = {
    "n", "cp_len", "frames", "n_t", "n_data_symbols",
    "master_seed", "pilot_seed", "min_errors", "min_bits",
}
_FLOAT_FIELDS = {"bandwidth", "theta_deg", "alpha_db"}
_BOOL_FIELDS = {"genie", "null_dc_nyquist", "early_stop"}
_RANGE_FIELDS = {"snr_db", "pdp_delays_us", "pdp_powers_db"}


def _coerce(name: str, raw):
    text = str(raw).strip()
    try:
        if name in _INT_FIELDS:
            return int(text)
        if name in _FLOAT_FIELDS:
            return float(text)
        if name in _BOOL_FIELDS:
            low = text.lower()
            if low in _TRUE_STRINGS:
                return True
            if low in _FALSE_STRINGS:
                return False
            raise ConfigError(f"cannot parse boolean {name} = {raw!r}")
        if name in _RANGE_FIELDS:
            return parse_range(text)
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"cannot parse {name} = {raw!r}") from None
    return text


def parse_config_file(path) -> dict:
    """Read a flat ``key = value`` file with ``#`` comments."""
    if not os.path.exists(path):
        raise FileNotFoundError(f"config file not found: {path}")
    out: dict = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep or not key.strip():
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw.rstrip()!r}")
            out[key.strip()] = value.strip()
    return out


def parse_range(text: str) -> tuple[float, ...]:
    """Parse ``start:step:stop`` (inclusive when stop is on the grid),
    a comma-separated list, or a single number."""
    t = str(text).strip()
    if not t:
        raise ConfigError("empty numeric range")
    if ":" in t:
        parts = t.split(":")
        if len(parts) != 3:
            raise ConfigError(f"range must be start:step:stop, got {text!r}")
        start, step, stop = (float(p) for p in parts)
        if step == 0:
            raise ConfigError("range step must be nonzero")
        span = (stop - start) / step
        if span < -1e-9:
            raise ConfigError(f"empty range {text!r}")
        count = int(np.floor(span + 1e-9)) + 1
        return tuple(start + i * step for i in range(count))
    if "," in t:
        return tuple(float(p) for p in t.split(",") if p.strip())
    return (float(t),)


# ---------------------------------------------------------------------------
# frame pipeline


@dataclass(frozen=True)
class BerRecord:
    """Accumulated result for one sweep point."""

    scheme: str
    snr_db: float
    theta_deg: float
    alpha_db: float
    n: int
    cp: int
    frames: int
    bits: int
    errors: int
    erasures: int
    seed: int
    wall_time: float

    @property
    def ber(self) -> float:
        return self.errors / self.bits


def _data_bins(cfg: SimConfig) -> np.ndarray:
    bins = np.arange(cfg.n)
    if cfg.null_dc_nyquist:
        bins = bins[(bins != 0) & (bins != cfg.n // 2)]
    return bins


def _shared_context(cfg: SimConfig):
    """Deterministic per-run objects shared by every frame."""
    ofdm = cfg.ofdm()
    p = cfg.iq()
    profile = cfg.profile()
    pilots = build_pilot_pair(
        cfg.n,
        np.random.default_rng(cfg.pilot_seed),
        eta_rule=cfg.eta_rule,
        power_rule=cfg.pilot_power_rule,
    )
    training = None
    if cfg.scheme == "fd_ls_postfft":
        # Equal training power per symbol: the baseline spends the same
        # per-symbol energy as a pilot symbol, spread over the full band.
        energy = float(np.sum(np.abs(pilots.s1) ** 2))
        training = make_fd_training(
            cfg.n, cfg.n_t, np.random.default_rng(cfg.pilot_seed + 1), power=energy / cfg.n
        )
    return ofdm, p, profile, pilots, training, _data_bins(cfg)


def _simulate_frame(cfg, ctx, frame_index, sigma2):
    """Run one frame end to end; returns (bits, errors, erasures).

    Channel, bits, preamble noise and data noise come from separate
    substreams of (master seed, frame index), so schemes and SNR points see
    the same draws regardless of how many preamble symbols they spend.
    """
    ofdm, p, profile, pilots, training, bins = ctx
    rng_ch = _philox_rng(cfg.master_seed, _DOMAIN_BER_CHANNEL, 0, frame_index)
    rng_bits = _philox_rng(cfg.master_seed, _DOMAIN_BER_BITS, 0, frame_index)
    rng_pre = _philox_rng(cfg.master_seed, _DOMAIN_BER_NOISE_PRE, 0, frame_index)
    rng_data = _philox_rng(cfg.master_seed, _DOMAIN_BER_NOISE_DATA, 0, frame_index)

    h = draw_cir(profile, ofdm.sample_period, cfg.cp_len, rng_ch)
    g = effective_response(h, cfg.n)

    if cfg.scheme == "td_ls_fd_ge":
        preamble = [pilots.s1, pilots.s2]
    elif cfg.scheme == "fd_ls_postfft":
        preamble = list(training)
    else:
        preamble = []
    n_pre = len(preamble)

    tx_bits = rng_bits.integers(0, 2, size=(cfg.n_data_symbols, bins.size, 2))
    spectra = list(preamble)
    for i in range(cfg.n_data_symbols):
        s = np.zeros(cfg.n, dtype=np.complex128)
        s[bins] = qpsk_map(tx_bits[i].ravel())
        spectra.append(s)

    apply_iq = cfg.scheme != "ideal"
    received = np.empty((len(spectra), cfg.n), dtype=np.complex128)
    for i, s in enumerate(spectra):
        x = to_time_with_cp(s, ofdm)
        y = apply_channel(x, h, ofdm.cp_len)
        y = add_awgn(y, sigma2, rng_pre if i < n_pre else rng_data)
        if apply_iq:
            y = distort_time(y, p)
        received[i] = strip_cp_and_fft(y, ofdm)

    if cfg.scheme in ("ideal", "none"):
        def equalize(z):
            return ideal_zf_equalize(z, g)
    elif cfg.scheme == "td_ls_fd_ge":
        if cfg.genie:
            coeffs = GeCoefficients.from_true(p, g)
        else:
            est = td_ls_estimate(received[0], received[1], pilots, cfg.cp_len - 1)
            coeffs = GeCoefficients.from_estimate(est)

        def equalize(z):
            return ge_equalize(z, coeffs)
    else:  # fd_ls_postfft
        fd = fd_ls_estimate(received[:n_pre], np.asarray(training))

        def equalize(z):
            return postfft_ls_equalize(z, fd)

    errors = 0
    erasures = 0
    for i in range(cfg.n_data_symbols):
        s_hat, erased = equalize(received[n_pre + i])
        sd = s_hat[bins]
        ed = erased[bins]
        rx = np.empty_like(tx_bits[i])
        rx[:, 0] = sd.real < 0
        rx[:, 1] = sd.imag < 0
        good = ~ed
        errors += int(np.count_nonzero(rx[good] != tx_bits[i][good]))
        # An erased bin contributes exactly half its two bits as errors.
        n_erased = int(np.count_nonzero(ed))
        errors += n_erased
        erasures += n_erased
    bits = 2 * bins.size * cfg.n_data_symbols
    return bits, errors, erasures


def _simulate_chunk(cfg: SimConfig, snr_db: float, start: int, stop: int):
    """Worker entry: frames [start, stop) of one sweep point."""
    ctx = _shared_context(cfg)
    sigma2 = 10.0 ** (-snr_db / 10.0)
    bits = errors = erasures = 0
    for frame_index in range(start, stop):
        b, e, r = _simulate_frame(cfg, ctx, frame_index, sigma2)
        bits += b
        errors += e
        erasures += r
    return stop - start, bits, errors, erasures


def run_ber_sweep(cfg: SimConfig, jobs: int | None = None) -> list[BerRecord]:
    """Simulate every SNR point of the sweep; deterministic in (seed, config)."""
    jobs = jobs if jobs and jobs > 0 else (os.cpu_count() or 1)
    records: list[BerRecord] = []
    for snr_db in cfg.snr_db:
        t0 = time.perf_counter()
        chunks = [
            (start, min(start + CHUNK_FRAMES, cfg.frames))
            for start in range(0, cfg.frames, CHUNK_FRAMES)
        ]
        frames = bits = errors = erasures = 0

        def _accumulate(result) -> bool:
            nonlocal frames, bits, errors, erasures
            f, b, e, r = result
            frames += f
            bits += b
            errors += e
            erasures += r
            return cfg.early_stop and errors >= cfg.min_errors and bits >= cfg.min_bits

        if jobs == 1:
            for start, stop in chunks:
                if _accumulate(_simulate_chunk(cfg, snr_db, start, stop)):
                    break
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                futures = [
                    pool.submit(_simulate_chunk, cfg, snr_db, start, stop)
                    for start, stop in chunks
                ]
                # Consume in submission order: the stopping point depends only
                # on cumulative counts at chunk boundaries, not on the pool.
                for pos, fut in enumerate(futures):
                    if _accumulate(fut.result()):
                        for later in futures[pos + 1 :]:
                            later.cancel()
                        break
        records.append(
            BerRecord(
                scheme=cfg.scheme,
                snr_db=float(snr_db),
                theta_deg=cfg.theta_deg,
                alpha_db=cfg.alpha_db,
                n=cfg.n,
                cp=cfg.cp_len,
                frames=frames,
                bits=bits,
                errors=errors,
                erasures=erasures,
                seed=cfg.master_seed,
                wall_time=time.perf_counter() - t0,
            )
        )
    return records


# ---------------------------------------------------------------------------
# closed-form validation runs


@dataclass(frozen=True)
class MseCheckResult:
    """Measured vs predicted per-bin estimation MSE at one SNR."""

    gamma_db: float
    trials: int
    measured_mu: float
    measured_nu: float
    predicted: float


def _white_noise(rng, n: int, sigma2: float) -> np.ndarray:
    w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return w * np.sqrt(sigma2 / 2.0)


def run_mse_check(cfg: SimConfig, trials: int) -> list[MseCheckResult]:
    """Estimation-error statistics of the two-pilot fit over noisy trials.

    Each trial draws a fresh channel (held fixed within the trial), passes
    the pilot pair through the per-bin receive model with white noise at the
    detector input, and measures the per-bin squared error of both response
    estimates against their ground truth.
    """
    if trials < 1000:
        raise ConfigError("MSE check needs at least 1000 trials for stable statistics")
    ofdm = cfg.ofdm()
    p = cfg.iq()
    profile = cfg.profile()
    pilots = build_pilot_pair(
        cfg.n,
        np.random.default_rng(cfg.pilot_seed),
        eta_rule=cfg.eta_rule,
        power_rule=cfg.pilot_power_rule,
    )
    results = []
    for snr_index, gamma_db in enumerate(cfg.snr_db):
        gamma = 10.0 ** (gamma_db / 10.0)
        sigma2 = 1.0 / gamma
        acc_mu = acc_nu = 0.0
        for trial in range(trials):
            rng = _philox_rng(cfg.master_seed, _DOMAIN_MSE, snr_index, trial)
            h = draw_cir(profile, ofdm.sample_period, cfg.cp_len, rng)
            g = effective_response(h, cfg.n)
            z1 = distort_freq(g * pilots.s1, p) + _white_noise(rng, cfg.n, sigma2)
            z2 = distort_freq(g * pilots.s2, p) + _white_noise(rng, cfg.n, sigma2)
            est = td_ls_estimate(z1, z2, pilots, cfg.cp_len - 1)
            acc_mu += float(np.mean(np.abs(est.mu_H - p.mu * g) ** 2))
            acc_nu += float(np.mean(np.abs(est.nu_star_H - np.conj(p.nu) * g) ** 2))
        results.append(
            MseCheckResult(
                gamma_db=float(gamma_db),
                trials=trials,
                measured_mu=acc_mu / trials,
                measured_nu=acc_nu / trials,
                predicted=predict_mse(cfg.n, cfg.cp_len - 1, gamma, cfg.modulation),
            )
        )
    return results


@dataclass(frozen=True)
class NoiseSuppressionResult:
    """Per-bin MSE of the baseline estimator relative to the two-pilot fit."""

    gamma_db: float
    trials: int
    td_mse: float
    fd_mse: float
    ratio: float
    expected: float


def run_noise_suppression_check(
    cfg: SimConfig, trials: int, gamma_db: float = 10.0
) -> NoiseSuppressionResult:
    """Measure MSE(per-bin baseline) / MSE(two-pilot fit) at equal training power.

    The baseline spends the same per-symbol energy over ``n_t`` full-band
    training symbols as one pilot symbol; the expected ratio is the
    time-domain averaging gain N/(L+1).
    """
    if trials < 1000:
        raise ConfigError("noise-suppression check needs at least 1000 trials")
    ofdm = cfg.ofdm()
    p = cfg.iq()
    profile = cfg.profile()
    pilots = build_pilot_pair(
        cfg.n,
        np.random.default_rng(cfg.pilot_seed),
        eta_rule=cfg.eta_rule,
        power_rule=cfg.pilot_power_rule,
    )
    energy = float(np.sum(np.abs(pilots.s1) ** 2))
    training = make_fd_training(
        cfg.n, cfg.n_t, np.random.default_rng(cfg.pilot_seed + 1), power=energy / cfg.n
    )
    gamma = 10.0 ** (gamma_db / 10.0)
    sigma2 = 1.0 / gamma
    acc_td = acc_fd = 0.0
    for trial in range(trials):
        rng = _philox_rng(cfg.master_seed, _DOMAIN_MSE, 1 << 16, trial)
        h = draw_cir(profile, ofdm.sample_period, cfg.cp_len, rng)
        g = effective_response(h, cfg.n)
        truth = p.mu * g

        z1 = distort_freq(g * pilots.s1, p) + _white_noise(rng, cfg.n, sigma2)
        z2 = distort_freq(g * pilots.s2, p) + _white_noise(rng, cfg.n, sigma2)
        est = td_ls_estimate(z1, z2, pilots, cfg.cp_len - 1)
        acc_td += float(np.mean(np.abs(est.mu_H - truth) ** 2))

        z_train = np.stack(
            [distort_freq(g * t, p) + _white_noise(rng, cfg.n, sigma2) for t in training]
        )
        fd = fd_ls_estimate(z_train, training)
        acc_fd += float(np.mean(np.abs(fd.a - truth) ** 2))
    td_mse = acc_td / trials
    fd_mse = acc_fd / trials
    return NoiseSuppressionResult(
        gamma_db=float(gamma_db),
        trials=trials,
        td_mse=td_mse,
        fd_mse=fd_mse,
        ratio=fd_mse / td_mse,
        expected=cfg.n / cfg.cp_len,
    )


@dataclass(frozen=True)
class SnrLossResult:
    """Measured vs closed-form SNR loss of the one-step eliminator."""

    measured_db: float
    predicted_db: float
    symbols: int


def run_snr_loss_check(cfg: SimConfig, n_symbols: int, gamma_db: float = 10.0) -> SnrLossResult:
    """Genie-mode error-variance ratio against the known-channel reference.

    Both receivers see the same channel draw and the same white noise at the
    detector input; the eliminator additionally sees the imbalance.  Per-bin
    error powers are channel-compensated (weighted by |g(k)|^2) before
    averaging: the closed form predicts the channel-free ratio, and raw
    zero-forcing error powers over fading bins are too heavy-tailed to
    average stably.
    """
    ofdm = cfg.ofdm()
    p = cfg.iq()
    profile = cfg.profile()
    predicted = snr_loss_ge(p, p.kappa)
    sigma2 = 10.0 ** (-gamma_db / 10.0)
    err_ge = err_zf = 0.0
    for i in range(n_symbols):
        rng = _philox_rng(cfg.master_seed, _DOMAIN_LOSS, 0, i)
        h = draw_cir(profile, ofdm.sample_period, cfg.cp_len, rng)
        g = effective_response(h, cfg.n)
        bits = rng.integers(0, 2, size=(cfg.n, 2))
        s = qpsk_map(bits.ravel())
        w = _white_noise(rng, cfg.n, sigma2)
        z = distort_freq(g * s, p) + w
        s_ge, _ = ge_equalize(z, GeCoefficients.from_true(p, g))
        s_zf, _ = ideal_zf_equalize(g * s + w, g)
        weight = np.abs(g) ** 2
        err_ge += float(np.sum(weight * np.abs(s_ge - s) ** 2))
        err_zf += float(np.sum(weight * np.abs(s_zf - s) ** 2))
    measured = 10.0 * np.log10(err_ge / err_zf)
    return SnrLossResult(measured_db=float(measured), predicted_db=predicted, symbols=n_symbols)


def run_snr_loss_surface(thetas_deg, alphas_db) -> list[tuple[float, float, float | None]]:
    """Closed-form loss over a (theta, alpha) grid with the genie ratio.

    Degenerate cells (the eliminator cannot operate there) are recorded as
    None.
    """
    rows: list[tuple[float, float, float | None]] = []
    for theta in thetas_deg:
        for alpha in alphas_db:
            p = IqParams.from_deg_db(theta, alpha)
            try:
                loss = snr_loss_ge(p, p.kappa)
            except ValueError:
                loss = None
            rows.append((float(theta), float(alpha), loss))
    return rows


# ---------------------------------------------------------------------------
# persistence


def default_output_dir() -> str:
    return os.environ.get(OUTPUT_DIR_ENV, ".")


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _config_comment_lines(cfg: SimConfig) -> list[str]:
    lines = []
    for key, value in sorted(asdict(cfg).items()):
        if isinstance(value, tuple):
            value = ",".join(_fmt(v) for v in value)
        lines.append(f"# {key} = {_fmt(value)}")
    return lines


def write_ber_csv(path, records: list[BerRecord], cfg: SimConfig | None = None) -> None:
    """Write sweep records with the effective config echoed as comments.

    Only reproducible fields go into the file; wall time stays out so that
    identical (seed, config) runs produce identical bytes.
    """
    with open(path, "w", newline="", encoding="utf-8") as fh:
        if cfg is not None:
            fh.write("\n".join(_config_comment_lines(cfg)) + "\n")
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in records:
            writer.writerow(
                [
                    r.scheme,
                    _fmt(r.snr_db),
                    _fmt(r.theta_deg),
                    _fmt(r.alpha_db),
                    r.n,
                    r.cp,
                    r.frames,
                    r.bits,
                    r.errors,
                    _fmt(r.ber),
                    r.erasures,
                    r.seed,
                ]
            )


def write_surface_csv(path, rows) -> None:
    """Write (theta_deg, alpha_db, loss_db) rows; degenerate cells are empty."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["theta_deg", "alpha_db", "loss_db"])
        for theta, alpha, loss in rows:
            writer.writerow([_fmt(theta), _fmt(alpha), "" if loss is None else _fmt(loss)])

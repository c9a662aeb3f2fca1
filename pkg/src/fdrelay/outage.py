"""Analytic outage probability engines.

Outage means the instantaneous capacity falls below the target rate,
equivalently the effective SNR falls below the threshold nu (strict
inequality by convention, matching the Monte Carlo counter).

Three engines:

* ``outage_df``      closed form from the independence of the loop-back
                     power V and the product of hop powers Z:
                     1 - F_V(1/(kappa nu)) * (1 - F_Z(nu * path * sigma_D^2
                     / (kappa P_S)))
* ``outage_af``      semi-analytic: the loop-back tail mass plus an adaptive
                     quadrature of F_Z over the conditional threshold curve
* ``outage_high_snr`` the shared large-power floor 1 - F_V(1/(kappa nu)),
                     where both strategies coincide
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .fading import (
    ProductDistParams,
    cdf_power,
    pdf_power,
    power_rate,
    product_arg_clamp,
    _cdf_product_meijer,
)
from .quadrature import QuadratureSettings, integrate_adaptive
from .relaysys import SystemConfig, derive_constants
from .specfun import EPS, ln_gamma

DF_ANALYTIC = "df_analytic"
AF_ANALYTIC = "af_analytic"
HIGH_SNR = "high_snr"


@dataclass(frozen=True)
class OutageResult:
    """Outage value with its method tag and a numerical error estimate."""

    value: float
    method: str
    numeric_error: float
    converged: bool = True

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise DomainError(f"outage must lie in [0, 1], got {self.value}")
        if self.numeric_error < 0.0:
            raise DomainError("numeric_error must be nonnegative")


def _product_params(cfg: SystemConfig) -> ProductDistParams:
    return ProductDistParams(cfg.hop1_fading, cfg.hop2_fading)


def outage_df(cfg: SystemConfig) -> OutageResult:
    """Decode-and-forward outage probability, closed form."""
    pp = _product_params(cfg)
    c = derive_constants(cfg)
    v_star = 1.0 / (c.kappa * c.nu)
    f_v = cdf_power(cfg.lbi_fading, v_star)
    path = (cfg.hop1_distance ** cfg.hop1_pathloss
            * cfg.hop2_distance ** cfg.hop2_pathloss)
    z_thresh = c.nu * path * cfg.noise_dest_var / (c.kappa * cfg.source_power)
    f_z, f_z_err = _cdf_product_meijer(pp, z_thresh)
    value = 1.0 - f_v * (1.0 - f_z)
    err = f_v * f_z_err + 8.0 * EPS
    return OutageResult(value=min(1.0, max(0.0, value)),
                        method=DF_ANALYTIC, numeric_error=err)


def outage_af(cfg: SystemConfig,
              settings: QuadratureSettings | None = None) -> OutageResult:
    """Amplify-and-forward outage probability.

    P = [1 - F_V(v*)] + Int_0^{v*} F_Z(nu (b3 v + b4) / (b1 - b2 nu v)) f_V(v) dv

    with v* = 1/(kappa nu).  The integral is split at v*/2: the lower half
    runs in the gamma space of the loop-back power (killing the v -> 0
    density singularity exactly), the upper half in u = 1 - kappa nu v so
    the diverging F_Z argument collapses onto u -> 0, where F_Z clamps to 1
    and the integrand degenerates to the plain loop-back density.
    """
    settings = settings or QuadratureSettings()
    pp = _product_params(cfg)
    c = derive_constants(cfg)
    nu = c.nu
    v_star = 1.0 / (c.kappa * nu)
    lbi = cfg.lbi_fading
    lam3 = power_rate(lbi)
    a3 = lbi.alpha
    mu3 = lbi.mu
    inv_gamma3 = math.exp(-ln_gamma(mu3))

    l1l2 = power_rate(cfg.hop1_fading) * power_rate(cfg.hop2_fading)
    alpha = cfg.hop1_fading.alpha
    clamp_x = product_arg_clamp(cfg.hop1_fading.mu, cfg.hop2_fading.mu)

    def f_z(arg):
        if arg <= 0.0:
            return 0.0
        if l1l2 * arg ** (0.5 * alpha) >= clamp_x:
            return 1.0
        val, _ = _cdf_product_meijer(pp, arg)
        return val

    # lower half in w = lam3 * v^{a3/2}: f_V(v) dv = w^{mu3-1} e^-w dw / Gamma(mu3)
    w_mid = lam3 * (0.5 * v_star) ** (0.5 * a3)

    def lower_integrand(w):
        ln_d = (mu3 - 1.0) * math.log(w) - w
        if ln_d < -745.0:
            return 0.0
        v = (w / lam3) ** (2.0 / a3)
        arg = nu * (c.beta3 * v + c.beta4) / (c.beta1 - c.beta2 * nu * v)
        return f_z(arg) * math.exp(ln_d) * inv_gamma3

    # seed panels on both the endpoint scale and the gamma-density scale;
    # the two can differ by many orders when the loop-back endpoint is far
    # out in the tail
    bps_lo = [b * w_mid for b in (1e-6, 1e-3, 0.03, 0.3)]
    bps_lo += [0.5 * mu3, 2.0 * mu3, 10.0 + 5.0 * mu3]
    bps_lo = sorted({b for b in bps_lo if 0.0 < b < w_mid})
    val_lo, err_lo, ok_lo = integrate_adaptive(
        lower_integrand, 0.0, w_mid, settings, breakpoints=bps_lo)
    # upper half in u = 1 - kappa nu v, u in (0, 1/2]
    scale_u = 1.0 / (c.kappa * nu)

    def upper_integrand(u):
        v = (1.0 - u) * v_star
        arg = nu * (c.beta3 * v + c.beta4) / (c.beta1 * u)
        return f_z(arg) * pdf_power(lbi, v) * scale_u

    bps_up = [1e-10, 1e-7, 1e-4, 1e-2, 0.1]
    val_up, err_up, ok_up = integrate_adaptive(
        upper_integrand, 0.0, 0.5, settings, breakpoints=bps_up)

    tail = 1.0 - cdf_power(lbi, v_star)
    value = tail + val_lo + val_up
    err = err_lo + err_up + 8.0 * EPS
    return OutageResult(value=min(1.0, max(0.0, value)),
                        method=AF_ANALYTIC, numeric_error=err,
                        converged=ok_lo and ok_up)


def outage_high_snr(cfg: SystemConfig) -> OutageResult:
    """Common outage floor of both strategies as the source power grows.

    Only the loop-back leg survives: P -> 1 - F_V(1/(kappa nu)).
    """
    c = derive_constants(cfg)
    value = 1.0 - cdf_power(cfg.lbi_fading, 1.0 / (c.kappa * c.nu))
    return OutageResult(value=min(1.0, max(0.0, value)),
                        method=HIGH_SNR, numeric_error=8.0 * EPS)

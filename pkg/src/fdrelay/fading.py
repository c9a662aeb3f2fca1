"""Generalized two-parameter fading distributions.

The envelope of one branch follows the alpha-mu family: ``(r/r_hat)^alpha``
is gamma distributed with shape ``mu`` after scaling by ``mu``.  The module
provides the envelope and squared-envelope (power) densities and CDFs, the
distribution of a product of two independent powers, and an exact sampler.

Special cases by parameter choice: Rayleigh (alpha=2, mu=1), Nakagami-m
(alpha=2, mu=m), Weibull (mu=1), one-sided Gaussian (alpha=2, mu=1/2).

Conventions fixed here and enforced by the normalization tests:

* the power-distribution rate constant is ``lam = mu / r_hat**alpha`` (the
  exponent is alpha, not alpha/2);
* the product density carries the symmetric prefactor
  ``(lam1*lam2)**((mu1+mu2)/2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import AlphaMismatchError, DomainError
from .quadrature import QuadratureSettings, integrate_adaptive
from .specfun import (
    EPS,
    bessel_k,
    ln_gamma,
    reg_lower_gamma,
    _g2131_eval,
    _kernel_tail,
)


@dataclass(frozen=True)
class AlphaMuParams:
    """One fading branch: nonlinearity exponent, shape, and alpha-root mean.

    ``r_hat`` is the alpha-th root of E[r**alpha] in linear amplitude units;
    ``mu`` is the inverse normalized variance of r**alpha.
    """

    alpha: float
    mu: float
    r_hat: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0.0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if not self.mu >= 0.5:
            raise DomainError(f"mu must be >= 0.5, got {self.mu}")
        if not self.r_hat > 0.0:
            raise DomainError(f"r_hat must be positive, got {self.r_hat}")


@dataclass(frozen=True)
class PowerLambda:
    """Rate constant of the squared-envelope distribution, units r^-alpha."""

    value: float

    def __post_init__(self):
        if not self.value > 0.0:
            raise DomainError("lambda must be positive")

    @classmethod
    def from_params(cls, p: AlphaMuParams) -> "PowerLambda":
        return cls(p.mu / p.r_hat ** p.alpha)


def power_rate(p: AlphaMuParams) -> float:
    """lam = mu / r_hat**alpha, the gamma rate of (envelope)**alpha."""
    return p.mu / p.r_hat ** p.alpha


@dataclass(frozen=True)
class ProductDistParams:
    """Product of the squared envelopes of two branches with equal alpha."""

    hop1: AlphaMuParams
    hop2: AlphaMuParams

    def __post_init__(self):
        if self.hop1.alpha != self.hop2.alpha:
            raise AlphaMismatchError(
                f"closed-form product requires equal alphas, got "
                f"{self.hop1.alpha} and {self.hop2.alpha}")


# ----------------------------------------------------------------------
# single branch

def pdf_envelope(p: AlphaMuParams, r: float) -> float:
    """Envelope density at r > 0."""
    if not r > 0.0:
        raise DomainError(f"pdf_envelope requires r > 0, got {r}")
    am = p.alpha * p.mu
    ln_f = (math.log(p.alpha) + p.mu * math.log(p.mu) + (am - 1.0) * math.log(r)
            - am * math.log(p.r_hat) - ln_gamma(p.mu)
            - p.mu * (r / p.r_hat) ** p.alpha)
    return math.exp(ln_f) if ln_f > -745.0 else 0.0


def cdf_envelope(p: AlphaMuParams, r: float) -> float:
    """Envelope CDF, the regularized gamma at mu * (r/r_hat)**alpha."""
    if r < 0.0:
        raise DomainError(f"cdf_envelope requires r >= 0, got {r}")
    if r == 0.0:
        return 0.0
    return reg_lower_gamma(p.mu, p.mu * (r / p.r_hat) ** p.alpha)


def pdf_power(p: AlphaMuParams, x: float) -> float:
    """Density of the squared envelope at x > 0."""
    if not x > 0.0:
        raise DomainError(f"pdf_power requires x > 0, got {x}")
    lam = power_rate(p)
    half_am = 0.5 * p.alpha * p.mu
    ln_f = (math.log(0.5 * p.alpha) + p.mu * math.log(lam)
            + (half_am - 1.0) * math.log(x) - ln_gamma(p.mu)
            - lam * x ** (0.5 * p.alpha))
    return math.exp(ln_f) if ln_f > -745.0 else 0.0


def cdf_power(p: AlphaMuParams, x: float) -> float:
    """CDF of the squared envelope; identical code path to cdf_envelope."""
    if x < 0.0:
        raise DomainError(f"cdf_power requires x >= 0, got {x}")
    return cdf_envelope(p, math.sqrt(x))


def sample_envelope(p: AlphaMuParams, rng, size=None):
    """Draw envelope samples through the gamma-power transform.

    ``r = r_hat * (g / mu)**(1/alpha)`` with g a unit-scale gamma variate of
    shape mu.  Exact for every parameter combination and independent of the
    analytic CDF, which keeps the sampler usable as a test oracle.  ``rng``
    is a numpy Generator owned by the caller; pass ``size`` for an array.
    """
    g = rng.gamma(p.mu, 1.0, size)
    return p.r_hat * (g / p.mu) ** (1.0 / p.alpha)


# ----------------------------------------------------------------------
# product of two powers (equal alpha)

def _ln_product_norm(pp: ProductDistParams) -> float:
    return ln_gamma(pp.hop1.mu) + ln_gamma(pp.hop2.mu)


def pdf_product(pp: ProductDistParams, z: float) -> float:
    """Density of Z = h1^2 * h2^2 at z > 0.

    f_Z(z) = alpha (l1 l2)^{(m1+m2)/2} z^{alpha (m1+m2)/4 - 1}
             K_{m1-m2}(2 sqrt(l1 l2 z^{alpha/2})) / (Gamma(m1) Gamma(m2)).
    """
    if not z > 0.0:
        raise DomainError(f"pdf_product requires z > 0, got {z}")
    a = pp.hop1.alpha
    m1, m2 = pp.hop1.mu, pp.hop2.mu
    l1, l2 = power_rate(pp.hop1), power_rate(pp.hop2)
    sig = 0.5 * (m1 + m2)
    arg = 2.0 * math.sqrt(l1 * l2 * z ** (0.5 * a))
    kval = bessel_k(m1 - m2, arg)
    if kval == 0.0:
        return 0.0
    ln_f = (math.log(a) + sig * math.log(l1 * l2)
            + (0.5 * a * sig - 1.0) * math.log(z)
            + math.log(kval) - _ln_product_norm(pp))
    return math.exp(ln_f) if ln_f > -745.0 else 0.0


_CLAMP_CACHE: dict = {}


def product_arg_clamp(mu1: float, mu2: float) -> float:
    """Smallest kernel argument x beyond which 1 - F_Z < 1e-14.

    The survival mass is the Bessel-kernel tail integral over the full
    normalization; found once per shape pair by expanding search and cached.
    """
    key = (min(mu1, mu2), max(mu1, mu2))
    hit = _CLAMP_CACHE.get(key)
    if hit is not None:
        return hit
    sigma = 0.5 * (mu1 + mu2)
    delta = abs(mu1 - mu2)
    full = math.exp(ln_gamma(mu1) + ln_gamma(mu2))
    x = 40.0
    for _ in range(40):
        tail, _, _ = _kernel_tail(delta, sigma, x)
        if tail < 1e-14 * full:
            break
        x *= 1.6
    _CLAMP_CACHE[key] = x
    return x


def _cdf_product_meijer(pp: ProductDistParams, z: float):
    """(value, abs error) of F_Z(z) through the residue-series kernel."""
    a = pp.hop1.alpha
    m1, m2 = pp.hop1.mu, pp.hop2.mu
    l1, l2 = power_rate(pp.hop1), power_rate(pp.hop2)
    x = l1 * l2 * z ** (0.5 * a)
    if x < 1e-30:
        # F is bounded by ~x^{min mu} |ln x|, far below any tolerance here
        return 0.0, 1e-15
    if x >= product_arg_clamp(m1, m2):
        return 1.0, 1e-14
    sigma = 0.5 * (m1 + m2)
    delta = m1 - m2
    gval, gerr = _g2131_eval(delta, sigma, x)
    norm = math.exp(-_ln_product_norm(pp))
    xs = x ** sigma
    value = xs * gval * norm
    err = xs * gerr * norm + 4.0 * EPS * abs(value)
    return min(1.0, max(0.0, value)), err


def _cdf_product_quadrature(pp: ProductDistParams, z: float,
                            settings: QuadratureSettings | None = None):
    """(value, abs error, converged) of F_Z(z) by integrating the density.

    Works in t = zeta^{alpha/2}, where the density becomes the plain
    Bessel-kernel integrand; panel seeds follow the kernel argument scale.
    """
    a = pp.hop1.alpha
    m1, m2 = pp.hop1.mu, pp.hop2.mu
    l1, l2 = power_rate(pp.hop1), power_rate(pp.hop2)
    ll = l1 * l2
    sigma = 0.5 * (m1 + m2)
    delta = abs(m1 - m2)
    norm = 2.0 * ll ** sigma * math.exp(-_ln_product_norm(pp))
    # beyond arg ~ 900 the Bessel factor underflows to exactly zero
    t_max = min(z ** (0.5 * a), 450.0 ** 2 / ll)

    def f(t):
        arg = 2.0 * math.sqrt(ll * t)
        kv = bessel_k(delta, arg)
        if kv == 0.0:
            return 0.0
        ln_f = (sigma - 1.0) * math.log(t) + math.log(kv)
        return math.exp(ln_f) if ln_f > -745.0 else 0.0

    # scales where the kernel argument passes interesting magnitudes
    bps = [c / ll for c in (1e-3, 0.0625, 1.0, 25.0, 400.0) if 0.0 < c / ll < t_max]
    settings = settings or QuadratureSettings(abs_tol=1e-10, rel_tol=1e-9)
    val, err, ok = integrate_adaptive(f, 0.0, t_max, settings, breakpoints=bps)
    return min(1.0, max(0.0, norm * val)), norm * err, ok


def cdf_product(pp: ProductDistParams, z: float, route: str = "meijer") -> float:
    """CDF of the product of two squared envelopes, clamped to [0, 1].

    ``route="meijer"`` assembles the closed form from the restricted Meijer
    kernel; ``route="quadrature"`` integrates ``pdf_product``.  The two are
    implemented independently and must agree to 1e-7 absolute.
    """
    if z < 0.0:
        raise DomainError(f"cdf_product requires z >= 0, got {z}")
    if z == 0.0:
        return 0.0
    if route == "meijer":
        value, _ = _cdf_product_meijer(pp, z)
        return value
    if route == "quadrature":
        value, _, _ = _cdf_product_quadrature(pp, z)
        return value
    raise ValueError(f"unknown route {route!r}")


def cdf_product_mixed_alpha(hop1: AlphaMuParams, hop2: AlphaMuParams, z: float,
                            settings: QuadratureSettings | None = None) -> float:
    """Generic product CDF for branches with different alphas.

    Plumbing only: conditions on the first power through its gamma
    transform, P(X Y <= z) = E_w[F_Y(z / x(w))], and integrates in w.  No
    closed form is claimed for the mixed case.
    """
    if z < 0.0:
        raise DomainError("z must be nonnegative")
    if z == 0.0:
        return 0.0
    l1 = power_rate(hop1)
    inv_g = math.exp(-ln_gamma(hop1.mu))

    def f(w):
        x = (w / l1) ** (2.0 / hop1.alpha)
        ln_d = (hop1.mu - 1.0) * math.log(w) - w
        if ln_d < -745.0:
            return 0.0
        return cdf_power(hop2, z / x) * math.exp(ln_d) * inv_g

    settings = settings or QuadratureSettings(abs_tol=1e-10, rel_tol=1e-9)
    # gamma-density mass sits around w ~ mu1
    upper = hop1.mu + 40.0 + 10.0 * math.sqrt(hop1.mu)
    bps = [b for b in (0.01, 0.1, hop1.mu, hop1.mu + 5.0 * math.sqrt(hop1.mu)) if 0 < b < upper]
    val, _, _ = integrate_adaptive(f, 0.0, upper, settings, breakpoints=bps)
    return min(1.0, max(0.0, val))

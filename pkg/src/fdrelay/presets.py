"""Named evaluation scenarios.

Three presets pin the fading family on all three branches (both hops and
the residual loop-back channel):

* ``rayleigh``   alpha=2, mu=1
* ``weibull``    alpha=3, mu=1
* ``nakagami``   alpha=2, mu=2

Shared baseline: 5 m hops with path-loss exponent 2, relay and destination
noise power 1e-4 W (the relay's split equally between antenna and
conversion stages), unit harvesting efficiency, half-block harvesting, unit
root-mean channel gains.  The loop-back strength is exposed separately
because residual self-interference after cancellation is a hardware figure,
not a propagation one.
"""

from __future__ import annotations

from .errors import ScenarioError
from .fading import AlphaMuParams
from .relaysys import SystemConfig

PRESET_FADING = {
    "rayleigh": (2.0, 1.0),
    "weibull": (3.0, 1.0),
    "nakagami": (2.0, 2.0),
}

PRESET_NAMES = tuple(sorted(PRESET_FADING))


def preset_config(name: str, *,
                  source_power: float = 1.0,
                  target_rate: float = 1.0,
                  eta: float = 0.5,
                  theta: float = 1.0,
                  lbi_r_hat: float = 1.0,
                  alpha: float | None = None,
                  mu: float | None = None) -> SystemConfig:
    """Build the named preset, optionally overriding the swept parameters.

    ``alpha`` and ``mu`` override the fading family on all three branches;
    ``lbi_r_hat`` scales only the residual loop-back envelope.
    """
    try:
        base_alpha, base_mu = PRESET_FADING[name]
    except KeyError:
        raise ScenarioError(
            f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}") from None
    a = base_alpha if alpha is None else alpha
    m = base_mu if mu is None else mu
    hop = AlphaMuParams(alpha=a, mu=m, r_hat=1.0)
    lbi = AlphaMuParams(alpha=a, mu=m, r_hat=lbi_r_hat)
    return SystemConfig(
        source_power=source_power,
        hop1_distance=5.0,
        hop2_distance=5.0,
        hop1_pathloss=2.0,
        hop2_pathloss=2.0,
        hop1_fading=hop,
        hop2_fading=hop,
        lbi_fading=lbi,
        noise_antenna_var=5e-5,
        noise_conversion_var=5e-5,
        noise_dest_var=1e-4,
        eh_efficiency=theta,
        eh_time_fraction=eta,
        target_rate=target_rate,
    )

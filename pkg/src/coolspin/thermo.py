"""Single-spin thermodynamic quantities."""
from __future__ import annotations

import math

from scipy import constants


def entropy_binary(eps: float) -> float:
    """Shannon entropy (bits) of one spin at polarization eps in [0, 1]."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"polarization must lie in [0, 1], got {eps}")
    h = 0.0
    for p in ((1.0 + eps) / 2.0, (1.0 - eps) / 2.0):
        if p > 0.0:
            h -= p * math.log2(p)
    return h


def entropy_deficit(eps: float) -> float:
    """1 - entropy_binary(eps), computed without cancellation.

    For eps near 0 the deficit is about eps**2 / (2 ln 2), some ten orders
    below the entropy itself at realistic equilibrium polarizations, so it
    is built from log1p instead of subtracting from 1.
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"polarization must lie in [0, 1], got {eps}")
    if eps == 1.0:
        return 1.0
    return ((1.0 + eps) * math.log1p(eps) + (1.0 - eps) * math.log1p(-eps)) / (2.0 * math.log(2.0))


def thermal_polarization(larmor_hz: float, temperature_k: float) -> float:
    """Equilibrium polarization hbar*omega / (2 kB T) of a spin-1/2.

    CODATA constants via scipy. larmor_hz may be zero (unpolarized limit);
    temperature must be positive.
    """
    if larmor_hz < 0:
        raise ValueError(f"Larmor frequency must be non-negative, got {larmor_hz}")
    if temperature_k <= 0:
        raise ValueError(f"temperature must be positive, got {temperature_k}")
    return constants.hbar * 2.0 * math.pi * larmor_hz / (2.0 * constants.k * temperature_k)

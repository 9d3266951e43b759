"""Dipole emission patterns and collection-optic geometry.

Directions are spherical angles about the quantization (dipole) axis.
The unnormalized transverse polarization states of the emitted photon are

    pi      : (-sin(theta), 0)
    sigma+- : exp(+-i phi)/sqrt(2) * (cos(theta), +-i)

written in (theta-hat, phi-hat) components.  At theta = pi/2 the two are
orthogonal and the pi intensity is twice the sigma intensity; away from
that plane they mix, which is what degrades entanglement fidelity for
large collection apertures.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "EmissionDirection",
    "PolarizationVector",
    "CollectionOptic",
    "CollectionModel",
    "pi_emission",
    "sigma_emission",
    "polarization_overlap",
    "collection_fraction",
    "cone_mixing_weight",
    "pattern_rows",
]

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class EmissionDirection:
    """Spherical direction: polar angle from the dipole axis, azimuth."""

    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= math.pi:
            raise DomainError(f"theta must lie in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise DomainError(f"phi must lie in [0, 2*pi), got {self.phi}")


@dataclass(frozen=True)
class PolarizationVector:
    """Transverse field amplitudes along theta-hat and phi-hat (unnormalized)."""

    e_theta: complex
    e_phi: complex

    @property
    def intensity(self) -> float:
        return abs(self.e_theta) ** 2 + abs(self.e_phi) ** 2


def pi_emission(direction: EmissionDirection) -> PolarizationVector:
    """Polarization of a pi photon: (-sin(theta), 0)."""
    return PolarizationVector(-math.sin(direction.theta), 0.0)


def sigma_emission(direction: EmissionDirection, sign: int) -> PolarizationVector:
    """Polarization of a sigma(+-) photon: exp(+-i phi)/sqrt(2) (cos(theta), +-i)."""
    if sign not in (+1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    phase = cmath.exp(1j * sign * direction.phi) / _SQRT2
    return PolarizationVector(phase * math.cos(direction.theta), phase * sign * 1j)


def polarization_overlap(direction: EmissionDirection, sign: int) -> complex:
    """Inner product <pi | sigma(sign)>, conjugate-linear in the first slot.

    Evaluates to -sin(theta) cos(theta) exp(+-i phi)/sqrt(2): zero in the
    theta = pi/2 observation plane and along the axis, nonzero elsewhere.
    """
    p = pi_emission(direction)
    s = sigma_emission(direction, sign)
    return p.e_theta.conjugate() * s.e_theta + p.e_phi.conjugate() * s.e_phi


class CollectionModel(enum.Enum):
    """Solid-angle fraction model for a lens of numerical aperture NA."""

    QUADRATIC = "quadratic"            # NA^2 / 4, small-angle form
    EXACT_SOLID_ANGLE = "exact"        # (1 - cos(arcsin NA)) / 2


@dataclass(frozen=True)
class CollectionOptic:
    na: float

    def __post_init__(self) -> None:
        if not 0.0 < self.na <= 1.0:
            raise DomainError(f"numerical aperture must lie in (0, 1], got {self.na}")


def collection_fraction(
    optic: CollectionOptic | float,
    model: CollectionModel = CollectionModel.QUADRATIC,
) -> float:
    """Fraction of the full sphere captured by the optic."""
    na = optic.na if isinstance(optic, CollectionOptic) else float(optic)
    if not 0.0 <= na <= 1.0:
        raise DomainError(f"numerical aperture must lie in [0, 1], got {na}")
    if model is CollectionModel.QUADRATIC:
        return na * na / 4.0
    return (1.0 - math.sqrt(1.0 - na * na)) / 2.0


def cone_mixing_weight(na: float, n_polar: int = 200, n_azimuth: int = 100) -> float:
    """Average |<pi|sigma+>|^2 over the collection cone, observation axis in the
    theta = pi/2 plane.

    Midpoint-rule average used only as a qualitative check: it grows
    monotonically with NA, mirroring how a larger aperture admits more
    polarization mixing.  It is not the coefficient of any fidelity formula.
    """
    if not 0.0 < na <= 1.0:
        raise DomainError(f"numerical aperture must lie in (0, 1], got {na}")
    beta = math.asin(na)
    alpha = (np.arange(n_polar) + 0.5) * (beta / n_polar)
    psi = (np.arange(n_azimuth) + 0.5) * (2.0 * math.pi / n_azimuth)
    a, p = np.meshgrid(alpha, psi, indexing="ij")
    cos_theta = np.sin(a) * np.sin(p)          # direction at angle a from the x axis
    sin2_cos2 = (1.0 - cos_theta**2) * cos_theta**2
    weight = np.sin(a)
    return float((sin2_cos2 / 2.0 * weight).sum() / weight.sum())


def pattern_rows(thetas, phis):
    """Emission-pattern samples for export.

    Yields ``(theta, phi, i_pi, i_sigma_plus, i_sigma_minus, overlap_abs)``
    per grid point, intensities from the unnormalized states above.
    """
    for theta in thetas:
        for phi in phis:
            d = EmissionDirection(float(theta), float(phi))
            yield (
                d.theta,
                d.phi,
                pi_emission(d).intensity,
                sigma_emission(d, +1).intensity,
                sigma_emission(d, -1).intensity,
                abs(polarization_overlap(d, +1)),
            )

"""Linear RF (Paul) trap: radial pseudopotential and secular frequency.

For drive amplitude V0 at angular frequency Omega, ion-electrode distance r
and geometric factor eta, the time-averaged potential seen by an ion of
mass m and charge e is

    psi(x, y) = e^2 V0^2 eta^2 (x^2 + y^2) / (4 m r^4 Omega^2)

and the radial secular frequency is

    omega_s = e V0 eta / (sqrt(2) m r^2 Omega),

so psi(x, y) = (1/2) m omega_s^2 (x^2 + y^2) identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import scipy.constants as const

from .errors import DomainError

__all__ = ["TrapConfig", "pseudopotential", "secular_frequency"]

_AMU = const.physical_constants["atomic mass constant"][0]


@dataclass(frozen=True)
class TrapConfig:
    """Trap drive and geometry, all SI units."""

    v0: float          # RF amplitude, V
    omega_rf: float    # RF drive angular frequency, rad/s
    r: float           # ion-electrode distance, m
    eta: float         # geometric factor, 1 for hyperbolic electrodes
    mass: float        # ion mass, kg
    charge: float      # ion charge, C

    def __post_init__(self) -> None:
        for name in ("v0", "omega_rf", "r", "eta", "mass", "charge"):
            if getattr(self, name) <= 0.0:
                raise DomainError(f"{name} must be strictly positive")
        if self.eta > 1.0:
            raise DomainError("eta cannot exceed 1 (perfect hyperbolic geometry)")

    @classmethod
    def from_lab_units(
        cls,
        v0: float,
        f_rf_mhz: float,
        r_um: float,
        eta: float,
        mass_amu: float,
        charge_e: float = 1.0,
    ) -> "TrapConfig":
        """Build from the units quoted on a lab bench (MHz, micrometers, amu)."""
        return cls(
            v0=v0,
            omega_rf=2.0 * math.pi * f_rf_mhz * 1e6,
            r=r_um * 1e-6,
            eta=eta,
            mass=mass_amu * _AMU,
            charge=charge_e * const.e,
        )


def pseudopotential(config: TrapConfig, x: float, y: float):
    """Ponderomotive pseudopotential energy at radial offset (x, y), in joules."""
    scale = (config.charge * config.v0 * config.eta) ** 2 / (
        4.0 * config.mass * config.r**4 * config.omega_rf**2
    )
    return scale * (x * x + y * y)


def secular_frequency(config: TrapConfig) -> float:
    """Radial secular angular frequency, rad/s."""
    return (config.charge * config.v0 * config.eta) / (
        math.sqrt(2.0) * config.mass * config.r**2 * config.omega_rf
    )

"""Fiber transmission and end-to-end link budgets.

Attenuation is the usual engineering constant in dB/km, so a length L of
fiber transmits the fraction 10^(-alpha L / 10).  Converting a photon to a
lower-loss band pays a one-off efficiency factor; past the crossover
distance the converted channel wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NoCrossingError
from .qfc import ConversionStage, chain_efficiency

__all__ = [
    "FiberChannel",
    "LinkBudget",
    "STANDARD_ATTENUATION_DB_PER_KM",
    "standard_channel",
    "transmission",
    "conversion_crossing",
    "link_rate",
    "end_to_end_rate",
]

#: Representative attenuation of wavelength-specific single-mode fiber.
STANDARD_ATTENUATION_DB_PER_KM = {
    493: 50.0,
    650: 15.0,
    780: 3.5,
    1259: 0.3,
    1550: 0.18,
}


@dataclass(frozen=True)
class FiberChannel:
    """A wavelength and the loss (positive dB/km) of its dedicated fiber."""

    wavelength_nm: float
    attenuation_db_per_km: float

    def __post_init__(self) -> None:
        if self.wavelength_nm <= 0.0:
            raise DomainError("wavelength must be positive")
        if self.attenuation_db_per_km < 0.0:
            raise DomainError("attenuation must be nonnegative (loss is a positive number)")


def standard_channel(wavelength_nm: int) -> FiberChannel:
    """Bundled channel for one of the five reference wavelengths."""
    try:
        return FiberChannel(float(wavelength_nm), STANDARD_ATTENUATION_DB_PER_KM[wavelength_nm])
    except KeyError:
        known = ", ".join(str(k) for k in sorted(STANDARD_ATTENUATION_DB_PER_KM))
        raise DomainError(
            f"no bundled attenuation for {wavelength_nm} nm (known: {known})"
        ) from None


def transmission(fiber: FiberChannel, length_km: float) -> float:
    """Power transmission fraction 10^(-alpha L / 10)."""
    if length_km < 0.0:
        raise DomainError("length must be nonnegative")
    return 10.0 ** (-fiber.attenuation_db_per_km * length_km / 10.0)


def conversion_crossing(
    raw: FiberChannel, converted: FiberChannel, efficiency: float
) -> float:
    """Distance beyond which converting beats staying raw, in km.

    Solves efficiency * 10^(-a_c L / 10) = 10^(-a_r L / 10):
    L = 10 log10(1/efficiency) / (a_r - a_c).  Unit efficiency crosses at 0.
    """
    if not 0.0 < efficiency <= 1.0:
        raise DomainError(f"efficiency must lie in (0, 1], got {efficiency}")
    delta = raw.attenuation_db_per_km - converted.attenuation_db_per_km
    if delta <= 0.0:
        raise NoCrossingError(
            f"converted channel ({converted.attenuation_db_per_km} dB/km) does not "
            f"improve on the raw one ({raw.attenuation_db_per_km} dB/km): no crossover"
        )
    if efficiency == 1.0:
        return 0.0
    return 10.0 * math.log10(1.0 / efficiency) / delta


@dataclass(frozen=True)
class LinkBudget:
    """Everything multiplying into the delivered entanglement rate."""

    source_rate: float                      # entangled-photon probability per attempt
    repetition_rate_hz: float               # attempts per second
    fiber: FiberChannel
    length_km: float
    detector_efficiency: float
    qfc_chain: tuple[ConversionStage, ...] = ()

    def __post_init__(self) -> None:
        for name in ("source_rate", "detector_efficiency"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {value}")
        if self.repetition_rate_hz < 0.0 or self.length_km < 0.0:
            raise DomainError("repetition rate and length must be nonnegative")
        object.__setattr__(self, "qfc_chain", tuple(self.qfc_chain))


def link_rate(
    source_rate: float,
    repetition_rate_hz: float,
    conversion_efficiency: float,
    fiber: FiberChannel,
    length_km: float,
    detector_efficiency: float,
) -> float:
    """Delivered rate in Hz for a scalar conversion efficiency."""
    return (
        repetition_rate_hz
        * source_rate
        * conversion_efficiency
        * transmission(fiber, length_km)
        * detector_efficiency
    )


def end_to_end_rate(budget: LinkBudget) -> float:
    """Delivered entanglement rate of a full budget, in Hz."""
    return link_rate(
        budget.source_rate,
        budget.repetition_rate_hz,
        chain_efficiency(budget.qfc_chain),
        budget.fiber,
        budget.length_km,
        budget.detector_efficiency,
    )


def transmission_curves(
    max_km: float,
    step_km: float,
    eta_780: float = 0.05,
    eta_1259: float = 0.05,
    eta_1550: float = 0.18,
) -> tuple[list[str], list[list[float]]]:
    """Reference transmission traces, converted ones pre-scaled by their efficiency.

    Returns the CSV header and rows: raw 493 nm and 650 nm traces next to
    the 780/1259/1550 nm converted ones, each multiplied by the quoted
    conversion efficiency so curves are directly comparable.
    """
    if max_km < 0.0 or step_km <= 0.0:
        raise DomainError("max_km must be nonnegative and step_km positive")
    header = [
        "length_km",
        "t_493",
        f"t_780_x{eta_780:g}",
        "t_650",
        f"t_1259_x{eta_1259:g}",
        f"t_1550_x{eta_1550:g}",
    ]
    channels = [standard_channel(nm) for nm in (493, 780, 650, 1259, 1550)]
    scales = [1.0, eta_780, 1.0, eta_1259, eta_1550]
    rows = []
    n_steps = int(math.floor(max_km / step_km + 1e-9))
    for i in range(n_steps + 1):
        length = i * step_km
        rows.append(
            [length] + [s * transmission(ch, length) for ch, s in zip(channels, scales)]
        )
    return header, rows

"""Planning toolkit for a trapped Ba+ ion-photon quantum network link.

Subpackages by capability:

* :mod:`ionlink.atomic` - level structure, decay amplitudes, branching model
* :mod:`ionlink.schemes` - entanglement schemes, fidelity and probability vs NA
* :mod:`ionlink.emission` - dipole emission patterns and collection optics
* :mod:`ionlink.pump_cycle` - exact and Monte Carlo pump-cycle solvers
* :mod:`ionlink.trap` - linear RF trap pseudopotential and secular frequency
* :mod:`ionlink.qfc` - three-wave-mixing conversion stages and poling design
* :mod:`ionlink.fiber` - attenuation, crossover distances, link budgets
* :mod:`ionlink.cli` - the ``ionlink`` command-line front end
"""

from .atomic import (
    BranchingModel,
    DecayChannel,
    Level,
    Polarization,
    ZeemanState,
    allowed_decays,
    default_barium_model,
    load_model,
    save_model,
)
from .emission import (
    CollectionModel,
    CollectionOptic,
    EmissionDirection,
    PolarizationVector,
    collection_fraction,
    pi_emission,
    polarization_overlap,
    sigma_emission,
)
from .errors import ChainError, DomainError, NoCrossingError, NumericError
from .fiber import (
    FiberChannel,
    LinkBudget,
    conversion_crossing,
    end_to_end_rate,
    link_rate,
    standard_channel,
    transmission,
)
from .pump_cycle import ChainOutcome, PumpCycleConfig, simulate, solve_exact
from .qfc import (
    ConversionStage,
    DispersionModel,
    LightField,
    MixKind,
    NoiseFinding,
    chain_efficiency,
    dfg_output,
    load_dispersion,
    noise_audit,
    plan_stage,
    qpm_residual,
    sfg_output,
    solve_poling_period,
    standard_conversion_table,
)
from .schemes import (
    D_SHELVING,
    SCHEMES,
    STRONG,
    WEAK,
    BranchProbabilities,
    CycleAmplitudes,
    SchemeSpec,
    TwoQubitState,
    bad_state,
    double_excitation_probability,
    entanglement_probability,
    fidelity,
    fidelity_at_na,
    geometric_branch_probabilities,
    good_state,
    reexcitation_mixture,
    scheme_comparison,
)
from .trap import TrapConfig, pseudopotential, secular_frequency

__version__ = "0.1.0"

"""Thermodynamics and wave curves of a singly ionized monatomic gas under Saha's law."""
from .thermo import (
    HYDROGEN,
    DomainError,
    GasModel,
    ThermoState,
    alpha_from_pT,
    alpha_from_rhoT,
    entropy_alphaT,
    entropy_pT,
    partials,
    pressure_from_alphaT,
    state_from_alphaT,
    state_from_pT,
    state_from_rhoT,
)
from .characteristics import (
    eigen,
    gn_threshold_root,
    inflection_f,
    is_gn_sufficient,
    trace_inflection_locus,
)
from .hugoniot import (
    RefState,
    ShockSolution,
    TracingError,
    entropy_jump,
    kinetic_roots,
    reference_state,
    shock_from_pressure,
    solve_shock_state,
    trace_thermo_locus,
)
from .rarefaction import alpha_infinity, integrate_rarefaction, isentrope_T, sample_isentrope

__version__ = "0.1.0"

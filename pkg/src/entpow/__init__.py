"""Entangling power and its deviation for bipartite unitary operations.

The package computes how much entanglement a unitary generates on average
over Haar-random product inputs (EP) and how strongly that amount varies
with the input (EPD), through three mutually validating routes: exact
permutation-trace evaluation (dense and cycle-reduction paths), closed-form
gate-family expressions, and seeded Monte Carlo sampling.
"""

__version__ = "0.1.0"

from .engine import (
    EpEpdResult,
    check_zero_ep_conditions,
    cycle_trace,
    ep_epd,
    ep_exact,
    ep_from_operator_entanglement,
    epd_exact_cycle,
    epd_exact_dense,
    linear_entropy,
    operator_entanglement,
)
from .gates import (
    FAMILIES,
    GateSpec,
    build,
    closed_form_ep_epd,
    eta_ratio,
    gate,
    kak_scan,
)
from .linalg import (
    PureState,
    SubsystemLayout,
    contract_network,
    kron,
    load_matrix,
    partial_trace,
    save_matrix,
)
from .moments import MomentState, moment_constants, omega, pure_state_haar_average
from .montecarlo import (
    McEstimate,
    SamplerConfig,
    estimate_ep_epd,
    haar_unitary,
    sample_haar_state,
)
from .permutations import GroupSum, Permutation, from_cycles, realize, sym_projector

__all__ = [
    "__version__",
    "EpEpdResult",
    "check_zero_ep_conditions",
    "cycle_trace",
    "ep_epd",
    "ep_exact",
    "ep_from_operator_entanglement",
    "epd_exact_cycle",
    "epd_exact_dense",
    "linear_entropy",
    "operator_entanglement",
    "FAMILIES",
    "GateSpec",
    "build",
    "closed_form_ep_epd",
    "eta_ratio",
    "gate",
    "kak_scan",
    "PureState",
    "SubsystemLayout",
    "contract_network",
    "kron",
    "load_matrix",
    "partial_trace",
    "save_matrix",
    "MomentState",
    "moment_constants",
    "omega",
    "pure_state_haar_average",
    "McEstimate",
    "SamplerConfig",
    "estimate_ep_epd",
    "haar_unitary",
    "sample_haar_state",
    "GroupSum",
    "Permutation",
    "from_cycles",
    "realize",
    "sym_projector",
]

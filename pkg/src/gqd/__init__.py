"""Geometric quantum discord, negativity, and discord-based key-rate bounds."""

from .bloch import BlochTriplet, build_basis, decompose, reconstruct
from .discord import (
    A_SIDE,
    B_SIDE,
    DiscordResult,
    OracleConfig,
    OracleResult,
    discord_auto,
    gqd_3x3,
    gqd_general,
    gqd_two_qubit,
    m_matrix,
    oracle_gqd,
)
from .entanglement import EntanglementReport, classify, compare_discord_negativity, negativity
from .matcore import (
    DensityMatrix,
    Spectrum,
    hermitian_eig,
    hs_norm,
    kron,
    partial_trace,
    partial_transpose,
    trace_norm,
    validate_density,
)
from .qkd import (
    KeyRateReport,
    ShieldQuadruple,
    SqueezeWeights,
    assemble_private_state,
    bound_from_discords,
    ccq_projectors,
    check_o4,
    feasibility_interval,
    key_rate_lower_bound,
    squeeze_weights,
    verify_classical_witness,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"

"""Concurrence of stochastic 1-qubit maps and rank-2 states of 2 x n systems."""

from ._qroof import (
    AffineMap,
    AxialClosedForm,
    BipartiteState,
    CanonicalParams,
    CausalClass,
    Decomposition,
    EofBound,
    Error,
    FourVector,
    OracleConfig,
    RoofOptions,
    RoofSolution,
    SufficiencyReport,
    amplitude_damping,
    apply,
    axial,
    axial_w0_closed_form,
    brute_force_concurrence,
    build_q,
    causal_class,
    choi_matrix,
    concurrence,
    concurrence_2xn,
    depolarizing,
    eof_bound,
    eof_from_concurrence,
    from_canonical,
    identity_map,
    induced_map,
    is_completely_positive,
    is_positive,
    minkowski_dot,
    optimal_decomposition,
    pencil_eigenvalues,
    phase_damping,
    solve_w0,
    two_point_sufficiency,
    unital,
    unital_concurrence_closed_form,
    wootters_concurrence,
)

__version__ = "0.1.0"

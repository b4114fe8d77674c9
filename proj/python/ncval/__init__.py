"""Noncommutative values of quantum observables.

Python face of the C++ engine: 2-jets of expectation functions on projective
Hilbert space, the star product that makes evaluation an algebra
homomorphism, cross-validated dynamics pictures, a truncated oscillator
model, and simulated tomography.
"""

from ncval._core import (  # noqa: F401
    CanonicalFlowTrajectory,
    CounterRng,
    DegeneracyPair,
    DegeneracyReport,
    DensityMatrix,
    EhrenfestTrace,
    ExpectationEstimate,
    HamiltonianTerm,
    IncompleteObservableSet,
    MeasurementRecord,
    NCValue,
    Operator,
    OperatorTrajectory,
    OscillatorSystem,
    PauliSystem,
    PictureEquivalenceReport,
    ProjectiveState,
    RealJet,
    SeparableHamiltonian,
    SpectralDecomposition,
    StateTrajectory,
    StepperConfig,
    SuiteConfig,
    SuiteReport,
    TrajectoryMeta,
    __version__,
    anticommutator,
    build_oscillator,
    ccr_defect,
    coherent_state,
    commutator,
    density_expectation,
    describe,
    ehrenfest_trace,
    empirical_moments,
    estimate_expectation,
    expectation,
    expectation_degeneracy_pair,
    fidelity,
    finite_difference_jet,
    fock_state,
    from_real_jet,
    gauge_fix,
    gellmann_basis,
    hamilton_operator_flow,
    hamilton_system_flow,
    heisenberg_propagate,
    jordan_product_value,
    load_operator,
    load_record,
    load_state,
    make_separable_hamiltonian,
    multiplicativity_defect,
    ncvalue,
    pauli_system,
    picture_equivalence_check,
    poisson_bracket,
    pure_density,
    purity,
    random_hermitian,
    random_operator,
    random_state,
    ray_distance,
    realcoord_flow,
    reconstruct_density,
    reconstruct_density_from_records,
    reconstruct_operator,
    run_suite,
    sample_measurement,
    save_operator,
    save_record,
    save_state,
    schrodinger_propagate,
    spectral_decompose,
    star_product,
    suite_names,
    tensor_product,
    to_operator,
    to_real_jet,
    trace_distance,
)

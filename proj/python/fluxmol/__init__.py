"""Spectra, flux sweeps, parameter fits and dephasing budgets for an
inductively coupled two-fluxonium molecule."""

from fluxmol._core import (  # noqa: F401
    AntennaParams,
    DephasingResult,
    DeviceConfig,
    FitResult,
    FluxNoiseModel,
    ModeBasis,
    MoleculeParams,
    PhaseSlipEstimate,
    Spectrum,
    TransitionObservation,
    asymmetry_sensitivity,
    build_hamiltonian,
    build_hamiltonian_gauge2,
    classical_minima,
    convergence_check,
    cosine_phase_op,
    critical_current_dephasing,
    diagonalize,
    echo_ramsey_ratio,
    fit,
    fit_objective,
    flux_sensitivity,
    flux_sweep,
    ladder_ops,
    load_device_config,
    make_mode_basis,
    matrix_exponential,
    number_op,
    one_over_f_psd,
    phase_op,
    phase_slip_estimate,
    photon_noise_rate,
    potential_landscape,
    potential_value,
    ramsey_rate_common,
    ramsey_rate_diff,
    spectrum_at,
    swap_parity,
    tensor_product,
    thermal_population,
    wavefunction_grid,
)

__version__ = "0.1.0"

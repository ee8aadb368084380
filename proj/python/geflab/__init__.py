"""Zero statistics of the Gaussian entire function: certified truncations,
hole classification, and rare-event Monte Carlo."""

from ._core import (
    CertificationError,
    CountResult,
    DegenerateInputError,
    DiscZeroSet,
    FitResult,
    McEstimate,
    NotInOmegaError,
    OmegaChainReport,
    PoissonProbe,
    RngState,
    SingularGridError,
    TruncatedGef,
    circle_mean_log_modulus,
    classify_hole,
    cli_run,
    conditional_omega_degree,
    derive_trial_rng,
    estimate_event_probability,
    evaluate,
    find_zeros,
    fit_decay_exponent,
    gaussian_small_ball,
    gaussian_tail,
    gef_from_json,
    jensen_residual,
    local_sup_log_modulus,
    log_gaussian_small_ball,
    log_gaussian_tail,
    log_prob_omega,
    make_poisson_probe,
    max_modulus_on_circle,
    poisson_kernel,
    probe_deviation,
    sample_conditional_omega,
    sample_gef,
    sample_standard_complex,
    tail_bound,
    truncation_degree,
    verify_omega_chain,
    wilson_interval,
    winding_count,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

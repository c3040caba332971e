"""Exact risk, couplings, and certified constants for continuous-time
least-squares estimators: gradient flow, the accelerated (Bessel-kernel)
flow, heavy-ball flow, and ridge regression.
"""

from .bounds import (
    GridSpec,
    HbAux,
    MinMaxResult,
    bias_ratio_unbounded_witness,
    gf_inflation_constant,
    h_kappa,
    hb_inflation_check,
    hb_param_error_check,
    hb_variance_bound_check,
    hb_kernel_bound_checks,
    nest_inflation_constant,
    nest_param_error_constant,
    tilde_h,
    tilde_h_crossover,
    tilde_h_maximizer,
)
from .estimators import (
    CoefficientPathPoint,
    coefficient_path,
    coupling_gap,
    flow_estimate,
    ridge_estimate,
)
from .experiments import (
    ConfigError,
    DesignSpec,
    ExperimentConfig,
    figure_sweep,
    gen_iid_design,
    gen_orthogonal_design,
    gen_power_law_design,
    gen_signal,
)
from .linalg import (
    SpectralDesign,
    Spectrum,
    attach_response,
    design_decompose,
    sym_eig,
)
from .oracle import (
    DecoupledState,
    IterateConfig,
    Trajectory,
    compare_closed_form,
    discrete_iterates,
    integrate_flow,
)
from .risk import (
    RiskDecomposition,
    SignalModel,
    bayes_risk,
    fixed_risk,
    optimal_ridge_bayes_risk,
    oscillation_report,
    risk_curve,
)
from .rng import SeededStream, derive_seed
from .shrinkage import (
    FlowKind,
    ShrinkageProfile,
    gf_shrink,
    hb_shrink,
    nest_shrink,
    profile,
    ridge_shrink,
)
from .special import bessel_j1, j1_ratio, j1_ratio_complement

__version__ = "0.1.0"

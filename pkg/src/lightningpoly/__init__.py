"""Lightning-style rational approximation with clustered poles.

The package builds rational approximants whose poles cluster
exponentially toward a singularity, reproducing root-exponential
convergence for power and power-log prototypes on sectors, and applies
the same pole scheme to Laplace boundary problems and conformal maps on
polygons.
"""

from .approximant import (ANALYTIC_TAIL, DELTA_DEFAULT, LS_POLY,
                          DiscretizationPlan, LightningApproximant, PoleSet,
                          analytic_residues_pow, analytic_residues_pow_log,
                          build_lp, cluster_poles, eval_approximant,
                          from_json_dict, load_approximant, make_plan,
                          quadrature_sum, rect_sum, save_approximant,
                          sigma_opt, sup_error, to_json_dict)
from .bench import (ConvergenceRecord, ErrorBudget, RateModel,
                    clustering_constant, compare_sigma, default_n2, fit_rate,
                    lp_error_budget, rate_report, records_from_csv,
                    records_to_csv, records_to_csv_text, sweep_prototype)
from .core import (G_CATALOG, POW, POW_LOG, PrototypeSpec, SectorDomain,
                   chebyshev_nodes, kappa_of_beta, lagrange_eval, make_sector,
                   prototype_eval, sample_sector)
from .errors import (AccuracyError, BranchCutError, GeometryError,
                     PoleProximityError, RankError)
from .laplace import (ConformalMap, CornerDomain, LaplaceSolution,
                      boundary_grid, conformal_checks, conformal_map,
                      error_profile_csv, eval_analytic, eval_harmonic,
                      eval_map, load_polygon, make_polygon, point_in_polygon,
                      refine_check, save_polygon, solution_to_json_dict,
                      solve_laplace)
from .lsq import OrthoBasis, build_ortho_basis, ls_solve
from .quadrature import (FourierDecayFit, FourierDecayProfile,
                         TrapezoidResult, closed_form_E1, closed_form_E2,
                         closed_form_I1, closed_form_I2, closed_form_sinc,
                         fourier_decay_fit, fourier_transform,
                         integral_rep_pow, integral_rep_pow_log,
                         poisson_error_bound, trapezoid_real_line)

__version__ = "0.1.0"

__all__ = [
    "ANALYTIC_TAIL", "DELTA_DEFAULT", "LS_POLY", "DiscretizationPlan",
    "LightningApproximant", "PoleSet", "analytic_residues_pow",
    "analytic_residues_pow_log", "build_lp", "cluster_poles",
    "eval_approximant", "from_json_dict", "load_approximant", "make_plan",
    "quadrature_sum", "rect_sum", "save_approximant", "sigma_opt",
    "sup_error", "to_json_dict",
    "ConvergenceRecord", "ErrorBudget", "RateModel", "clustering_constant",
    "compare_sigma", "default_n2", "fit_rate", "lp_error_budget",
    "rate_report", "records_from_csv", "records_to_csv",
    "records_to_csv_text", "sweep_prototype",
    "G_CATALOG", "POW", "POW_LOG", "PrototypeSpec", "SectorDomain",
    "chebyshev_nodes", "kappa_of_beta", "lagrange_eval", "make_sector",
    "prototype_eval", "sample_sector",
    "AccuracyError", "BranchCutError", "GeometryError", "PoleProximityError",
    "RankError",
    "ConformalMap", "CornerDomain", "LaplaceSolution", "boundary_grid",
    "conformal_checks", "conformal_map", "error_profile_csv",
    "eval_analytic", "eval_harmonic", "eval_map", "load_polygon",
    "make_polygon", "point_in_polygon", "refine_check", "save_polygon",
    "solution_to_json_dict", "solve_laplace",
    "OrthoBasis", "build_ortho_basis", "ls_solve",
    "FourierDecayFit", "FourierDecayProfile", "TrapezoidResult",
    "closed_form_E1", "closed_form_E2", "closed_form_I1", "closed_form_I2",
    "closed_form_sinc", "fourier_decay_fit", "fourier_transform",
    "integral_rep_pow", "integral_rep_pow_log", "poisson_error_bound",
    "trapezoid_real_line",
]

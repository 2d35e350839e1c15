#pragma once

// Frozen pass/fail constants for desk-scale checks. All are calibrated at
// x <= 10^6 on the bundled curves; none is a theorem.

namespace eulerlab::experiments::thresholds {

inline constexpr double ap_runtime_seconds = 5.0;
inline constexpr double fe_residual = 1e-8;
inline constexpr double afe_dirichlet = 1e-9;
inline constexpr double explicit_formula_residual = 0.05;
inline constexpr double explicit_formula_residual_s25 = 1e-3;
inline constexpr double explicit_formula_runtime_seconds = 30.0;
inline constexpr double derivative_identity = 1e-6;
inline constexpr double derivative_identity_step = 1e-5;
inline constexpr double u1_deviation = 0.05;
inline constexpr double mertens_stabilization = 0.05;
inline constexpr double bsd_deviation_rank0 = 0.25;
inline constexpr double psi_envelope = 10.0;          // |psi| <= c x (log x)^2
inline constexpr double excursion_lambda = 5.0;
inline constexpr double default_excursion_lambda = 1.0;
inline constexpr double cn_np_gap = 2.0;              // |sum c_n - log prod N_p/p|
inline constexpr double goldfeld_band = 4.0;
inline constexpr double zero_fit_residual_factor = 3.0;  // max residual <= f log t_max
inline constexpr double ingestion_cross_check = 1e-6;
inline constexpr int default_checkpoints = 24;

}  // namespace eulerlab::experiments::thresholds

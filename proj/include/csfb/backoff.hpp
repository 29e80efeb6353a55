#pragma once

#include <utility>

namespace csfb::backoff {

/// Solution of the back-off stationarity equation.
struct BackoffSolution {
    double delta;        ///< Δ*, the back-off applied to SNR estimates
    double efficiency;   ///< η = 1 − Q(Δ*/σ_e), P(estimate error ≤ Δ*)
    double residual;     ///< |g(Δ*)|, the stationarity defect at the root
    std::pair<double, double> bracket;  ///< search interval used
};

/// Back-off efficiency η = 1 − Q(Δ/σ_e): the probability that backing off by
/// Δ covers the Gaussian estimation error. Throws std::domain_error for
/// σ_e <= 0 or Δ < 0.
double backoff_efficiency(double delta, double sigma_e);

/// Optimal back-off Δ*: the root of
///   g(Δ) = ((1+γ̄_eq−Δ)/(√(2π)σ_e))·exp(−Δ²/(2σ_e²))·ln(1+γ̄_eq−Δ)
///          + Q(Δ/σ_e) − 1
/// on [ε·γ̄_eq, γ̄_eq] with ε = 1e-12, found by bisection. This stationarity
/// point maximizes ln(1+γ̄_eq−Δ)·(1−Q(Δ/σ_e)). Natural logarithm throughout;
/// rate reporting converts bases afterwards. Stops at |g| <= tol or bracket
/// width <= 1e-12·γ̄_eq. Throws std::domain_error on invalid inputs and
/// std::runtime_error (with endpoint values) when g does not change sign on
/// the bracket — callers fall back to Δ = 0.
BackoffSolution solve_optimal_backoff(double mean_eq_snr, double sigma_e,
                                      double tol = 1e-10);

/// Backed-off SNR target max(estimate − Δ, 0); a negative target is
/// meaningless, so it clamps at zero.
double apply_backoff(double estimate, double delta);

}  // namespace csfb::backoff

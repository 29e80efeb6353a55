#include "csfb/backoff.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "csfb/specfun.hpp"

namespace csfb::backoff {

namespace {

double stationarity_gap(double delta, double mean_eq_snr, double sigma_e) {
    double headroom = 1.0 + mean_eq_snr - delta;
    double gauss = std::exp(-delta * delta / (2.0 * sigma_e * sigma_e)) /
                   (std::sqrt(2.0 * M_PI) * sigma_e);
    return headroom * gauss * std::log(headroom) +
           specfun::q_function(delta / sigma_e) - 1.0;
}

}  // namespace

double backoff_efficiency(double delta, double sigma_e) {
    if (!(sigma_e > 0.0)) {
        throw std::domain_error("backoff_efficiency: sigma_e must be > 0");
    }
    if (!(delta >= 0.0)) {
        throw std::domain_error("backoff_efficiency: delta must be >= 0");
    }
    return 1.0 - specfun::q_function(delta / sigma_e);
}

BackoffSolution solve_optimal_backoff(double mean_eq_snr, double sigma_e, double tol) {
    if (!(mean_eq_snr > 0.0)) {
        throw std::domain_error("solve_optimal_backoff: mean_eq_snr must be > 0");
    }
    if (!(sigma_e > 0.0)) {
        throw std::domain_error("solve_optimal_backoff: sigma_e must be > 0");
    }
    double lo = 1e-12 * mean_eq_snr;
    double hi = mean_eq_snr;
    double g_lo = stationarity_gap(lo, mean_eq_snr, sigma_e);
    double g_hi = stationarity_gap(hi, mean_eq_snr, sigma_e);
    if (!(g_lo > 0.0 && g_hi < 0.0) && !(g_lo < 0.0 && g_hi > 0.0)) {
        std::ostringstream msg;
        msg << "solve_optimal_backoff: no sign change on bracket [" << lo << ", " << hi
            << "], g(lo) = " << g_lo << ", g(hi) = " << g_hi;
        throw std::runtime_error(msg.str());
    }
    double mid = 0.5 * (lo + hi);
    double g_mid = stationarity_gap(mid, mean_eq_snr, sigma_e);
    for (int iter = 0; iter < 200; ++iter) {
        if (std::abs(g_mid) <= tol || (hi - lo) <= 1e-12 * mean_eq_snr) {
            break;
        }
        if ((g_lo > 0.0) == (g_mid > 0.0)) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
        mid = 0.5 * (lo + hi);
        g_mid = stationarity_gap(mid, mean_eq_snr, sigma_e);
    }
    BackoffSolution solution;
    solution.delta = mid;
    solution.efficiency = backoff_efficiency(mid, sigma_e);
    solution.residual = std::abs(g_mid);
    solution.bracket = {1e-12 * mean_eq_snr, mean_eq_snr};
    return solution;
}

double apply_backoff(double estimate, double delta) {
    double target = estimate - delta;
    return target > 0.0 ? target : 0.0;
}

}  // namespace csfb::backoff

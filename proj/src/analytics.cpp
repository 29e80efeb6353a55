#include "csfb/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "csfb/specfun.hpp"

namespace csfb::analytics {

namespace {

constexpr double kCancellationLimit = 1e-7;  // est. relative error that trips fallback

double log_binomial(int n, int k) {
    return specfun::log_gamma(n + 1.0) - specfun::log_gamma(k + 1.0) -
           specfun::log_gamma(n - k + 1.0);
}

// Compensated (Kahan) accumulator that also tracks the total absolute mass,
// so the caller can bound the cancellation-induced relative error.
struct MonitoredSum {
    double sum = 0.0;
    double comp = 0.0;
    double abs_mass = 0.0;

    void add(double term) {
        abs_mass += std::abs(term);
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }

    // Estimated relative error of `sum` from accumulating abs_mass worth of
    // terms each carrying O(eps) of its own magnitude.
    double est_rel_error() const {
        if (sum == 0.0) return abs_mass > 0.0 ? 1.0 : 0.0;
        return abs_mass / std::abs(sum) * 2.3e-16;
    }
};

// P(strongest of N users <= x) = (1 - e^{-x/γ̄})^N, evaluated stably.
double max_user_cdf(double x, double mean_snr, int n) {
    return std::pow(-std::expm1(-x / mean_snr), n);
}

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature (internal helper for the density integrals).
// ---------------------------------------------------------------------------

struct SimpsonWorker {
    const std::function<double(double)>& f;
    double rel_tol;
    int max_depth;

    double recurse(double a, double b, double fa, double fm, double fb, double whole,
                   int depth) const {
        double m = 0.5 * (a + b);
        double lm = 0.5 * (a + m);
        double rm = 0.5 * (m + b);
        double flm = f(lm);
        double frm = f(rm);
        double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        double delta = left + right - whole;
        if (depth >= max_depth ||
            std::abs(delta) <= 15.0 * rel_tol * (std::abs(left) + std::abs(right) + 1e-300)) {
            return left + right + delta / 15.0;
        }
        return recurse(a, m, fa, flm, fm, left, depth + 1) +
               recurse(m, b, fm, frm, fb, right, depth + 1);
    }

    double integrate(double a, double b) const {
        if (!(b > a)) return 0.0;
        double m = 0.5 * (a + b);
        double fa = f(a);
        double fm = f(m);
        double fb = f(b);
        double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        return recurse(a, b, fa, fm, fb, whole, 0);
    }
};

// Integrates f over [0, upper] with panel seeds at the distributional
// landmarks, so the adaptive refinement starts near the mass.
double integrate_density(const std::function<double(double)>& f, double upper,
                         const std::vector<double>& landmarks) {
    std::vector<double> knots{0.0, upper};
    for (double x : landmarks) {
        if (x > 0.0 && x < upper) knots.push_back(x);
    }
    std::sort(knots.begin(), knots.end());
    SimpsonWorker worker{f, 1e-10, 48};
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        total += worker.integrate(knots[i], knots[i + 1]);
    }
    return total;
}

// Density pieces as separate callables so μ₁/μ₂ keep their identity on the
// quadrature route.
double g1_density(double x, const AnalyticInputs& in) {
    double gbar = in.mean_user_snr;
    double n = static_cast<double>(in.n_users);
    double tail = specfun::reg_upper_inc_gamma(in.nakagami_d,
                                               in.sinr_scale * x / in.nakagami_theta);
    double peak = std::pow(-std::expm1(-x / gbar), in.n_users - 1);
    return n / gbar * std::exp(-x / gbar) * peak * tail;
}

double g2_density(double x, const AnalyticInputs& in) {
    if (x <= 0.0) return 0.0;
    double d = in.nakagami_d;
    double rate = in.sinr_scale / in.nakagami_theta;  // λ/θ
    double log_pdf = d * std::log(rate) + (d - 1.0) * std::log(x) - rate * x -
                     specfun::log_gamma(d);
    double reach = 1.0 - max_user_cdf(x, in.mean_user_snr, in.n_users);
    return reach * std::exp(log_pdf);
}

MeanSnrParts mean_by_quadrature(const AnalyticInputs& in) {
    double gbar = in.mean_user_snr;
    double d = in.nakagami_d;
    double scale = in.nakagami_theta / in.sinr_scale;  // Gamma scale of the SINR
    // Both pieces decay at least as e^{-x/γ̄} beyond the strongest-user range,
    // and G₂'s own Gamma tail is covered by its mean + wide deviation band.
    double upper = std::max(gbar * (std::log(static_cast<double>(in.n_users)) + 45.0),
                            scale * (d + 45.0 * std::sqrt(d) + 45.0));
    std::vector<double> landmarks{0.25 * gbar, gbar,
                                  gbar * (std::log(static_cast<double>(in.n_users)) + 1.0),
                                  scale * d, 3.0 * gbar};
    MeanSnrParts parts;
    parts.via_quadrature = true;
    parts.mu1 = integrate_density([&](double x) { return x * g1_density(x, in); }, upper,
                                  landmarks);
    parts.mu2 = integrate_density([&](double x) { return x * g2_density(x, in); }, upper,
                                  landmarks);
    return parts;
}

// Closed-form route. Returns parts with via_quadrature=false on success;
// throws std::runtime_error when the evaluation is numerically untrustworthy
// (cancellation, overflow, or hypergeometric non-convergence).
MeanSnrParts mean_by_closed_form(const AnalyticInputs& in) {
    const int n = in.n_users;
    const double gbar = in.mean_user_snr;
    const double d = in.nakagami_d;
    const double lt = in.sinr_scale / in.nakagami_theta;  // λ/θ
    const double log_lt = std::log(lt);

    MonitoredSum mu1;
    const double log_c1 = std::log(static_cast<double>(n)) + d * log_lt + std::log(d) +
                          std::log(d + 1.0) - std::log(2.0 * gbar);
    for (int k = 0; k < n; ++k) {
        double beta = (k + 1.0) / gbar;
        double z = beta / (lt + beta);
        double hyp = specfun::gauss_2f1(1.0, d + 2.0, 3.0, z);
        double log_mag = log_c1 + log_binomial(n - 1, k) - (d + 2.0) * std::log(lt + beta);
        double term = std::exp(log_mag) * hyp;
        if (!std::isfinite(term)) {
            throw std::runtime_error("mean_equivalent_snr: closed-form term overflowed");
        }
        mu1.add((k % 2 == 0) ? term : -term);
    }

    MonitoredSum mu2;
    const double log_c2 = std::log(d) + d * log_lt;
    for (int k = 1; k <= n; ++k) {
        double term = std::exp(log_c2 + log_binomial(n, k) -
                               (d + 1.0) * std::log(lt + k / gbar));
        if (!std::isfinite(term)) {
            throw std::runtime_error("mean_equivalent_snr: closed-form term overflowed");
        }
        mu2.add((k % 2 == 1) ? term : -term);
    }

    if (mu1.est_rel_error() > kCancellationLimit || mu2.est_rel_error() > kCancellationLimit) {
        throw std::runtime_error(
            "mean_equivalent_snr: alternating-sum cancellation exceeds tolerance");
    }
    MeanSnrParts parts;
    parts.mu1 = mu1.sum;
    parts.mu2 = mu2.sum;
    parts.via_quadrature = false;
    if (!(parts.mu1 >= 0.0) || !(parts.mu2 >= 0.0)) {
        throw std::runtime_error("mean_equivalent_snr: closed form lost positivity");
    }
    return parts;
}

}  // namespace

AnalyticInputs AnalyticInputs::from_params(const channels::NetworkParams& params, double c,
                                           double p_o, double tau) {
    AnalyticInputs inputs{};
    inputs.n_users = params.n_users;
    inputs.mean_user_snr = params.mean_user_snr();
    inputs.nakagami_d = params.nakagami_d();
    inputs.nakagami_theta = params.nakagami_theta();
    inputs.sinr_scale = params.first_hop_sinr_scale();
    inputs.outage_prob = p_o;
    inputs.oversampling = c;
    inputs.block_size = params.truncation_order;
    inputs.minislot_fraction = tau;
    inputs.validate();
    return inputs;
}

void AnalyticInputs::validate() const {
    if (n_users < 1) throw std::invalid_argument("AnalyticInputs: n_users must be >= 1");
    if (!(mean_user_snr > 0.0)) throw std::invalid_argument("AnalyticInputs: mean_user_snr must be > 0");
    if (!(nakagami_d > 1.0)) throw std::invalid_argument("AnalyticInputs: requires d > 1");
    if (!(nakagami_theta > 0.0)) throw std::invalid_argument("AnalyticInputs: theta must be > 0");
    if (!(sinr_scale > 0.0)) throw std::invalid_argument("AnalyticInputs: sinr_scale must be > 0");
    if (!(outage_prob > 0.0 && outage_prob < 1.0)) {
        throw std::invalid_argument("AnalyticInputs: outage_prob must lie in (0,1)");
    }
    if (!(oversampling > 0.0)) throw std::invalid_argument("AnalyticInputs: oversampling must be > 0");
    if (block_size < 1) throw std::invalid_argument("AnalyticInputs: block_size must be >= 1");
    if (!(minislot_fraction > 0.0 && minislot_fraction < 1.0)) {
        throw std::invalid_argument("AnalyticInputs: minislot_fraction must lie in (0,1)");
    }
}

double equivalent_snr_cdf(double x, const AnalyticInputs& inputs) {
    if (x <= 0.0) return 0.0;
    double first_hop_tail = specfun::reg_upper_inc_gamma(
        inputs.nakagami_d, inputs.sinr_scale * x / inputs.nakagami_theta);
    double max_user_tail = 1.0 - max_user_cdf(x, inputs.mean_user_snr, inputs.n_users);
    return 1.0 - first_hop_tail * max_user_tail;
}

double equivalent_snr_pdf(double x, const AnalyticInputs& inputs) {
    if (x < 0.0) return 0.0;
    return g1_density(x, inputs) + g2_density(x, inputs);
}

MeanSnrParts mean_equivalent_snr_parts(const AnalyticInputs& inputs) {
    inputs.validate();
    try {
        return mean_by_closed_form(inputs);
    } catch (const std::runtime_error&) {
        return mean_by_quadrature(inputs);
    }
}

double mean_equivalent_snr(const AnalyticInputs& inputs) {
    MeanSnrParts parts = mean_equivalent_snr_parts(inputs);
    return parts.mu1 + parts.mu2;
}

double rate_upper_bound(double mean_eq_snr, double delta, double sigma_e,
                        double outage_prob) {
    if (!(delta < mean_eq_snr)) {
        throw std::domain_error("rate_upper_bound: requires delta < mean_eq_snr");
    }
    if (!(delta >= 0.0)) {
        throw std::domain_error("rate_upper_bound: delta must be >= 0");
    }
    if (!(sigma_e > 0.0)) {
        throw std::domain_error("rate_upper_bound: sigma_e must be > 0");
    }
    return std::log2(1.0 + mean_eq_snr - delta) * (1.0 - outage_prob) *
           (1.0 - specfun::q_function(delta / sigma_e));
}

int feedback_load(int n_users, double outage_prob, double oversampling, int block_size,
                  feedback::Mode mode) {
    double expected = feedback::expected_feedback_users(n_users, outage_prob);
    return feedback::measurement_budget(n_users, expected, oversampling, block_size, mode).l;
}

double throughput(double rate, double load, double tau) {
    double air_time_left = 1.0 - load * tau;
    return rate * std::max(0.0, air_time_left);
}

}  // namespace csfb::analytics

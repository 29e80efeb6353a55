#include "csfb/feedback.hpp"

#include <cmath>
#include <stdexcept>

namespace csfb::feedback {

double feedback_threshold(double mean_snr, int n_users, double outage_prob) {
    if (!(outage_prob > 0.0 && outage_prob < 1.0)) {
        throw std::domain_error("feedback_threshold: outage_prob must lie in (0,1)");
    }
    if (n_users < 1) {
        throw std::domain_error("feedback_threshold: n_users must be >= 1");
    }
    if (!(mean_snr > 0.0)) {
        throw std::domain_error("feedback_threshold: mean_snr must be > 0");
    }
    double p_root = std::pow(outage_prob, 1.0 / static_cast<double>(n_users));
    return -mean_snr * std::log1p(-p_root);
}

SparseFeedback build_sparse_vector(const std::vector<double>& snrs, double threshold) {
    SparseFeedback sf;
    sf.threshold = threshold;
    sf.x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(snrs.size()));
    for (std::size_t n = 0; n < snrs.size(); ++n) {
        if (snrs[n] > threshold) {
            sf.x[static_cast<Eigen::Index>(n)] = snrs[n];
            sf.support.push_back(static_cast<int>(n));
        }
    }
    return sf;
}

double expected_feedback_users(int n_users, double outage_prob) {
    if (!(outage_prob > 0.0 && outage_prob < 1.0)) {
        throw std::domain_error("expected_feedback_users: outage_prob must lie in (0,1)");
    }
    if (n_users < 1) {
        throw std::domain_error("expected_feedback_users: n_users must be >= 1");
    }
    double nd = static_cast<double>(n_users);
    return nd * (1.0 - std::pow(outage_prob, 1.0 / nd));
}

MeasurementBudget measurement_budget(int n_users, double expected_users,
                                     double oversampling, int block_size, Mode mode) {
    if (!(expected_users > 0.0)) {
        throw std::domain_error("measurement_budget: expected_users must be > 0");
    }
    if (static_cast<double>(n_users) < expected_users) {
        throw std::domain_error("measurement_budget: n_users must be >= expected_users");
    }
    if (!(oversampling > 0.0)) {
        throw std::domain_error("measurement_budget: oversampling must be > 0");
    }
    if (block_size < 1) {
        throw std::domain_error("measurement_budget: block_size must be >= 1");
    }
    double nd = static_cast<double>(n_users);
    double j = static_cast<double>(block_size);
    MeasurementBudget budget{};
    if (mode == Mode::kFd) {
        double m = oversampling * (j * expected_users +
                                   expected_users * std::log(j * nd / expected_users));
        budget.m = static_cast<int>(std::ceil(m));
        budget.l = budget.m;
    } else {
        double m = oversampling * expected_users * std::log(nd / expected_users);
        budget.m = static_cast<int>(std::ceil(m));
        budget.l = 2 * budget.m;
    }
    if (budget.m >= n_users * block_size) {
        throw std::domain_error(
            "measurement_budget: budget M >= N*J — undersampling assumption violated");
    }
    return budget;
}

Eigen::MatrixXd generate_sensing_matrix(int m, int n_users, std::mt19937_64& rng) {
    if (m < 1 || n_users < 1) {
        throw std::domain_error("generate_sensing_matrix: dimensions must be positive");
    }
    std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(m)));
    Eigen::MatrixXd a(m, n_users);
    // Row-major fill so each measurement row is drawn contiguously.
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < n_users; ++c) {
            a(r, c) = normal(rng);
        }
    }
    return a;
}

Eigen::MatrixXd expand_block_dictionary(const Eigen::MatrixXd& a, int block_size) {
    if (block_size < 1) {
        throw std::domain_error("expand_block_dictionary: block_size must be >= 1");
    }
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, n * block_size);
    for (Eigen::Index col = 0; col < n; ++col) {
        for (int j = 0; j < block_size; ++j) {
            b.col(col * block_size + j).segment(j, m - j) = a.col(col).head(m - j);
        }
    }
    return b;
}

Eigen::VectorXd synthesize_hd(const Eigen::MatrixXd& a, const Eigen::VectorXd& x,
                              double first_hop_gain, const channels::NetworkParams& params,
                              std::mt19937_64& rng) {
    if (a.cols() != x.size()) {
        throw std::invalid_argument("synthesize_hd: dimension mismatch between A and x");
    }
    const Eigen::Index m = a.rows();
    Eigen::VectorXd y = a * x;
    double relay_sd = std::sqrt(params.noise_floor);
    double bs_sd = first_hop_gain > 0.0 ? std::sqrt(params.noise_floor / first_hop_gain) : 0.0;
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Eigen::Index i = 0; i < m; ++i) {
        y[i] += relay_sd * normal(rng) + bs_sd * normal(rng);
    }
    return y;
}

Eigen::VectorXd synthesize_fd(const Eigen::MatrixXd& a, const Eigen::VectorXd& x,
                              double first_hop_gain, const channels::NetworkParams& params,
                              std::mt19937_64& rng) {
    if (a.cols() != x.size()) {
        throw std::invalid_argument("synthesize_fd: dimension mismatch between A and x");
    }
    double rho = params.residual_si_gain;
    if (!(std::abs(rho) < 1.0)) {
        throw std::invalid_argument("synthesize_fd: requires |rho| < 1");
    }
    const Eigen::Index m = a.rows();
    Eigen::VectorXd clean = a * x;
    double relay_sd = std::sqrt(params.noise_floor);
    double bs_sd = first_hop_gain > 0.0 ? std::sqrt(params.noise_floor / first_hop_gain) : 0.0;
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd y(m);
    double prev = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        double relay = clean[i] + rho * prev + relay_sd * normal(rng);
        prev = relay;
        y[i] = relay + bs_sd * normal(rng);
    }
    return y;
}

Eigen::MatrixXd noise_covariance(const channels::NetworkParams& params, Mode mode, int m,
                                 std::optional<double> realized_first_hop_gain) {
    if (m < 1) {
        throw std::domain_error("noise_covariance: m must be >= 1");
    }
    double n0 = params.noise_floor;
    double inv_gain = realized_first_hop_gain.has_value()
                          ? 1.0 / *realized_first_hop_gain
                          : params.mean_inv_first_hop();
    if (mode == Mode::kHd) {
        return n0 * (1.0 + inv_gain) * Eigen::MatrixXd::Identity(m, m);
    }
    // FD: modeled noise at slot m is w_m/f + Σ_{k<q} ρ^k z_{m−k} with
    // q = ⌈J/2⌉ taps (the higher-order tails are below the noise floor).
    double rho = params.residual_si_gain;
    int q = (params.truncation_order + 1) / 2;
    Eigen::MatrixXd taps = Eigen::MatrixXd::Zero(m, m);
    for (int row = 0; row < m; ++row) {
        double coeff = 1.0;
        for (int k = 0; k < q && k <= row; ++k) {
            taps(row, row - k) = coeff;
            coeff *= rho;
        }
    }
    Eigen::MatrixXd cov = n0 * (taps * taps.transpose());
    cov += n0 * inv_gain * Eigen::MatrixXd::Identity(m, m);
    return cov;
}

}  // namespace csfb::feedback

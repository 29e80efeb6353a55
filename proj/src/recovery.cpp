#include "csfb/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace csfb::recovery {

namespace {

// Columns of `whitened` belonging to the given blocks, in ascending block
// order.
Eigen::MatrixXd gather_block_columns(const Eigen::MatrixXd& mat,
                                     const std::vector<int>& blocks, int block_size) {
    Eigen::MatrixXd sub(mat.rows(), static_cast<Eigen::Index>(blocks.size()) * block_size);
    Eigen::Index out = 0;
    for (int b : blocks) {
        sub.middleCols(out, block_size) =
            mat.middleCols(static_cast<Eigen::Index>(b) * block_size, block_size);
        out += block_size;
    }
    return sub;
}

// Solves min ‖y − A·x‖ and rejects rank-deficient systems. Shared by the
// public LS/BLUE entry points and the CoSaMP refits.
Eigen::VectorXd solve_full_rank_ls(const Eigen::MatrixXd& a, const Eigen::VectorXd& y,
                                   const char* who) {
    if (a.rows() != y.size()) {
        throw std::invalid_argument(std::string(who) + ": row count must match y");
    }
    if (a.cols() >= a.rows()) {
        throw std::invalid_argument(std::string(who) +
                                    ": system is not overdetermined (cols >= rows)");
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
    if (cod.rank() < a.cols()) {
        throw std::runtime_error(std::string(who) + ": submatrix is numerically singular");
    }
    return cod.solve(y);
}

// Indices of the `count` highest-energy blocks; ties keep the lower index.
std::vector<int> top_blocks(const std::vector<double>& energies, int count) {
    std::vector<int> order(energies.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
        if (energies[static_cast<std::size_t>(lhs)] != energies[static_cast<std::size_t>(rhs)]) {
            return energies[static_cast<std::size_t>(lhs)] >
                   energies[static_cast<std::size_t>(rhs)];
        }
        return lhs < rhs;
    });
    order.resize(static_cast<std::size_t>(std::min<int>(count, static_cast<int>(order.size()))));
    std::sort(order.begin(), order.end());
    return order;
}

std::vector<double> block_energies(const Eigen::VectorXd& v, int n_blocks, int block_size) {
    std::vector<double> energies(static_cast<std::size_t>(n_blocks));
    for (int b = 0; b < n_blocks; ++b) {
        energies[static_cast<std::size_t>(b)] =
            v.segment(static_cast<Eigen::Index>(b) * block_size, block_size).norm();
    }
    return energies;
}

}  // namespace

CosampResult block_cosamp(const Eigen::MatrixXd& dictionary, const Eigen::VectorXd& y,
                          const Eigen::MatrixXd& noise_cov, int block_size,
                          int target_sparsity, Halting halting) {
    if (block_size < 1) {
        throw std::invalid_argument("block_cosamp: block_size must be >= 1");
    }
    if (dictionary.cols() % block_size != 0) {
        throw std::invalid_argument("block_cosamp: dictionary width not a block multiple");
    }
    if (dictionary.rows() != y.size()) {
        throw std::invalid_argument("block_cosamp: dictionary rows must match y");
    }
    if (target_sparsity < 1) {
        throw std::invalid_argument("block_cosamp: target_sparsity must be >= 1");
    }
    if (dictionary.rows() < static_cast<Eigen::Index>(2 * target_sparsity * block_size)) {
        throw std::invalid_argument("block_cosamp: requires M >= 2*K_t*block_size");
    }
    if (noise_cov.rows() != dictionary.rows() || noise_cov.cols() != dictionary.rows()) {
        throw std::invalid_argument("block_cosamp: noise covariance must be M x M");
    }

    const int n_blocks = static_cast<int>(dictionary.cols()) / block_size;

    // Whitening: Σ = LLᵀ, then solve with L so that the transformed noise is
    // white and the greedy correlations match the BLUE inner product.
    Eigen::LLT<Eigen::MatrixXd> llt(noise_cov);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("block_cosamp: noise covariance is not positive-definite");
    }
    const auto& l = llt.matrixL();
    Eigen::MatrixXd wdict = l.solve(dictionary);
    Eigen::VectorXd wy = l.solve(y);

    CosampResult result;
    const double y_norm = wy.norm();
    if (y_norm <= 1e-300) {
        return result;  // nothing to recover; empty support, zero residual
    }

    Eigen::VectorXd residual = wy;
    std::vector<int> support;
    for (int iter = 1; iter <= halting.max_iterations; ++iter) {
        Eigen::VectorXd proxy = wdict.transpose() * residual;
        std::vector<int> candidates = top_blocks(block_energies(proxy, n_blocks, block_size),
                                                 2 * target_sparsity);
        std::vector<int> merged;
        std::set_union(candidates.begin(), candidates.end(), support.begin(), support.end(),
                       std::back_inserter(merged));

        Eigen::MatrixXd sub = gather_block_columns(wdict, merged, block_size);
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sub);
        if (cod.rank() < sub.cols()) {
            throw std::runtime_error("block_cosamp: merged support is numerically singular");
        }
        Eigen::VectorXd coeffs = cod.solve(wy);

        std::vector<int> keep = top_blocks(
            block_energies(coeffs, static_cast<int>(merged.size()), block_size),
            target_sparsity);
        std::vector<int> pruned;
        pruned.reserve(keep.size());
        Eigen::VectorXd pruned_coeffs(static_cast<Eigen::Index>(keep.size()) * block_size);
        Eigen::Index out = 0;
        for (int k : keep) {
            pruned.push_back(merged[static_cast<std::size_t>(k)]);
            pruned_coeffs.segment(out, block_size) =
                coeffs.segment(static_cast<Eigen::Index>(k) * block_size, block_size);
            out += block_size;
        }

        residual = wy - gather_block_columns(wdict, pruned, block_size) * pruned_coeffs;
        result.iterations = iter;
        result.residual_norm = residual.norm() / y_norm;
        bool fixed_point = (pruned == support);
        support = std::move(pruned);
        if (fixed_point || result.residual_norm <= halting.tol) {
            break;
        }
    }
    result.support = std::move(support);
    return result;
}

Eigen::VectorXd ls_estimate(const Eigen::MatrixXd& a_sub, const Eigen::VectorXd& y) {
    return solve_full_rank_ls(a_sub, y, "ls_estimate");
}

Eigen::VectorXd blue_estimate(const Eigen::MatrixXd& b_sub, const Eigen::VectorXd& y,
                              const Eigen::MatrixXd& noise_cov) {
    if (noise_cov.rows() != b_sub.rows() || noise_cov.cols() != b_sub.rows()) {
        throw std::invalid_argument("blue_estimate: noise covariance must be M x M");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(noise_cov);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("blue_estimate: noise covariance is not positive-definite");
    }
    const auto& l = llt.matrixL();
    Eigen::MatrixXd wb = l.solve(b_sub);
    Eigen::VectorXd wy = l.solve(y);
    return solve_full_rank_ls(wb, wy, "blue_estimate");
}

double ls_error_variance(int m, int support_size, double noise_var) {
    if (m <= support_size + 1) {
        throw std::domain_error("ls_error_variance: requires M > S + 1");
    }
    if (!(noise_var > 0.0)) {
        throw std::domain_error("ls_error_variance: noise_var must be > 0");
    }
    return static_cast<double>(m) / static_cast<double>(m - support_size - 1) * noise_var;
}

double blue_error_variance(int m, const Eigen::MatrixXd& noise_cov) {
    if (noise_cov.rows() != noise_cov.cols() || noise_cov.rows() < 1) {
        throw std::invalid_argument("blue_error_variance: covariance must be square");
    }
    if (m < 1) {
        throw std::domain_error("blue_error_variance: m must be >= 1");
    }
    // The asymptotic law assumes lim sup ‖Σ⁻¹‖ < ∞; a positive Gershgorin
    // lower bound on the spectrum certifies that cheaply.
    double gershgorin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < noise_cov.rows(); ++i) {
        double off = noise_cov.row(i).cwiseAbs().sum() - std::abs(noise_cov(i, i));
        gershgorin = std::min(gershgorin, noise_cov(i, i) - off);
    }
    if (!(gershgorin > 0.0)) {
        throw std::domain_error(
            "blue_error_variance: Gershgorin bound cannot certify a bounded inverse");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(noise_cov);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("blue_error_variance: covariance is not positive-definite");
    }
    double trace_inv =
        llt.solve(Eigen::MatrixXd::Identity(noise_cov.rows(), noise_cov.cols())).trace();
    return static_cast<double>(m) / trace_inv;
}

std::map<int, double> extract_user_snrs(const Eigen::VectorXd& coeffs,
                                        const std::vector<int>& block_support,
                                        int block_size, ExtractMode mode, double rho) {
    if (coeffs.size() != static_cast<Eigen::Index>(block_support.size()) * block_size) {
        throw std::invalid_argument("extract_user_snrs: coefficient length mismatch");
    }
    std::map<int, double> snrs;
    for (std::size_t i = 0; i < block_support.size(); ++i) {
        Eigen::VectorXd block =
            coeffs.segment(static_cast<Eigen::Index>(i) * block_size, block_size);
        double value;
        if (mode == ExtractMode::kFirstEntry || block_size == 1) {
            value = block[0];
        } else {
            double num = 0.0;
            double den = 0.0;
            double w = 1.0;
            for (int j = 0; j < block_size; ++j) {
                num += w * block[j];
                den += w * w;
                w *= rho;
            }
            value = num / den;
        }
        snrs[block_support[i]] = value;
    }
    return snrs;
}

RecoveryResult recover_feedback(const feedback::MeasurementBatch& batch, int block_size,
                                int target_sparsity, Halting halting, ExtractMode mode,
                                double rho) {
    CosampResult cosamp = block_cosamp(batch.dictionary, batch.received, batch.noise_cov,
                                       block_size, target_sparsity, halting);
    RecoveryResult result;
    result.iterations = cosamp.iterations;
    result.residual_norm = cosamp.residual_norm;
    const int m = static_cast<int>(batch.received.size());
    if (cosamp.support.empty()) {
        // Error variance is still well defined for the mode; estimates are not.
        result.error_variance = (batch.mode == feedback::Mode::kFd)
                                    ? blue_error_variance(m, batch.noise_cov)
                                    : ls_error_variance(m, target_sparsity,
                                                        batch.noise_cov(0, 0));
        return result;
    }
    Eigen::MatrixXd sub = gather_block_columns(batch.dictionary, cosamp.support, block_size);
    Eigen::VectorXd coeffs;
    if (batch.mode == feedback::Mode::kFd) {
        coeffs = blue_estimate(sub, batch.received, batch.noise_cov);
        result.error_variance = blue_error_variance(m, batch.noise_cov);
    } else {
        coeffs = ls_estimate(sub, batch.received);
        result.error_variance = ls_error_variance(
            m, static_cast<int>(cosamp.support.size()), batch.noise_cov(0, 0));
    }
    result.support = cosamp.support;
    result.snr_estimates = extract_user_snrs(coeffs, cosamp.support, block_size, mode, rho);
    return result;
}

}  // namespace csfb::recovery

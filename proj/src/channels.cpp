#include "csfb/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csfb::channels {

double NetworkParams::rician_k() const {
    return los_power / (2.0 * nlos_sigma2);
}

double NetworkParams::nakagami_d() const {
    double k = rician_k();
    return (k + 1.0) * (k + 1.0) / (2.0 * k + 1.0);
}

double NetworkParams::nakagami_theta() const {
    return (los_power + 2.0 * nlos_sigma2) / nakagami_d();
}

double NetworkParams::mean_user_snr() const {
    return relay_power * second_hop_var / noise_floor;
}

double NetworkParams::first_hop_sinr_scale() const {
    return (relay_power * residual_si_gain * residual_si_gain + noise_floor) / bs_power;
}

double NetworkParams::mean_inv_first_hop() const {
    double d = nakagami_d();
    if (!(d > 1.0)) {
        throw std::domain_error("mean_inv_first_hop: requires d > 1 (E[1/|f|^2] diverges)");
    }
    return 1.0 / ((d - 1.0) * nakagami_theta());
}

void NetworkParams::validate() const {
    if (n_users < 1) throw std::invalid_argument("NetworkParams: n_users must be >= 1");
    if (!(bs_power > 0.0)) throw std::invalid_argument("NetworkParams: bs_power must be > 0");
    if (!(relay_power > 0.0)) throw std::invalid_argument("NetworkParams: relay_power must be > 0");
    if (!(noise_floor > 0.0)) throw std::invalid_argument("NetworkParams: noise_floor must be > 0");
    if (!(los_power >= 0.0)) throw std::invalid_argument("NetworkParams: los_power must be >= 0");
    if (!(nlos_sigma2 > 0.0)) throw std::invalid_argument("NetworkParams: nlos_sigma2 must be > 0");
    if (!(second_hop_var > 0.0)) throw std::invalid_argument("NetworkParams: second_hop_var must be > 0");
    if (!(std::abs(residual_si_gain) < 1.0)) {
        throw std::invalid_argument("NetworkParams: |residual_si_gain| must be < 1");
    }
    if (truncation_order < 1) throw std::invalid_argument("NetworkParams: truncation_order must be >= 1");
}

NakagamiFit derive_nakagami(double los_power, double sigma2) {
    if (!(sigma2 > 0.0)) {
        throw std::domain_error("derive_nakagami: sigma2 must be positive");
    }
    double k = los_power / (2.0 * sigma2);
    double d = (k + 1.0) * (k + 1.0) / (2.0 * k + 1.0);
    double theta = (los_power + 2.0 * sigma2) / d;
    return {k, d, theta};
}

double sample_first_hop(const NetworkParams& params, std::mt19937_64& rng) {
    std::gamma_distribution<double> gamma(params.nakagami_d(), params.nakagami_theta());
    return gamma(rng);
}

std::vector<double> sample_user_snrs(const NetworkParams& params, std::mt19937_64& rng) {
    std::exponential_distribution<double> exp_dist(1.0 / params.mean_user_snr());
    std::vector<double> snrs(static_cast<std::size_t>(params.n_users));
    for (double& s : snrs) {
        s = exp_dist(rng);
    }
    return snrs;
}

ChannelRealization sample_channels(const NetworkParams& params, std::mt19937_64& rng) {
    ChannelRealization real;
    real.first_hop_gain = sample_first_hop(params, rng);
    real.user_snrs = sample_user_snrs(params, rng);
    return real;
}

double first_hop_sinr(const NetworkParams& params, double first_hop_gain) {
    return params.bs_power * first_hop_gain /
           (params.relay_power * params.residual_si_gain * params.residual_si_gain +
            params.noise_floor);
}

double equivalent_snr(const NetworkParams& params, double first_hop_gain,
                      double selected_snr) {
    return std::min(first_hop_sinr(params, first_hop_gain), selected_snr);
}

}  // namespace csfb::channels

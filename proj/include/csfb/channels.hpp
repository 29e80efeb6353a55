#pragma once

#include <random>
#include <vector>

namespace csfb::channels {

/// Nakagami/Gamma parameters fitted from a Rician first hop:
/// K = b²/(2σ²), d = (K+1)²/(2K+1), θ = (b²+2σ²)/d, so |f|² ~ Gamma(d, θ).
struct NakagamiFit {
    double k;
    double d;
    double theta;
};

/// Physical-layer constants of the two-hop relay network. Defaults are the
/// reference operating point used throughout the test suite:
/// b² = 20 dB, σ² = 0 dB, σ_g² = 5 dB, N0 = −15 dB, Ps = Pr = 1, ρ = 0.1, J = 3.
struct NetworkParams {
    int n_users = 100;
    double bs_power = 1.0;                           ///< Ps
    double relay_power = 1.0;                        ///< Pr
    double noise_floor = 0.03162277660168379;        ///< N0 (−15 dB)
    double los_power = 100.0;                        ///< b² (20 dB)
    double nlos_sigma2 = 1.0;                        ///< σ², half the NLOS power
    double second_hop_var = 3.1622776601683795;      ///< σ_g² (5 dB)
    double residual_si_gain = 0.1;                   ///< ρ, post-cancellation leakage
    int truncation_order = 3;                        ///< J, receiver model depth

    double rician_k() const;            ///< K = b²/(2σ²)
    double nakagami_d() const;          ///< d = (K+1)²/(2K+1); > 1 whenever K > 0
    double nakagami_theta() const;      ///< θ = (b²+2σ²)/d
    double mean_user_snr() const;       ///< γ̄ = Pr·σ_g²/N0
    double first_hop_sinr_scale() const;///< λ = (Pr·ρ² + N0)/Ps
    double mean_inv_first_hop() const;  ///< E[1/|f|²] = 1/((d−1)θ); requires d > 1

    /// Throws std::invalid_argument when any physical constraint is violated
    /// (positivity of powers, N ≥ 1, J ≥ 1, |ρ| < 1).
    void validate() const;
};

/// One coherence interval: the BS→relay power gain and all relay→user SNRs.
struct ChannelRealization {
    double first_hop_gain;          ///< |f|²
    std::vector<double> user_snrs;  ///< γ_n = Pr|g_n|²/N0, i.i.d. Exp(γ̄)
};

/// Fits the Gamma law of |f|² from the LOS power b² and NLOS spread σ².
/// Throws std::domain_error if σ² <= 0.
NakagamiFit derive_nakagami(double los_power, double sigma2);

/// Draws |f|² ~ Gamma(d, θ).
double sample_first_hop(const NetworkParams& params, std::mt19937_64& rng);

/// Draws N i.i.d. exponential user SNRs with mean γ̄.
std::vector<double> sample_user_snrs(const NetworkParams& params, std::mt19937_64& rng);

/// Draws the full coherence-interval channel state (first hop, then users).
ChannelRealization sample_channels(const NetworkParams& params, std::mt19937_64& rng);

/// First-hop SINR Ps·|f|²/(Pr·ρ² + N0) seen by the relay under residual
/// self-interference.
double first_hop_sinr(const NetworkParams& params, double first_hop_gain);

/// End-to-end equivalent SNR min(first-hop SINR, selected user's SNR).
double equivalent_snr(const NetworkParams& params, double first_hop_gain,
                      double selected_snr);

}  // namespace csfb::channels

#pragma once

namespace csfb::specfun {

/// Convergence control for series evaluations (Gauss hypergeometric).
struct SeriesTolerance {
    double rel_tol = 1e-12;
    int max_terms = 10'000;
};

/// Gamma function Γ(a) for a > 0. Relative error below 1e-12 on [0.1, 100].
/// Throws std::domain_error for a <= 0.
double gamma_fn(double a);

/// Natural log of Γ(a) for a > 0; safe for large a where Γ(a) overflows.
double log_gamma(double a);

/// Lower incomplete gamma γ(a,x) = ∫₀ˣ t^{a-1} e^{-t} dt (unnormalized).
/// Throws std::domain_error for a <= 0 or x < 0.
double lower_inc_gamma(double a, double x);

/// Upper incomplete gamma Γ(a,x) = Γ(a) − γ(a,x) (unnormalized).
double upper_inc_gamma(double a, double x);

/// Regularized lower incomplete gamma P(a,x) = γ(a,x)/Γ(a) ∈ [0,1].
/// Stable for large a where the unnormalized form overflows.
double reg_lower_inc_gamma(double a, double x);

/// Regularized upper incomplete gamma Q(a,x) = 1 − P(a,x).
double reg_upper_inc_gamma(double a, double x);

/// Gauss hypergeometric ₂F₁(a,b;c;z) by direct power series, valid for
/// 0 <= z < 1 and c not a nonpositive integer. Throws std::domain_error on
/// invalid arguments and std::runtime_error if the series does not reach
/// tol.rel_tol within tol.max_terms terms.
double gauss_2f1(double a, double b, double c, double z, SeriesTolerance tol = {});

/// Gaussian tail probability Q(x) = P(Z > x) for standard normal Z.
double q_function(double x);

/// Decibel-to-linear power conversion, 10^{v/10}.
double db_to_linear(double v);

}  // namespace csfb::specfun

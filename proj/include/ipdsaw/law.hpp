// Auxiliary geometric increment law and the beta-dependent scalar quantities
// built on it: normalizer, pmf, closed-form log-MGF with derivatives,
// horizontal-step factor Gamma, saturated growth rate phi, critical point.
#pragma once

#include <cstdint>
#include <stdexcept>

namespace ipdsaw {

enum class Model { uniform, nonuniform };

// Symmetric random walk with two-sided geometric increments,
//   P(v = k) = e^{-beta|k|/2} / c_beta,   c_beta = (1+e^{-beta/2})/(1-e^{-beta/2}).
// Immutable after construction; cheap to copy.
struct WalkLaw {
    double beta;     // interaction strength, > 0
    double ratio;    // e^{-beta/2}, in (0,1)
    double c;        // normalizer c_beta, > 1

    explicit WalkLaw(double beta_);

    double pmf(std::int64_t k) const;
    double log_pmf(std::int64_t k) const;

    // Log moment generating function L(h) = log E[e^{h v}] and derivatives.
    // Closed form from summing the two geometric tails:
    //   L(h) = log[(1 - e^{-beta}) / (c_beta (1 - e^{h-beta/2})(1 - e^{-h-beta/2}))].
    // Finite exactly on |h| < beta/2; throws std::domain_error outside the
    // guarded domain |h| < beta/2 - 1e-12.
    double log_mgf(double h) const;
    double log_mgf_d1(double h) const;
    double log_mgf_d2(double h) const;
    double log_mgf(double h, int order) const;

    // Variance of one increment, = L''(0) = 2x/(1-x)^2 with x = e^{-beta/2}.
    double sigma2() const;

    double half_width() const { return 0.5 * beta; }
    bool in_domain(double h) const { return h > -half_width() + kDomainMargin && h < half_width() - kDomainMargin; }

    static constexpr double kDomainMargin = 1e-12;
};

// Gamma^m(beta): penalizes (Gamma < 1) or favors (Gamma > 1) horizontal steps.
// Gamma^u = c_beta / e^beta, Gamma^nu = 2 c_beta / (3 e^beta).
double gamma_factor(double beta, Model m);

// phi^u = beta, phi^nu = beta - log 2: growth rate of the saturated-contact factor.
double phi_growth(double beta, Model m);

// log Phi^m_{L,beta} = L * phi^m(beta).
double log_phi_total(double beta, Model m, std::int64_t L);

// Unique root of Gamma^m(beta) = 1, by doubling bracket + bisection.
double beta_critical(Model m, double tol = 1e-12);

} // namespace ipdsaw

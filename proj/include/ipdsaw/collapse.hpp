// Free-energy equation of the collapse transition, phase classification,
// direct DP cross-validation, and the critical constants built on the first
// zero of the Airy-function derivative.
#pragma once

#include <cstdint>
#include <vector>

#include "ipdsaw/law.hpp"

namespace ipdsaw {

enum class Phase { collapsed, extended };

struct FreeEnergyReport {
    double beta = 0.0;
    Model m = Model::uniform;
    Phase phase = Phase::collapsed;
    double f_excess = 0.0;  // excess free energy, >= 0
    double f_total = 0.0;   // phi^m(beta) + f_excess
    double residual = 0.0;  // |log Gamma - f~ + h(f~)| at the returned root
    double bracket_lo = 0.0, bracket_hi = 0.0;
    std::int64_t iterations = 0;
    double h_tol = 0.0;  // tolerance used for the h_beta evaluations
};

// Free-energy equation solver: f~ = 0 when Gamma <= 1, otherwise the unique
// root of g(d) = log Gamma - d + h_beta(d) on [0, log Gamma] by bisection
// (immune to h noise); h_beta evaluated at tol/10.
FreeEnergyReport excess_free_energy(const WalkLaw& law, Model m, double tol);

// (1/L) log Z~^m_L for each requested L, from the exact area DP.
std::vector<double> direct_free_energy_estimate(const WalkLaw& law, Model m, const std::vector<std::int64_t>& Ls);

// Airy function and derivative by the everywhere-convergent Maclaurin pair;
// seed constants Ai(0), -Ai'(0) from a self-contained Gamma evaluation.
double airy_Ai(double x);
double airy_Ai_prime(double x);
double airy_Ai_second(double x);

// First zero of Ai' on the negative axis (~ -1.0187929716), bisection on
// [-1.5, -0.5]; |Ai'(root)| <= tol on return.
double airy_prime_first_zero(double tol);

struct CriticalConstants {
    Model m = Model::uniform;
    double beta_c = 0.0;
    double c_m = 0.0;           // 1 + e^{-beta_c/2} / (1 - e^{-beta_c})
    double sigma2_c = 0.0;      // increment variance at beta_c
    double airy_prime_zero = 0.0;
    double d_m = 0.0;           // 2^{-1/3} |a'_1| sigma^{2/3}
    double amplitude = 0.0;     // (c_m/d_m)^{3/2}
};

CriticalConstants critical_constants(Model m, double tol = 1e-12);

struct ExponentRow {
    double eps;
    double f_excess;
    double ratio;  // f~ / eps^{3/2}
    double slope;  // local log-log slope vs the previous row (nan on the first)
};

// Excess free energy approaching beta_c from below along eps_list (descending).
std::vector<ExponentRow> exponent_scan(Model m, const std::vector<double>& eps_list, double tol);

} // namespace ipdsaw

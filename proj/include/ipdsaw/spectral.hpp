// h_beta(delta) as the log Perron eigenvalue of the truncated area-discounted
// transfer kernel K(x,y) = e^{-delta|y|} pmf(y-x), plus the finite-N values
// h_{N,beta}(delta) = (1/N) log E[e^{-delta A_N} 1{V_N = 0}] used for
// validation, and the delta^{2/3} critical-scaling scan.
#pragma once

#include <cstdint>
#include <vector>

#include "ipdsaw/law.hpp"

namespace ipdsaw {

struct HBetaDiagnostics {
    double value = 0.0;
    std::int64_t truncation = 0;   // final half-width M
    std::int64_t iterations = 0;   // total power-iteration steps
};

// log of the leading eigenvalue, truncation escalated M, 2M, 4M, ... until
// |log lambda_{2M} - log lambda_M| < tol; returns the larger-M value (<= 0).
// delta = 0 short-circuits to exactly 0. Throws std::runtime_error with the
// last two iterates when M exceeds the hard cap.
double h_beta(const WalkLaw& law, double delta, double tol);
HBetaDiagnostics h_beta_diag(const WalkLaw& law, double delta, double tol);

// (1/N) log of the (0,0) entry of the N-th kernel power at truncation M.
double h_beta_finite(const WalkLaw& law, double delta, std::int64_t N, std::int64_t M);

struct ScalingRow {
    double delta;
    double h;
    double ratio;  // h / delta^{2/3}
};

// Ratios h(delta)/delta^{2/3} along a descending grid; at beta_c the ratio
// approaches -d_m.
std::vector<ScalingRow> critical_scaling_scan(const WalkLaw& law_at_bc, const std::vector<double>& delta_grid,
                                              double tol);

} // namespace ipdsaw

// Continuous tilting stack: L_Lambda quadrature with gradient and Hessian,
// solvers for the continuum tilt H~(q,0) and the finite-n H_n^q, the
// variational function G~_m with its maximizer a_m(beta), the Wulff shape,
// the Legendre rate function J, and the Gaussian density of the local CLT.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ipdsaw/area_dp.hpp"
#include "ipdsaw/law.hpp"

namespace ipdsaw {

// L_Lambda(H) = int_0^1 L(x h0 + h1) dx on |h1| < beta/2, |h0+h1| < beta/2.
double L_Lambda(const WalkLaw& law, double h0, double h1);
std::array<double, 2> grad_L_Lambda(const WalkLaw& law, double h0, double h1);
// Hessian entries (B00, B01, B11) = (int x^2 L'', int x L'', int L'').
std::array<double, 3> hessian_B(const WalkLaw& law, double h0, double h1);

struct TiltPoint {
    double h0 = 0.0, h1 = 0.0;
    double value = 0.0;               // L_Lambda at H
    std::array<double, 2> grad{};     // gradient at H
    std::array<double, 3> hess{};     // (B00, B01, B11) at H
    double residual = 0.0;            // max-norm of the solved system's residual
};

// R(u) = int_0^1 x L'((x - 1/2) u) dx, strictly increasing; R(h~0(q,0)) = q.
double tilt_R(const WalkLaw& law, double u);
double tilt_R_deriv(const WalkLaw& law, double u);

// Continuum tilt H~(q,0): solves R(u) = q, returns (u, -u/2) after a
// confirming two-dimensional Newton polish. Requires q > 0.
TiltPoint solve_tilt(const WalkLaw& law, double q);

// Finite-n tilt H_n^q: Newton on the discrete gradient system seeded at
// H~(q,0); residual <= 1e-10 or throws with the iterate trail.
TiltPoint solve_tilt_finite(const WalkLaw& law, std::int64_t n, double q);

// Discrete gradient of (1/n) L_{Lambda_n}: ((1/n) sum (j/n) L', (1/n) sum L').
std::array<double, 2> finite_tilt_gradient(const WalkLaw& law, std::int64_t n, double h0, double h1);
// (1/n) sum_{i=1..n} L((1 - i/n) h0 + h1).
double finite_L_Lambda(const WalkLaw& law, std::int64_t n, double h0, double h1);

// Exponent L_Lambda(H~(q,0)) - h~0(q,0) q of P(Y_n = nq, V_n = 0); < 0.
double decay_rate(const WalkLaw& law, double q);

// (1/n) log P_beta(n Y_n = n^2 q, V_n = 0), exactly, through the tilted
// change of measure and the joint DP.
double joint_atom_log_prob(const WalkLaw& law, std::int64_t n, double q);

// G~_m(a) = a log Gamma - (1/a) h~0(1/a^2, 0) + a L_Lambda(H~(1/a^2, 0)).
double G_tilde(const WalkLaw& law, Model m, double a);
double G_tilde_deriv(const WalkLaw& law, Model m, double a);
// Unique zero of dG~/da on (0, inf); requires Gamma^m(beta) < 1 (collapsed
// phase), throws std::domain_error otherwise.
double a_star(const WalkLaw& law, Model m);

struct WulffShape {
    double a_star = 0.0;   // maximizer a_m(beta)
    double u = 0.0;        // h~0(1/a*^2, 0)
    double J_value = 0.0;  // rate functional at the shape, by quadrature
    std::vector<double> s;      // uniform grid on [0,1]
    std::vector<double> gamma;  // gamma*(s)
};

WulffShape wulff_shape(const WalkLaw& law, Model m, std::int64_t grid_size = 1025);

// Legendre transform L*(v) = sup_h { h v - L(h) }, via L'(h) = v.
double legendre_Lstar(const WalkLaw& law, double v);
// J of a piecewise-linear function sampled on a grid: sum L*(slope) dt.
double rate_J(const WalkLaw& law, const std::vector<double>& s, const std::vector<double>& gamma);

// Centered bivariate Gaussian density with covariance B = (b00, b01, b11).
double gaussian_density(const std::array<double, 3>& B, double x0, double x1);

struct LcltRow {
    std::int64_t N;
    double lhs;     // N^2 P_{N,H_N^q}(N Y_N = N^2 q, V_N = 0)
    double f_ref;   // f_{H~(q,0)}(0, 0)
    double ratio;   // lhs / f_ref
};

std::vector<LcltRow> local_clt_check(const WalkLaw& law, double q, const std::vector<std::int64_t>& N_list);

} // namespace ipdsaw

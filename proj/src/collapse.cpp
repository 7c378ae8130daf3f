#include "ipdsaw/collapse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ipdsaw/area_dp.hpp"
#include "ipdsaw/spectral.hpp"

namespace ipdsaw {

FreeEnergyReport excess_free_energy(const WalkLaw& law, Model m, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("excess_free_energy: tol must be > 0");
    FreeEnergyReport rep;
    rep.beta = law.beta;
    rep.m = m;
    rep.h_tol = 0.1 * tol;

    const double log_gamma = std::log(gamma_factor(law.beta, m));
    if (log_gamma <= 0.0) {
        rep.phase = Phase::collapsed;
        rep.f_excess = 0.0;
        rep.f_total = phi_growth(law.beta, m);
        return rep;
    }

    rep.phase = Phase::extended;
    auto g = [&](double d) { return log_gamma - d + h_beta(law, d, rep.h_tol); };
    double lo = 0.0, hi = log_gamma;  // g(0) = log Gamma > 0, g(log Gamma) = h <= 0
    for (std::int64_t it = 0; it < 64 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0) lo = mid;
        else hi = mid;
        rep.iterations = it + 1;
    }
    rep.bracket_lo = lo;
    rep.bracket_hi = hi;
    rep.f_excess = 0.5 * (lo + hi);
    rep.f_total = phi_growth(law.beta, m) + rep.f_excess;
    rep.residual = std::abs(g(rep.f_excess));
    return rep;
}

std::vector<double> direct_free_energy_estimate(const WalkLaw& law, Model m, const std::vector<std::int64_t>& Ls) {
    std::int64_t L_max = 1;
    for (std::int64_t L : Ls) L_max = std::max(L_max, L);
    const auto table = ReturnTable::build(law, L_max + 1, std::max<std::int64_t>(L_max - 1, 0),
                                          {false, tail_aware_x_cap(law, L_max + 1, L_max)});
    std::vector<double> out;
    out.reserve(Ls.size());
    for (std::int64_t L : Ls) out.push_back(excess_log_partition(table, m, L) / static_cast<double>(L));
    return out;
}

namespace {

// log Gamma(x) for x >= 9 by the Stirling series with Bernoulli corrections.
double lgamma_stirling(double x) {
    static const double coef[] = {
        1.0 / 12.0,  -1.0 / 360.0,   1.0 / 1260.0,     -1.0 / 1680.0,
        1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0,  -3617.0 / 122400.0,
    };
    const double lx = std::log(x);
    double s = (x - 0.5) * lx - x + 0.5 * std::log(2.0 * M_PI);
    double xp = x;
    const double x2 = x * x;
    for (double c : coef) {
        s += c / xp;
        xp *= x2;
    }
    return s;
}

// Gamma(z) for z in (0,1) by shifting into the Stirling range.
double gamma_small(double z) {
    double shifted = lgamma_stirling(z + 10.0);
    for (int j = 0; j < 10; ++j) shifted -= std::log(z + j);
    return std::exp(shifted);
}

struct AirySeed {
    double c1;  // Ai(0)  = 3^{-2/3} / Gamma(2/3)
    double c2;  // -Ai'(0) = 3^{-1/3} / Gamma(1/3)
};

const AirySeed& airy_seed() {
    static const AirySeed s{std::pow(3.0, -2.0 / 3.0) / gamma_small(2.0 / 3.0),
                            std::pow(3.0, -1.0 / 3.0) / gamma_small(1.0 / 3.0)};
    return s;
}

// Maclaurin pair for y'' = x y: f(0)=1, f'(0)=0 and g(0)=0, g'(0)=1, with
// term recursion a_{n+3} = a_n / ((n+3)(n+2)). deriv selects f/g, f'/g', f''/g''.
void airy_series(double x, int deriv, double& fv, double& gv) {
    // f: exponents 3k; g: exponents 3k+1
    double f_term = 1.0, g_term = x;
    double f_sum, g_sum;
    const double x3 = x * x * x;
    switch (deriv) {
        case 0: f_sum = f_term; g_sum = g_term; break;
        case 1: f_sum = 0.0; g_sum = 1.0; break;
        default: f_sum = 0.0; g_sum = 0.0; break;
    }
    for (int k = 1; k < 400; ++k) {
        const double e_f = 3.0 * k, e_g = 3.0 * k + 1.0;
        f_term *= x3 / (e_f * (e_f - 1.0));
        g_term *= x3 / (e_g * (e_g - 1.0));
        double fc = f_term, gc = g_term;
        if (deriv >= 1 && x != 0.0) {
            fc *= e_f / x;
            gc *= e_g / x;
        }
        if (deriv >= 2 && x != 0.0) {
            fc *= (e_f - 1.0) / x;
            gc *= (e_g - 1.0) / x;
        }
        f_sum += fc;
        g_sum += gc;
        if (std::abs(f_term) + std::abs(g_term) < 1e-20 * (std::abs(f_sum) + std::abs(g_sum) + 1.0)) break;
    }
    fv = f_sum;
    gv = g_sum;
}

} // namespace

double airy_Ai(double x) {
    double f, g;
    airy_series(x, 0, f, g);
    return airy_seed().c1 * f - airy_seed().c2 * g;
}

double airy_Ai_prime(double x) {
    double f, g;
    airy_series(x, 1, f, g);
    return airy_seed().c1 * f - airy_seed().c2 * g;
}

double airy_Ai_second(double x) {
    double f, g;
    airy_series(x, 2, f, g);
    return airy_seed().c1 * f - airy_seed().c2 * g;
}

double airy_prime_first_zero(double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("airy_prime_first_zero: tol must be > 0");
    double lo = -1.5, hi = -0.5;
    if (!(airy_Ai_prime(lo) > 0.0) || !(airy_Ai_prime(hi) < 0.0))
        throw std::runtime_error("airy_prime_first_zero: bracket does not straddle the root");
    while (hi - lo > 1e-15) {
        const double mid = 0.5 * (lo + hi);
        if (airy_Ai_prime(mid) > 0.0) lo = mid;
        else hi = mid;
    }
    const double root = 0.5 * (lo + hi);
    if (std::abs(airy_Ai_prime(root)) > tol)
        throw std::runtime_error("airy_prime_first_zero: residual above tolerance");
    return root;
}

CriticalConstants critical_constants(Model m, double tol) {
    CriticalConstants c;
    c.m = m;
    c.beta_c = beta_critical(m, tol);
    const double x = std::exp(-0.5 * c.beta_c);
    c.c_m = 1.0 + x / (1.0 - x * x);
    c.sigma2_c = WalkLaw(c.beta_c).sigma2();
    c.airy_prime_zero = airy_prime_first_zero(1e-12);
    c.d_m = std::pow(2.0, -1.0 / 3.0) * std::abs(c.airy_prime_zero) * std::pow(c.sigma2_c, 1.0 / 3.0);
    c.amplitude = std::pow(c.c_m / c.d_m, 1.5);
    return c;
}

std::vector<ExponentRow> exponent_scan(Model m, const std::vector<double>& eps_list, double tol) {
    const double beta_c = beta_critical(m, 1e-13);
    std::vector<ExponentRow> rows;
    rows.reserve(eps_list.size());
    const CriticalConstants cc = critical_constants(m);
    for (double eps : eps_list) {
        if (!(eps > 0.0 && eps <= 0.5 * beta_c)) throw std::invalid_argument("exponent_scan: eps outside (0, beta_c/2]");
        const double f_est = cc.amplitude * std::pow(eps, 1.5);
        const double solver_tol = std::max(tol, 2e-3 * f_est);
        const WalkLaw law(beta_c - eps);
        const auto rep = excess_free_energy(law, m, solver_tol);
        ExponentRow row;
        row.eps = eps;
        row.f_excess = rep.f_excess;
        row.ratio = rep.f_excess / std::pow(eps, 1.5);
        row.slope = std::numeric_limits<double>::quiet_NaN();
        if (!rows.empty()) {
            const auto& prev = rows.back();
            row.slope = (std::log(prev.f_excess) - std::log(row.f_excess)) / (std::log(prev.eps) - std::log(row.eps));
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace ipdsaw

#include "ipdsaw/law.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace ipdsaw {

WalkLaw::WalkLaw(double beta_) : beta(beta_) {
    if (!(beta > 0.0)) throw std::invalid_argument("WalkLaw: beta must be > 0");
    ratio = std::exp(-0.5 * beta);
    c = (1.0 + ratio) / (1.0 - ratio);
}

double WalkLaw::pmf(std::int64_t k) const {
    return std::exp(-0.5 * beta * static_cast<double>(std::llabs(k))) / c;
}

double WalkLaw::log_pmf(std::int64_t k) const {
    return -0.5 * beta * static_cast<double>(std::llabs(k)) - std::log(c);
}

double WalkLaw::log_mgf(double h) const {
    if (!in_domain(h)) throw std::domain_error("log_mgf: |h| >= beta/2 - margin (h=" + std::to_string(h) + ")");
    const double a = ratio * std::exp(h);
    const double b = ratio * std::exp(-h);
    return std::log1p(-ratio * ratio) - std::log(c) - std::log1p(-a) - std::log1p(-b);
}

double WalkLaw::log_mgf_d1(double h) const {
    if (!in_domain(h)) throw std::domain_error("log_mgf_d1: |h| >= beta/2 - margin");
    const double a = ratio * std::exp(h);
    const double b = ratio * std::exp(-h);
    return a / (1.0 - a) - b / (1.0 - b);
}

double WalkLaw::log_mgf_d2(double h) const {
    if (!in_domain(h)) throw std::domain_error("log_mgf_d2: |h| >= beta/2 - margin");
    const double a = ratio * std::exp(h);
    const double b = ratio * std::exp(-h);
    const double ua = 1.0 - a;
    const double ub = 1.0 - b;
    return a / (ua * ua) + b / (ub * ub);
}

double WalkLaw::log_mgf(double h, int order) const {
    switch (order) {
        case 0: return log_mgf(h);
        case 1: return log_mgf_d1(h);
        case 2: return log_mgf_d2(h);
        default: throw std::invalid_argument("log_mgf: order must be 0, 1 or 2");
    }
}

double WalkLaw::sigma2() const {
    const double u = 1.0 - ratio;
    return 2.0 * ratio / (u * u);
}

double gamma_factor(double beta, Model m) {
    if (!(beta > 0.0)) throw std::invalid_argument("gamma_factor: beta must be > 0");
    const double x = std::exp(-0.5 * beta);
    const double c = (1.0 + x) / (1.0 - x);
    const double g = c * std::exp(-beta);
    return m == Model::uniform ? g : 2.0 * g / 3.0;
}

double phi_growth(double beta, Model m) {
    if (!(beta > 0.0)) throw std::invalid_argument("phi_growth: beta must be > 0");
    return m == Model::uniform ? beta : beta - std::log(2.0);
}

double log_phi_total(double beta, Model m, std::int64_t L) {
    return static_cast<double>(L) * phi_growth(beta, m);
}

double beta_critical(Model m, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("beta_critical: tol must be > 0");
    double lo = 1e-8;
    double hi = 1.0;
    while (gamma_factor(hi, m) > 1.0) hi *= 2.0;
    while (gamma_factor(lo, m) < 1.0) lo *= 0.5;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (gamma_factor(mid, m) > 1.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace ipdsaw

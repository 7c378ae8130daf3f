#include "ipdsaw/tilt.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "ipdsaw/util.hpp"

namespace ipdsaw {

namespace {

constexpr double kDomainMargin = 1e-9;
constexpr double kQuadTol = 1e-12;
constexpr int kNewtonCap = 80;

// Gauss-Legendre nodes/weights on [-1,1], generated once by Newton iteration
// on P_n; avoids transcribing long literal tables.
struct GaussRule {
    std::vector<double> nodes, weights;

    explicit GaussRule(int n) {
        nodes.resize(n);
        weights.resize(n);
        for (int k = 0; k < n; ++k) {
            double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            nodes[k] = x;
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            weights[k] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

const GaussRule& rule7() {
    static const GaussRule r(7);
    return r;
}
const GaussRule& rule15() {
    static const GaussRule r(15);
    return r;
}

double fixed_gauss(const std::function<double(double)>& f, double a, double b, const GaussRule& g) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * f(mid + half * g.nodes[i]);
    return s * half;
}

// Adaptive Gauss-Legendre with a GL7/GL15 error estimate; absolute tolerance
// spread over the interval length, with a relative floor so that large
// integrands near the domain edge cannot force unattainable splits.
double adaptive_gauss(const std::function<double(double)>& f, double a, double b, double tol, int depth = 0) {
    const double i15 = fixed_gauss(f, a, b, rule15());
    const double i7 = fixed_gauss(f, a, b, rule7());
    if (std::abs(i15 - i7) <= tol + 1e-14 * std::abs(i15) || depth >= 40) return i15;
    const double mid = 0.5 * (a + b);
    return adaptive_gauss(f, a, mid, 0.5 * tol, depth + 1) + adaptive_gauss(f, mid, b, 0.5 * tol, depth + 1);
}

void require_domain(const WalkLaw& law, double h0, double h1) {
    const double hw = law.half_width() - kDomainMargin;
    if (!(std::abs(h1) < hw) || !(std::abs(h0 + h1) < hw))
        throw std::domain_error("L_Lambda: H outside the tilt domain");
}

// Real dilogarithm on [0, 1): series below 1/2, reflection identity above.
double dilog(double x) {
    if (x < 0.0 || x >= 1.0) throw std::domain_error("dilog: argument outside [0,1)");
    if (x > 0.5) return M_PI * M_PI / 6.0 - std::log(x) * std::log1p(-x) - dilog(1.0 - x);
    double term = x, sum = x;
    for (int k = 2; k < 200; ++k) {
        term *= x;
        const double add = term / (static_cast<double>(k) * static_cast<double>(k));
        sum += add;
        if (add < 1e-18 * sum) break;
    }
    return sum;
}

// Exact primitive int_0^t L(s) ds: the two geometric-tail logarithms
// integrate to dilogarithms of r e^{+-t}, the constant part is linear.
double integral_L(const WalkLaw& law, double t) {
    const double r = law.ratio;
    const double konst = std::log1p(-r * r) - std::log(law.c);
    return konst * t + dilog(r * std::exp(t)) - dilog(r * std::exp(-t));
}

struct EdgeValues {
    double a, b;          // integration endpoints h1 and h0 + h1
    double La, Lb;        // L at the endpoints
    double Da, Db;        // L' at the endpoints
    double IL;            // int_a^b L
};

EdgeValues edges(const WalkLaw& law, double h0, double h1) {
    EdgeValues e;
    e.a = h1;
    e.b = h0 + h1;
    e.La = law.log_mgf(e.a);
    e.Lb = law.log_mgf(e.b);
    e.Da = law.log_mgf_d1(e.a);
    e.Db = law.log_mgf_d1(e.b);
    e.IL = integral_L(law, e.b) - integral_L(law, e.a);
    return e;
}

// The x-integrals over [0,1] reduce, via t = x h0 + h1, to moments of L, L'
// and L'' over [h1, h0+h1]; everything telescopes to endpoint data and the
// dilogarithm primitive. Quadrature remains only for the |h0| -> 0 limit.
constexpr double kSmallH0 = 1e-4;

} // namespace

double L_Lambda(const WalkLaw& law, double h0, double h1) {
    require_domain(law, h0, h1);
    if (std::abs(h0) < kSmallH0)
        return adaptive_gauss([&](double x) { return law.log_mgf(x * h0 + h1); }, 0.0, 1.0, kQuadTol);
    const auto e = edges(law, h0, h1);
    return e.IL / h0;
}

std::array<double, 2> grad_L_Lambda(const WalkLaw& law, double h0, double h1) {
    require_domain(law, h0, h1);
    if (std::abs(h0) < kSmallH0) {
        const double g0 = adaptive_gauss([&](double x) { return x * law.log_mgf_d1(x * h0 + h1); }, 0.0, 1.0, kQuadTol);
        const double g1 = adaptive_gauss([&](double x) { return law.log_mgf_d1(x * h0 + h1); }, 0.0, 1.0, kQuadTol);
        return {g0, g1};
    }
    const auto e = edges(law, h0, h1);
    const double dL = e.Lb - e.La;
    const double int_tLp = e.b * e.Lb - e.a * e.La - e.IL;  // int t L'(t) dt
    return {(int_tLp - h1 * dL) / (h0 * h0), dL / h0};
}

std::array<double, 3> hessian_B(const WalkLaw& law, double h0, double h1) {
    require_domain(law, h0, h1);
    if (std::abs(h0) < kSmallH0) {
        const double b00 =
            adaptive_gauss([&](double x) { return x * x * law.log_mgf_d2(x * h0 + h1); }, 0.0, 1.0, kQuadTol);
        const double b01 = adaptive_gauss([&](double x) { return x * law.log_mgf_d2(x * h0 + h1); }, 0.0, 1.0, kQuadTol);
        const double b11 = adaptive_gauss([&](double x) { return law.log_mgf_d2(x * h0 + h1); }, 0.0, 1.0, kQuadTol);
        return {b00, b01, b11};
    }
    const auto e = edges(law, h0, h1);
    const double dL = e.Lb - e.La;
    const double dD = e.Db - e.Da;                                   // int L''
    const double int_tLpp = e.b * e.Db - e.a * e.Da - dL;            // int t L''
    const double int_tLp = e.b * e.Lb - e.a * e.La - e.IL;           // int t L'
    const double int_t2Lpp = e.b * e.b * e.Db - e.a * e.a * e.Da - 2.0 * int_tLp;  // int t^2 L''
    const double b11 = dD / h0;
    const double b01 = (int_tLpp - h1 * dD) / (h0 * h0);
    const double b00 = (int_t2Lpp - 2.0 * h1 * int_tLpp + h1 * h1 * dD) / (h0 * h0 * h0);
    return {b00, b01, b11};
}

double tilt_R(const WalkLaw& law, double u) {
    if (u == 0.0) return 0.0;
    return grad_L_Lambda(law, u, -0.5 * u)[0];
}

double tilt_R_deriv(const WalkLaw& law, double u) {
    // total derivative along (h0, h1) = (u, -u/2)
    const auto B = hessian_B(law, u, -0.5 * u);
    return B[0] - 0.5 * B[1];
}

namespace {

TiltPoint finish_point(const WalkLaw& law, double h0, double h1, double q) {
    // confirming two-dimensional Newton polish on grad L_Lambda(H) = (q, 0)
    for (int it = 0; it < 8; ++it) {
        const auto g = grad_L_Lambda(law, h0, h1);
        const double r0 = g[0] - q, r1 = g[1];
        if (std::max(std::abs(r0), std::abs(r1)) < 1e-13) break;
        const auto B = hessian_B(law, h0, h1);
        const double det = B[0] * B[2] - B[1] * B[1];
        const double d0 = (B[2] * r0 - B[1] * r1) / det;
        const double d1 = (B[0] * r1 - B[1] * r0) / det;
        const double hw = law.half_width() - 2.0 * kDomainMargin;
        double s = 1.0;
        while (s > 1e-6) {
            const double n0 = h0 - s * d0, n1 = h1 - s * d1;
            if (std::abs(n1) < hw && std::abs(n0 + n1) < hw) { h0 = n0; h1 = n1; break; }
            s *= 0.5;
        }
    }
    TiltPoint p;
    p.h0 = h0;
    p.h1 = h1;
    p.value = L_Lambda(law, h0, h1);
    p.grad = grad_L_Lambda(law, h0, h1);
    p.hess = hessian_B(law, h0, h1);
    p.residual = std::max(std::abs(p.grad[0] - q), std::abs(p.grad[1]));
    return p;
}

} // namespace

TiltPoint solve_tilt(const WalkLaw& law, double q) {
    if (!(q > 0.0)) throw std::invalid_argument("solve_tilt: q must be > 0");
    const double u_max = law.beta - 4.0 * kDomainMargin;

    double lo = 0.0, hi = std::min(u_max, 12.0 * q / law.sigma2() + 0.25 * law.beta);
    while (tilt_R(law, hi) < q) {
        if (hi >= u_max * (1.0 - 1e-12)) throw std::domain_error("solve_tilt: tilt domain exhausted");
        hi = std::min(u_max, 1.6 * hi + 0.1);
    }
    double u = 0.5 * (lo + hi);
    for (int it = 0; it < kNewtonCap; ++it) {
        const double r = tilt_R(law, u) - q;
        if (std::abs(r) < 1e-13 * std::max(1.0, q)) break;
        if (r > 0.0) hi = u;
        else lo = u;
        const double step = r / tilt_R_deriv(law, u);
        double next = u - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        u = next;
    }
    return finish_point(law, u, -0.5 * u, q);
}

double finite_L_Lambda(const WalkLaw& law, std::int64_t n, double h0, double h1) {
    double s = 0.0;
    for (std::int64_t i = 1; i <= n; ++i)
        s += law.log_mgf((1.0 - static_cast<double>(i) / static_cast<double>(n)) * h0 + h1);
    return s / static_cast<double>(n);
}

std::array<double, 2> finite_tilt_gradient(const WalkLaw& law, std::int64_t n, double h0, double h1) {
    double g0 = 0.0, g1 = 0.0;
    for (std::int64_t j = 0; j < n; ++j) {
        const double frac = static_cast<double>(j) / static_cast<double>(n);
        const double d = law.log_mgf_d1(frac * h0 + h1);
        g0 += frac * d;
        g1 += d;
    }
    return {g0 / static_cast<double>(n), g1 / static_cast<double>(n)};
}

TiltPoint solve_tilt_finite(const WalkLaw& law, std::int64_t n, double q) {
    constexpr std::int64_t kNFloor = 8;
    if (n < kNFloor) throw std::invalid_argument("solve_tilt_finite: n below the solver floor");
    if (!(q > 0.0)) throw std::invalid_argument("solve_tilt_finite: q must be > 0");

    const TiltPoint seed = solve_tilt(law, q);
    double h0 = seed.h0, h1 = seed.h1;
    const double hw = law.half_width() - 2.0 * kDomainMargin;
    auto in_dn = [&](double a0, double a1) {
        const double top = (1.0 - 1.0 / static_cast<double>(n)) * a0 + a1;
        return std::abs(a1) < hw && std::abs(top) < hw;
    };

    std::ostringstream trail;
    for (int it = 0; it < kNewtonCap; ++it) {
        const auto g = finite_tilt_gradient(law, n, h0, h1);
        const double r0 = g[0] - q, r1 = g[1];
        double j00 = 0.0, j01 = 0.0, j11 = 0.0;
        for (std::int64_t j = 0; j < n; ++j) {
            const double frac = static_cast<double>(j) / static_cast<double>(n);
            const double d2 = law.log_mgf_d2(frac * h0 + h1);
            j00 += frac * frac * d2;
            j01 += frac * d2;
            j11 += d2;
        }
        j00 /= static_cast<double>(n);
        j01 /= static_cast<double>(n);
        j11 /= static_cast<double>(n);
        if (std::max(std::abs(r0), std::abs(r1)) < 1e-12) {
            TiltPoint p;
            p.h0 = h0;
            p.h1 = h1;
            p.value = finite_L_Lambda(law, n, h0, h1);
            p.grad = g;
            // discrete Jacobian: H_n^q may sit outside the continuum domain
            p.hess = {j00, j01, j11};
            p.residual = std::max(std::abs(r0), std::abs(r1));
            return p;
        }
        const double det = j00 * j11 - j01 * j01;
        const double d0 = (j11 * r0 - j01 * r1) / det;
        const double d1 = (j00 * r1 - j01 * r0) / det;
        trail << "(" << h0 << "," << h1 << ") ";
        double s = 1.0;
        bool moved = false;
        while (s > 1e-8) {
            const double n0 = h0 - s * d0, n1 = h1 - s * d1;
            if (in_dn(n0, n1)) { h0 = n0; h1 = n1; moved = true; break; }
            s *= 0.5;
        }
        if (!moved) break;
    }
    throw std::runtime_error("solve_tilt_finite: Newton failed, iterates " + trail.str());
}

double decay_rate(const WalkLaw& law, double q) {
    const TiltPoint p = solve_tilt(law, q);
    return p.value - p.h0 * q;
}

double joint_atom_log_prob(const WalkLaw& law, std::int64_t n, double q) {
    const std::int64_t target = llround(static_cast<double>(n) * static_cast<double>(n) * q);
    const TiltPoint H = solve_tilt_finite(law, n, q);
    const TiltPair tilt{H.h0, H.h1};
    const auto win = default_joint_window(law, n, tilt, 7.0);
    const auto table = tilted_joint_pmf(law, n, tilt, win);
    const double atom = table.prob(target, 0);
    if (!(atom > 0.0)) throw std::runtime_error("joint_atom_log_prob: atom has zero captured mass");
    // change of measure back to P_beta: the density is constant on the atom
    const double exponent = static_cast<double>(n) * (finite_L_Lambda(law, n, H.h0, H.h1) - H.h0 * q);
    return (std::log(atom) + exponent) / static_cast<double>(n);
}

double G_tilde(const WalkLaw& law, Model m, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("G_tilde: a must be > 0");
    const double q = 1.0 / (a * a);
    const TiltPoint H = solve_tilt(law, q);
    return a * std::log(gamma_factor(law.beta, m)) - H.h0 / a + a * H.value;
}

double G_tilde_deriv(const WalkLaw& law, Model m, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("G_tilde_deriv: a must be > 0");
    const double q = 1.0 / (a * a);
    const TiltPoint H = solve_tilt(law, q);
    return std::log(gamma_factor(law.beta, m)) + q * H.h0 + H.value;
}

double a_star(const WalkLaw& law, Model m) {
    if (gamma_factor(law.beta, m) >= 1.0)
        throw std::domain_error("a_star: undefined in the extended phase (Gamma >= 1)");
    double lo = 1.0;
    while (G_tilde_deriv(law, m, lo) < 0.0) lo *= 0.5;
    double hi = std::max(2.0 * lo, 1.0);
    while (G_tilde_deriv(law, m, hi) > 0.0) hi *= 2.0;
    for (int it = 0; it < 80 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (G_tilde_deriv(law, m, mid) > 0.0) lo = mid;
        else hi = mid;
    }
    double a = 0.5 * (lo + hi);
    // Newton polish with the analytic second derivative
    for (int it = 0; it < 20; ++it) {
        const double q = 1.0 / (a * a);
        const TiltPoint H = solve_tilt(law, q);
        const double d1 = std::log(gamma_factor(law.beta, m)) + q * H.h0 + H.value;
        if (std::abs(d1) < 1e-12) break;
        const double dh0 = 1.0 / tilt_R_deriv(law, H.h0);  // d h~0 / dq
        const double d2 = -2.0 / (a * a * a) * H.h0 - 4.0 / std::pow(a, 5) * dh0;
        const double next = a - d1 / d2;
        if (next > lo && next < hi) a = next;
        else break;
    }
    return a;
}

WulffShape wulff_shape(const WalkLaw& law, Model m, std::int64_t grid_size) {
    if (grid_size < 2) throw std::invalid_argument("wulff_shape: grid_size >= 2 required");
    WulffShape w;
    w.a_star = a_star(law, m);
    const TiltPoint H = solve_tilt(law, 1.0 / (w.a_star * w.a_star));
    w.u = H.h0;
    w.s.resize(grid_size);
    w.gamma.resize(grid_size);
    const double du = 1.0 / static_cast<double>(grid_size - 1);
    w.s[0] = 0.0;
    w.gamma[0] = 0.0;
    for (std::int64_t j = 1; j < grid_size; ++j) {
        const double a = static_cast<double>(j - 1) * du, b = static_cast<double>(j) * du;
        const double cell = fixed_gauss([&](double x) { return law.log_mgf_d1((0.5 - x) * w.u); }, a, b, rule15());
        w.s[j] = b;
        w.gamma[j] = w.gamma[j - 1] + cell;
    }
    // J(gamma*) by quadrature using L*(L'(h)) = h L'(h) - L(h)
    w.J_value = adaptive_gauss(
        [&](double t) {
            const double h = (0.5 - t) * w.u;
            return h * law.log_mgf_d1(h) - law.log_mgf(h);
        },
        0.0, 1.0, kQuadTol);
    return w;
}

double legendre_Lstar(const WalkLaw& law, double v) {
    const double hw = law.half_width() - 10.0 * WalkLaw::kDomainMargin;
    double lo = -hw, hi = hw;
    double h = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double r = law.log_mgf_d1(h) - v;
        if (std::abs(r) < 1e-14 * std::max(1.0, std::abs(v))) break;
        if (r > 0.0) hi = h;
        else lo = h;
        double next = h - r / law.log_mgf_d2(h);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        h = next;
    }
    return h * v - law.log_mgf(h);
}

double rate_J(const WalkLaw& law, const std::vector<double>& s, const std::vector<double>& gamma) {
    if (s.size() != gamma.size() || s.size() < 2) throw std::invalid_argument("rate_J: grid mismatch");
    double J = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        const double dt = s[i] - s[i - 1];
        if (!(dt > 0.0)) throw std::invalid_argument("rate_J: grid must be increasing");
        J += legendre_Lstar(law, (gamma[i] - gamma[i - 1]) / dt) * dt;
    }
    return J;
}

double gaussian_density(const std::array<double, 3>& B, double x0, double x1) {
    const double det = B[0] * B[2] - B[1] * B[1];
    if (!(B[0] > 0.0) || !(det > 0.0)) throw std::invalid_argument("gaussian_density: B is not SPD");
    const double q = (B[2] * x0 * x0 - 2.0 * B[1] * x0 * x1 + B[0] * x1 * x1) / det;
    return std::exp(-0.5 * q) / (2.0 * M_PI * std::sqrt(det));
}

std::vector<LcltRow> local_clt_check(const WalkLaw& law, double q, const std::vector<std::int64_t>& N_list) {
    if (!(q > 0.0)) throw std::invalid_argument("local_clt_check: q must be > 0");
    const TiltPoint cont = solve_tilt(law, q);
    const double f_ref = gaussian_density(cont.hess, 0.0, 0.0);
    std::vector<LcltRow> rows;
    for (std::int64_t N : N_list) {
        const std::int64_t target = llround(static_cast<double>(N) * static_cast<double>(N) * q);
        const TiltPoint H = solve_tilt_finite(law, N, q);
        const TiltPair tilt{H.h0, H.h1};
        const auto table = tilted_joint_pmf(law, N, tilt, default_joint_window(law, N, tilt, 7.0));
        const double lhs = static_cast<double>(N) * static_cast<double>(N) * table.prob(target, 0);
        rows.push_back({N, lhs, f_ref, lhs / f_ref});
    }
    return rows;
}

} // namespace ipdsaw

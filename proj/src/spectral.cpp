#include "ipdsaw/spectral.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "ipdsaw/simd_kernels.hpp"

namespace ipdsaw {

namespace {

constexpr std::int64_t kTruncationCap = 1 << 21;
constexpr std::int64_t kPowerIterationCap = 400000;

// Two-sided geometric convolution out = p * in on [-M, M], O(M) via the
// ascending/descending prefix recursions; out may not alias in.
void geometric_convolve(const WalkLaw& law, const std::vector<double>& in, std::vector<double>& out) {
    const double r = law.ratio, inv_c = 1.0 / law.c;
    const std::size_t n = in.size();
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = in[i] + t;
        t = r * out[i];
    }
    t = 0.0;
    for (std::size_t i = n; i-- > 0;) {
        const double tot = out[i] + t;
        t = r * (in[i] + t);
        out[i] = tot * inv_c;
    }
}

struct PerronResult {
    double log_lambda;
    std::int64_t iterations;
};

// Leading eigenvalue of the symmetrized kernel
//   S(x,y) = e^{-delta|x|/2} pmf(y-x) e^{-delta|y|/2}
// by power iteration with a positive even start vector. Stops when both the
// Rayleigh-quotient increment and the residual norm are below lambda*tol.
PerronResult perron_log_eigenvalue(const WalkLaw& law, double delta, std::int64_t M, double tol) {
    const std::size_t W = static_cast<std::size_t>(2 * M + 1);
    std::vector<double> disc(W), v(W), w(W), z(W);
    for (std::int64_t x = -M; x <= M; ++x)
        disc[x + M] = std::exp(-0.5 * delta * static_cast<double>(std::llabs(x)));
    for (std::int64_t x = -M; x <= M; ++x)
        v[x + M] = std::exp(-0.25 * law.beta * static_cast<double>(std::llabs(x)));
    double nrm = 0.0;
    for (double a : v) nrm += a * a;
    nrm = std::sqrt(nrm);
    for (double& a : v) a /= nrm;

    double lambda = 0.0, lambda_prev = -1.0;
    std::int64_t it = 0;
    for (; it < kPowerIterationCap; ++it) {
        kernels::mul(w.data(), disc.data(), v.data(), W);
        geometric_convolve(law, w, z);
        kernels::mul(z.data(), disc.data(), z.data(), W);

        double dot = 0.0, zz = 0.0;
        for (std::size_t i = 0; i < W; ++i) {
            dot += v[i] * z[i];
            zz += z[i] * z[i];
        }
        lambda = dot;  // Rayleigh quotient, ||v|| = 1
        double rr = 0.0;  // explicit ||z - lambda v||, immune to cancellation
        for (std::size_t i = 0; i < W; ++i) {
            const double d = z[i] - lambda * v[i];
            rr += d * d;
        }
        const double resid = std::sqrt(rr);
        const double znorm = std::sqrt(zz);
        for (std::size_t i = 0; i < W; ++i) v[i] = z[i] / znorm;

        if (it > 0 && std::abs(lambda - lambda_prev) < 0.1 * tol * lambda && resid < 0.1 * tol * lambda) break;
        lambda_prev = lambda;
    }
    if (it == kPowerIterationCap)
        throw std::runtime_error("h_beta: power iteration failed to converge at M=" + std::to_string(M));
    return {std::log(lambda), it};
}

} // namespace

HBetaDiagnostics h_beta_diag(const WalkLaw& law, double delta, double tol) {
    if (delta < 0.0) throw std::invalid_argument("h_beta: delta must be >= 0");
    if (!(tol > 0.0)) throw std::invalid_argument("h_beta: tol must be > 0");
    if (delta == 0.0) return {0.0, 0, 0};

    std::int64_t M = std::max<std::int64_t>(32, static_cast<std::int64_t>(std::ceil(6.0 * std::pow(delta, -2.0 / 3.0))));
    HBetaDiagnostics out;
    PerronResult prev = perron_log_eigenvalue(law, delta, M, tol);
    out.iterations = prev.iterations;
    double before_prev = prev.log_lambda;
    while (true) {
        if (2 * M > kTruncationCap)
            throw std::runtime_error("h_beta: truncation cap reached, last two iterates " +
                                     std::to_string(before_prev) + ", " + std::to_string(prev.log_lambda));
        const PerronResult cur = perron_log_eigenvalue(law, delta, 2 * M, tol);
        out.iterations += cur.iterations;
        if (std::abs(cur.log_lambda - prev.log_lambda) < tol) {
            out.value = std::min(cur.log_lambda, 0.0);
            out.truncation = 2 * M;
            return out;
        }
        before_prev = prev.log_lambda;
        prev = cur;
        M *= 2;
    }
}

double h_beta(const WalkLaw& law, double delta, double tol) { return h_beta_diag(law, delta, tol).value; }

double h_beta_finite(const WalkLaw& law, double delta, std::int64_t N, std::int64_t M) {
    if (N < 1 || M < 1) throw std::invalid_argument("h_beta_finite: N >= 1 and M >= 1 required");
    if (delta < 0.0) throw std::invalid_argument("h_beta_finite: delta must be >= 0");
    const std::size_t W = static_cast<std::size_t>(2 * M + 1);
    std::vector<double> disc(W), u(W, 0.0), w(W), z(W);
    for (std::int64_t x = -M; x <= M; ++x)
        disc[x + M] = std::exp(-delta * static_cast<double>(std::llabs(x)));
    u[M] = 1.0;
    double log_scale = 0.0;
    for (std::int64_t i = 0; i < N; ++i) {
        geometric_convolve(law, u, z);
        kernels::mul(u.data(), disc.data(), z.data(), W);
        double m = 0.0;
        for (double a : u)
            if (a > m) m = a;
        if (m == 0.0) throw std::runtime_error("h_beta_finite: mass vanished");
        kernels::scale(u.data(), u.data(), 1.0 / m, W);
        log_scale += std::log(m);
    }
    return (std::log(u[M]) + log_scale) / static_cast<double>(N);
}

std::vector<ScalingRow> critical_scaling_scan(const WalkLaw& law_at_bc, const std::vector<double>& delta_grid,
                                              double tol) {
    std::vector<ScalingRow> rows;
    rows.reserve(delta_grid.size());
    for (double d : delta_grid) {
        if (!(d > 0.0)) throw std::invalid_argument("critical_scaling_scan: grid must be positive");
        const double h = h_beta(law_at_bc, d, tol);
        rows.push_back({d, h, h / std::pow(d, 2.0 / 3.0)});
    }
    return rows;
}

} // namespace ipdsaw

#include "ipdsaw/area_dp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>

#include "ipdsaw/simd_kernels.hpp"
#include "ipdsaw/util.hpp"

namespace ipdsaw {

namespace {

constexpr double kRescaleFloor = 1e-120;
constexpr std::size_t kMemoryBudgetBytes = std::size_t(2500) * 1024 * 1024;

void check_memory_budget(const char* who, std::int64_t layers, std::int64_t width, std::int64_t rowlen) {
    const std::size_t bytes = static_cast<std::size_t>(layers) * static_cast<std::size_t>(width) *
                              static_cast<std::size_t>(rowlen) * sizeof(double);
    if (bytes > kMemoryBudgetBytes)
        throw std::length_error(std::string(who) + ": memory budget exceeded, need " + std::to_string(bytes) +
                                " bytes for " + std::to_string(layers) + " layers of " + std::to_string(width) + "x" +
                                std::to_string(rowlen));
}

// One forward step of the area DP in x-major layout. Row x of a layer holds
// D(x, a) for a = 0..K contiguously. The two-sided geometric kernel turns
// into one ascending and one descending prefix recursion over whole rows,
// and the |arrival| area shift is a row copy at offset.
struct LayerEngine {
    const WalkLaw& law;
    std::int64_t x_lo, x_hi, K;

    std::vector<double> acc, t, t2;

    LayerEngine(const WalkLaw& l, std::int64_t xlo, std::int64_t xhi, std::int64_t k)
        : law(l), x_lo(xlo), x_hi(xhi), K(k) {
        acc.assign(static_cast<std::size_t>(width()) * rowlen(), 0.0);
        t.assign(rowlen(), 0.0);
        t2.assign(rowlen(), 0.0);
    }

    std::int64_t width() const { return x_hi - x_lo + 1; }
    std::size_t rowlen() const { return static_cast<std::size_t>(K + 1); }

    double* row(std::vector<double>& layer, std::int64_t x) const {
        return layer.data() + static_cast<std::size_t>(x - x_lo) * rowlen();
    }
    const double* row(const std::vector<double>& layer, std::int64_t x) const {
        return layer.data() + static_cast<std::size_t>(x - x_lo) * rowlen();
    }

    // next(y, a) = (1/c) sum_x e^{-beta|y-x|/2} cur(x, a - |y|).
    void step(const std::vector<double>& cur, std::vector<double>& next) {
        const double r = law.ratio;
        const double inv_c = 1.0 / law.c;
        const std::size_t n = rowlen();

        // ascending pass: acc(x) = cur(x) + sum_{x' < x} r^{x-x'} cur(x')
        std::fill(t.begin(), t.end(), 0.0);
        for (std::int64_t x = x_lo; x <= x_hi; ++x) {
            kernels::add(row(acc, x), row(cur, x), t.data(), n);
            kernels::scale(t.data(), row(acc, x), r, n);
        }

        // descending pass adds sum_{x' > x} r^{x'-x} cur(x'), then the area
        // shift |y| and the 1/c normalization finalize the row.
        std::fill(t.begin(), t.end(), 0.0);
        for (std::int64_t y = x_hi; y >= x_lo; --y) {
            double* out = row(next, y);
            const std::int64_t shift = std::llabs(y);
            if (shift > K) {
                std::memset(out, 0, n * sizeof(double));
            } else {
                std::memset(out, 0, static_cast<std::size_t>(shift) * sizeof(double));
                const double* a0 = row(acc, y);
                kernels::add_scale(out + shift, a0, t.data(), inv_c, n - static_cast<std::size_t>(shift));
            }
            if (y > x_lo) {
                kernels::add(t2.data(), row(cur, y), t.data(), n);
                kernels::scale(t.data(), t2.data(), r, n);
            }
        }
    }
};

std::int64_t clamp_cap(std::int64_t cap, std::int64_t k_max) {
    return std::max<std::int64_t>(1, std::min(cap, std::max<std::int64_t>(k_max, 1)));
}

double layer_max(const std::vector<double>& layer) {
    double m = 0.0;
    for (double v : layer)
        if (v > m) m = v;
    return m;
}

} // namespace

std::int64_t default_x_cap(std::int64_t k_max) {
    if (k_max <= 1) return std::max<std::int64_t>(k_max, 1);
    const double k = static_cast<double>(k_max);
    const auto cap = static_cast<std::int64_t>(std::ceil(4.0 * std::sqrt(k) * std::log(k))) + 64;
    return std::min(k_max, cap);
}

std::int64_t tail_aware_x_cap(const WalkLaw& law, std::int64_t n_max, std::int64_t k_max, double tail_log) {
    const double need = (4.0 / law.beta) * (tail_log + std::log(static_cast<double>(std::max<std::int64_t>(n_max, 2)) * law.c));
    const auto cap = std::max<std::int64_t>(64, static_cast<std::int64_t>(std::ceil(need)));
    return clamp_cap(std::min(cap, default_x_cap(k_max)), k_max);
}

std::int64_t ReturnTable::effective_x_cap(std::int64_t requested, std::int64_t k_max) {
    return clamp_cap(requested >= 0 ? requested : default_x_cap(k_max), k_max);
}

ReturnTable ReturnTable::build(const WalkLaw& law, std::int64_t n_max, std::int64_t k_max, AreaTableOptions opts) {
    if (n_max < 1 || k_max < 0) throw std::invalid_argument("ReturnTable: need n_max >= 1, k_max >= 0");
    const std::int64_t cap = effective_x_cap(opts.x_cap, k_max);

    ReturnTable t;
    t.beta_ = law.beta;
    t.n_max_ = n_max;
    t.k_max_ = k_max;
    t.x_cap_ = cap;
    t.positive_ = opts.positive;
    t.log_rows_.assign(static_cast<std::size_t>(n_max) * (k_max + 1), kNegInf);

    const std::int64_t x_lo = opts.positive ? 0 : -cap;
    check_memory_budget("ReturnTable", 4, cap - x_lo + 1, k_max + 1);
    LayerEngine eng(law, x_lo, cap, k_max);
    const std::size_t layer_size = static_cast<std::size_t>(eng.width()) * eng.rowlen();
    std::vector<double> cur(layer_size, 0.0), next(layer_size, 0.0);
    eng.row(cur, 0)[0] = 1.0;
    double log_scale = 0.0;

    for (std::int64_t n = 1; n <= n_max; ++n) {
        eng.step(cur, next);
        const double* zero_row = eng.row(next, 0);
        for (std::int64_t k = 0; k <= k_max; ++k) {
            if (zero_row[k] > 0.0)
                t.log_rows_[static_cast<std::size_t>(n - 1) * (k_max + 1) + k] = std::log(zero_row[k]) + log_scale;
        }
        if (opts.positive) std::memset(eng.row(next, 0), 0, eng.rowlen() * sizeof(double));
        const double m = layer_max(next);
        if (m == 0.0) break;  // no admissible continuation; remaining rows stay -inf
        if (m < kRescaleFloor) {
            kernels::scale(next.data(), next.data(), 1.0 / m, layer_size);
            log_scale += std::log(m);
        }
        cur.swap(next);
    }
    return t;
}

ReturnTable ReturnTable::from_rows(double beta, std::int64_t n_max, std::int64_t k_max, std::int64_t x_cap,
                                   bool positive, std::vector<double> rows) {
    if (rows.size() != static_cast<std::size_t>(n_max) * (k_max + 1))
        throw std::invalid_argument("ReturnTable::from_rows: size mismatch");
    ReturnTable t;
    t.beta_ = beta;
    t.n_max_ = n_max;
    t.k_max_ = k_max;
    t.x_cap_ = x_cap;
    t.positive_ = positive;
    t.log_rows_ = std::move(rows);
    return t;
}

double ReturnTable::log_prob(std::int64_t n, std::int64_t k) const {
    if (n < 1 || n > n_max_ || k < 0 || k > k_max_)
        throw std::out_of_range("ReturnTable::log_prob: (n,k) outside the table");
    return log_rows_[static_cast<std::size_t>(n - 1) * (k_max_ + 1) + k];
}

double ReturnTable::prob(std::int64_t n, std::int64_t k) const {
    const double lp = log_prob(n, k);
    return lp == kNegInf ? 0.0 : std::exp(lp);
}

double ReturnTable::truncation_bound() const {
    if (x_cap_ >= k_max_) return 0.0;
    const WalkLaw law(beta_);
    return static_cast<double>(n_max_) * law.c * std::exp(-0.25 * beta_ * static_cast<double>(x_cap_));
}

double prob_area_return(const ReturnTable& unrestricted, std::int64_t n, std::int64_t k) {
    if (unrestricted.positive()) throw std::invalid_argument("prob_area_return: table has positivity on");
    return unrestricted.prob(n, k);
}

double prob_area_excursion(const ReturnTable& positive, std::int64_t n, std::int64_t k) {
    if (!positive.positive()) throw std::invalid_argument("prob_area_excursion: table lacks positivity flag");
    return positive.prob(n, k);
}

double conditional_positive_prob(const ReturnTable& unrestricted, const ReturnTable& positive,
                                 std::int64_t n, std::int64_t k) {
    const double den = prob_area_return(unrestricted, n, k);
    if (den <= 0.0) throw std::domain_error("conditional_positive_prob: conditioning event has zero probability");
    return prob_area_excursion(positive, n, k) / den;
}

namespace {

double excess_terms_logsum(const ReturnTable& table, Model m, std::int64_t L, double extra) {
    if (L < 1) throw std::invalid_argument("excess partition: L >= 1 required");
    if (table.n_max() < L + 1 || table.k_max() < L - 1)
        throw std::invalid_argument("excess partition: table too small for this L");
    const double lg = std::log(gamma_factor(table.beta(), m));
    std::vector<double> terms;
    terms.reserve(L);
    for (std::int64_t N = 1; N <= L; ++N)
        terms.push_back(static_cast<double>(N) * lg + table.log_prob(N + 1, L - N));
    return log_sum_exp(terms) + extra;
}

} // namespace

double excess_log_partition(const ReturnTable& unrestricted, Model m, std::int64_t L) {
    if (unrestricted.positive()) throw std::invalid_argument("excess_log_partition: table has positivity on");
    return excess_terms_logsum(unrestricted, m, L, 0.0);
}

double one_bead_log_partition(const ReturnTable& positive, Model m, std::int64_t L) {
    if (!positive.positive()) throw std::invalid_argument("one_bead_log_partition: table lacks positivity flag");
    if (L == 1) {
        // the single length-1 configuration has a zero stretch, which the
        // excursion sets cannot encode; its weight enters directly
        const WalkLaw law(positive.beta());
        const double w = m == Model::uniform ? 0.0 : -std::log(3.0);
        return w - std::log(law.c) - phi_growth(positive.beta(), m);
    }
    return excess_terms_logsum(positive, m, L, std::log(2.0));
}

double excess_log_partition(const WalkLaw& law, Model m, std::int64_t L) {
    const auto table = ReturnTable::build(law, L + 1, std::max<std::int64_t>(L - 1, 0),
                                          {false, tail_aware_x_cap(law, L + 1, L)});
    return excess_log_partition(table, m, L);
}

double one_bead_log_partition(const WalkLaw& law, Model m, std::int64_t L) {
    const auto table = ReturnTable::build(law, L + 1, std::max<std::int64_t>(L - 1, 0),
                                          {true, tail_aware_x_cap(law, L + 1, L)});
    return one_bead_log_partition(table, m, L);
}

PathTable PathTable::build(const WalkLaw& law, std::int64_t n_steps, std::int64_t area_total, std::int64_t x_cap) {
    if (n_steps < 1 || area_total < 0) throw std::invalid_argument("PathTable: need n >= 1, k >= 0");
    PathTable t;
    t.law_ = law;
    t.n_ = n_steps;
    t.k_ = area_total;
    t.x_cap_ = clamp_cap(x_cap >= 0 ? x_cap : default_x_cap(area_total), std::max<std::int64_t>(area_total, 1));

    check_memory_budget("PathTable", n_steps + 2, 2 * t.x_cap_ + 1, area_total + 1);
    LayerEngine eng(law, -t.x_cap_, t.x_cap_, area_total);
    t.width_ = eng.width();
    const std::size_t layer_size = static_cast<std::size_t>(t.width_) * eng.rowlen();
    t.layers_.assign(n_steps + 1, {});
    t.layer_log_scale_.assign(n_steps + 1, 0.0);
    t.layers_[0].assign(layer_size, 0.0);
    eng.row(t.layers_[0], 0)[0] = 1.0;

    for (std::int64_t i = 1; i <= n_steps; ++i) {
        t.layers_[i].assign(layer_size, 0.0);
        eng.step(t.layers_[i - 1], t.layers_[i]);
        t.layer_log_scale_[i] = t.layer_log_scale_[i - 1];
        const double m = layer_max(t.layers_[i]);
        if (m > 0.0 && m < kRescaleFloor) {
            kernels::scale(t.layers_[i].data(), t.layers_[i].data(), 1.0 / m, layer_size);
            t.layer_log_scale_[i] += std::log(m);
        }
    }
    return t;
}

double PathTable::log_prob_return() const {
    const double v = layers_[n_][static_cast<std::size_t>(x_cap_) * (k_ + 1) + k_];
    return v > 0.0 ? std::log(v) + layer_log_scale_[n_] : kNegInf;
}

std::vector<std::int64_t> PathTable::sample_bridge(CounterRng& rng) const {
    if (log_prob_return() == kNegInf)
        throw std::domain_error("PathTable::sample_bridge: conditioning event has zero probability");

    const std::size_t rowlen = static_cast<std::size_t>(k_ + 1);
    auto cell = [&](std::int64_t layer, std::int64_t x, std::int64_t a) -> double {
        return layers_[layer][static_cast<std::size_t>(x + x_cap_) * rowlen + a];
    };

    // pmf of a jump d in [-2 x_cap, 2 x_cap]
    std::vector<double> pmf_tab(4 * x_cap_ + 1);
    for (std::int64_t d = -2 * x_cap_; d <= 2 * x_cap_; ++d) pmf_tab[d + 2 * x_cap_] = law_.pmf(d);

    last_norm_err_ = 0.0;
    std::vector<std::int64_t> v(n_ + 1, 0);
    std::vector<double> w(width_);
    std::int64_t x = 0, a = k_;
    for (std::int64_t i = n_; i >= 2; --i) {
        const std::int64_t a_prev = a - std::llabs(x);
        double total = 0.0;
        for (std::int64_t xp = -x_cap_; xp <= x_cap_; ++xp) {
            const double ww = cell(i - 1, xp, a_prev) * pmf_tab[x - xp + 2 * x_cap_];
            w[xp + x_cap_] = ww;
            total += ww;
        }
        const double denom = cell(i, x, a);
        const double scale_ratio = std::exp(layer_log_scale_[i - 1] - layer_log_scale_[i]);
        last_norm_err_ = std::max(last_norm_err_, std::abs(total * scale_ratio / denom - 1.0));

        const double target = rng.next_unit() * total;
        double run = 0.0;
        std::int64_t pick = 0;
        bool picked = false;
        for (std::int64_t xp = -x_cap_; xp <= x_cap_; ++xp) {
            if (w[xp + x_cap_] <= 0.0) continue;
            run += w[xp + x_cap_];
            pick = xp;  // falls back to the last positive entry on rounding
            if (run >= target) { picked = true; break; }
        }
        (void)picked;
        v[i - 1] = pick;
        x = pick;
        a = a_prev;
    }
    return v;
}

namespace {

ReturnTable sampler_table(const WalkLaw& law, std::int64_t L) {
    if (L < 1) throw std::invalid_argument("PolymerSampler: L >= 1 required");
    if (L > kSamplingLengthCeiling) throw std::length_error("PolymerSampler: L exceeds the sampling ceiling");
    return ReturnTable::build(law, L + 1, std::max<std::int64_t>(L - 1, 0), {false, tail_aware_x_cap(law, L + 1, L)});
}

} // namespace

PolymerSampler::PolymerSampler(const WalkLaw& law, Model m, std::int64_t L)
    : PolymerSampler(law, m, L, sampler_table(law, L)) {}

PolymerSampler::PolymerSampler(const WalkLaw& law, Model m, std::int64_t L, ReturnTable table)
    : law_(law), m_(m), L_(L), table_(std::move(table)) {
    if (L < 1) throw std::invalid_argument("PolymerSampler: L >= 1 required");
    if (L > kSamplingLengthCeiling) throw std::length_error("PolymerSampler: L exceeds the sampling ceiling");
    if (table_.positive() || table_.n_max() < L + 1 || table_.k_max() < L - 1)
        throw std::invalid_argument("PolymerSampler: unsuitable table");
    const double lg = std::log(gamma_factor(law.beta, m));
    std::vector<double> logw(L);
    for (std::int64_t N = 1; N <= L; ++N) logw[N - 1] = static_cast<double>(N) * lg + table_.log_prob(N + 1, L - N);
    const double norm = log_sum_exp(logw);
    weights_.resize(L);
    for (std::int64_t N = 1; N <= L; ++N) {
        const double lw = logw[N - 1];
        weights_[N - 1] = lw == kNegInf ? 0.0 : std::exp(lw - norm);
    }
}

std::vector<double> PolymerSampler::extension_weights() const { return weights_; }

std::vector<StretchConfig> PolymerSampler::draw(std::int64_t count, std::uint64_t seed) const {
    // Phase 1: each draw's first variate picks its horizontal extension N.
    std::vector<std::int64_t> ext(count);
    std::map<std::int64_t, std::vector<std::int64_t>> groups;
    for (std::int64_t d = 0; d < count; ++d) {
        CounterRng rng(seed, static_cast<std::uint64_t>(d));
        const double u = rng.next_unit();
        double run = 0.0;
        std::int64_t N = 0;
        for (std::int64_t j = 1; j <= L_; ++j) {
            if (weights_[j - 1] <= 0.0) continue;
            run += weights_[j - 1];
            N = j;  // falls back to the last positive weight on rounding
            if (run >= u) break;
        }
        ext[d] = N;
        groups[N].push_back(d);
    }

    // Phase 2: one path table per distinct N serves all its draws.
    std::vector<StretchConfig> out(count);
    for (const auto& [N, draws] : groups) {
        const std::int64_t k = L_ - N;
        const auto pt = PathTable::build(law_, N + 1, k, tail_aware_x_cap(law_, N + 1, std::max<std::int64_t>(k, 1)));
        for (std::int64_t d : draws) {
            CounterRng rng(seed, static_cast<std::uint64_t>(d));
            rng.counter = 1;  // variate 0 already spent on N
            const auto v = pt.sample_bridge(rng);
            StretchConfig cfg;
            cfg.stretches.resize(N);
            for (std::int64_t i = 1; i <= N; ++i) cfg.stretches[i - 1] = (i % 2 == 1) ? v[i] : -v[i];
            out[d] = std::move(cfg);
        }
    }
    return out;
}

StretchConfig sample_polymer(const WalkLaw& law, Model m, std::int64_t L, std::uint64_t seed) {
    return PolymerSampler(law, m, L).draw(1, seed)[0];
}

std::vector<double> discounted_area_profile(const WalkLaw& law, double delta, std::int64_t n, std::int64_t x_cap) {
    if (delta < 0.0 || n < 0 || x_cap < 0) throw std::invalid_argument("discounted_area_profile: bad arguments");
    const std::size_t W = static_cast<std::size_t>(2 * x_cap + 1);
    std::vector<double> w(W, 1.0), u(W), conv(W), disc(W);
    for (std::int64_t x = -x_cap; x <= x_cap; ++x)
        disc[x + x_cap] = std::exp(-delta * static_cast<double>(std::llabs(x)));
    const double r = law.ratio, inv_c = 1.0 / law.c;
    for (std::int64_t step = 0; step < n; ++step) {
        kernels::mul(u.data(), disc.data(), w.data(), W);
        double t = 0.0;
        for (std::size_t i = 0; i < W; ++i) {  // ascending geometric prefix
            conv[i] = u[i] + t;
            t = r * conv[i];
        }
        t = 0.0;
        for (std::size_t i = W; i-- > 0;) {  // descending
            const double tot = conv[i] + t;
            t = r * (u[i] + t);
            w[i] = tot * inv_c;
        }
    }
    return w;
}

DiscountedArea discounted_area_expectation(const WalkLaw& law, double delta, std::int64_t n,
                                           std::int64_t x0, std::int64_t x_cap) {
    if (std::llabs(x0) > x_cap) throw std::invalid_argument("discounted_area_expectation: |x0| > x_cap");
    const auto profile = discounted_area_profile(law, delta, n, x_cap);
    const double margin = static_cast<double>(x_cap - std::llabs(x0));
    const double bound = static_cast<double>(n) * law.c * std::exp(-0.25 * law.beta * margin);
    return {profile[x0 + x_cap], bound};
}

double tilted_increment_pmf(const WalkLaw& law, double h, std::int64_t v) {
    if (!law.in_domain(h)) throw std::domain_error("tilted_increment_pmf: tilt out of domain");
    const double log_p = -0.5 * law.beta * static_cast<double>(std::llabs(v)) + h * static_cast<double>(v);
    return std::exp(log_p - law.log_mgf(h)) / law.c;
}

namespace {

std::vector<double> step_tilts(const WalkLaw& law, std::int64_t N, TiltPair H) {
    std::vector<double> h(N + 1);
    for (std::int64_t i = 1; i <= N; ++i)
        h[i] = (1.0 - static_cast<double>(i) / static_cast<double>(N)) * H.h0 + H.h1;
    if (!law.in_domain(h[1]) || !law.in_domain(h[N]))
        throw std::domain_error("tilted_joint_pmf: tilt out of domain");
    return h;
}

} // namespace

JointWindow default_joint_window(const WalkLaw& law, std::int64_t N, TiltPair H, double num_sd) {
    const auto h = step_tilts(law, N, H);
    double ev = 0.0, ew = 0.0, var_v = 0.0, var_w = 0.0;
    double v_min = 0.0, v_max = 0.0, w_min = 0.0, w_max = 0.0;
    for (std::int64_t i = 1; i <= N; ++i) {
        const double m1 = law.log_mgf_d1(h[i]);
        const double m2 = law.log_mgf_d2(h[i]);
        const double coef = static_cast<double>(N - i);
        ev += m1;
        ew += coef * m1;
        var_v += m2;
        var_w += coef * coef * m2;
        v_min = std::min(v_min, ev);
        v_max = std::max(v_max, ev);
        w_min = std::min(w_min, ew);
        w_max = std::max(w_max, ew);
    }
    const double sd_v = std::sqrt(var_v), sd_w = std::sqrt(var_w);
    JointWindow win;
    win.s_lo = static_cast<std::int64_t>(std::floor(w_min - num_sd * sd_w)) - 8;
    win.s_hi = static_cast<std::int64_t>(std::ceil(w_max + num_sd * sd_w)) + 8;
    win.v_lo = static_cast<std::int64_t>(std::floor(v_min - num_sd * sd_v)) - 8;
    win.v_hi = static_cast<std::int64_t>(std::ceil(v_max + num_sd * sd_v)) + 8;
    return win;
}

TiltedJointTable tilted_joint_pmf(const WalkLaw& law, std::int64_t N, TiltPair H, JointWindow win) {
    if (N < 1) throw std::invalid_argument("tilted_joint_pmf: N >= 1 required");
    if (win.s_lo > 0 || win.s_hi < 0 || win.v_lo > 0 || win.v_hi < 0)
        throw std::invalid_argument("tilted_joint_pmf: window must contain the origin");
    const auto h = step_tilts(law, N, H);

    const std::int64_t sW = win.s_hi - win.s_lo + 1;
    const std::int64_t vW = win.v_hi - win.v_lo + 1;
    const std::size_t sWu = static_cast<std::size_t>(sW);
    const std::size_t layer_size = static_cast<std::size_t>(vW) * sWu;

    std::vector<double> cur(layer_size, 0.0), next(layer_size, 0.0);
    std::vector<double> t(sWu), t2(sWu), tmp(sWu);
    auto row = [&](std::vector<double>& layer, std::int64_t x) {
        return layer.data() + static_cast<std::size_t>(x - win.v_lo) * sWu;
    };
    row(cur, 0)[-win.s_lo] = 1.0;

    for (std::int64_t j = 1; j <= N; ++j) {
        const std::int64_t slope = N - j;
        const double r_up = law.ratio * std::exp(h[j]);
        const double r_dn = law.ratio * std::exp(-h[j]);
        const double inv_norm = std::exp(-law.log_mgf(h[j])) / law.c;
        const bool in_range = slope < sW;

        // ascending pass: next(x) = cur(x) + U(x), U via shifted recursion
        std::fill(t.begin(), t.end(), 0.0);
        for (std::int64_t x = win.v_lo; x <= win.v_hi; ++x) {
            kernels::add(row(next, x), row(cur, x), t.data(), sWu);
            std::fill(t2.begin(), t2.end(), 0.0);
            if (in_range)
                kernels::scale(t2.data() + slope, row(next, x), r_up, sWu - static_cast<std::size_t>(slope));
            t.swap(t2);
        }
        // descending pass adds the v<0 contributions and normalizes
        std::fill(t.begin(), t.end(), 0.0);
        for (std::int64_t x = win.v_hi; x >= win.v_lo; --x) {
            kernels::add_scale(row(next, x), row(next, x), t.data(), inv_norm, sWu);
            if (x > win.v_lo) {
                kernels::add(tmp.data(), row(cur, x), t.data(), sWu);
                std::fill(t2.begin(), t2.end(), 0.0);
                if (in_range)
                    kernels::scale(t2.data(), tmp.data() + slope, r_dn, sWu - static_cast<std::size_t>(slope));
                t.swap(t2);
            }
        }
        cur.swap(next);
    }

    TiltedJointTable out;
    out.N = N;
    out.H = H;
    out.win = win;
    out.p = std::move(cur);
    double mass = 0.0;
    for (double v : out.p) mass += v;
    out.mass = mass;
    out.truncated_mass = 1.0 - mass;
    return out;
}

double TiltedJointTable::prob(std::int64_t s, std::int64_t v) const {
    if (s < win.s_lo || s > win.s_hi || v < win.v_lo || v > win.v_hi) return 0.0;
    const std::size_t sW = static_cast<std::size_t>(win.s_hi - win.s_lo + 1);
    return p[static_cast<std::size_t>(v - win.v_lo) * sW + static_cast<std::size_t>(s - win.s_lo)];
}

std::vector<double> TiltedJointTable::v_marginal() const {
    const std::size_t sW = static_cast<std::size_t>(win.s_hi - win.s_lo + 1);
    const std::size_t vW = static_cast<std::size_t>(win.v_hi - win.v_lo + 1);
    std::vector<double> m(vW, 0.0);
    for (std::size_t iv = 0; iv < vW; ++iv) {
        double s = 0.0;
        for (std::size_t is = 0; is < sW; ++is) s += p[iv * sW + is];
        m[iv] = s;
    }
    return m;
}

std::array<double, 2> TiltedJointTable::mean() const {
    const std::size_t sW = static_cast<std::size_t>(win.s_hi - win.s_lo + 1);
    const std::size_t vW = static_cast<std::size_t>(win.v_hi - win.v_lo + 1);
    double ms = 0.0, mv = 0.0, tot = 0.0;
    for (std::size_t iv = 0; iv < vW; ++iv) {
        for (std::size_t is = 0; is < sW; ++is) {
            const double w = p[iv * sW + is];
            if (w == 0.0) continue;
            tot += w;
            ms += w * static_cast<double>(win.s_lo + static_cast<std::int64_t>(is));
            mv += w * static_cast<double>(win.v_lo + static_cast<std::int64_t>(iv));
        }
    }
    return {ms / tot, mv / tot};
}

} // namespace ipdsaw

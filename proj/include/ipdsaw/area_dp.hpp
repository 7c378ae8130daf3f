// Exact dynamic programming over the auxiliary walk with joint
// (endpoint, geometric-area) constraints: return/excursion probabilities,
// excess partition functions, discounted-area expectations, tilted joint
// laws, and exact backward sampling of polymer configurations.
//
// Layer state D_i(x, a) = total walk weight of i-step prefixes ending at
// position x with accumulated area sum_{j<=i}|V_j| = a. Layers are stored
// x-major (contiguous over a), so the geometric-kernel prefix recursions
// become whole-row vector operations: O(n k x_cap) total instead of the
// naive O(n k x_cap^2).
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ipdsaw/core.hpp"
#include "ipdsaw/law.hpp"
#include "ipdsaw/rng.hpp"

namespace ipdsaw {

struct AreaTableOptions {
    bool positive = false;  // restrict interior positions to V_i >= 1
    std::int64_t x_cap = -1;  // -1: default min(k_max, 4 sqrt(k) log(k) + 64)
};

std::int64_t default_x_cap(std::int64_t k_max);
// Tighter beta-aware cap with tail weight below ~e^{-tail_log}; used by the
// large-L sweeps and the sampler.
std::int64_t tail_aware_x_cap(const WalkLaw& law, std::int64_t n_max, std::int64_t k_max, double tail_log = 138.0);

// Per-n rows log P_beta(V_{n,k}) (or log P_beta(V+_{n,k}) with the positivity
// flag), n = 1..n_max, k = 0..k_max. Exact up to the reported x_cap truncation.
class ReturnTable {
  public:
    static ReturnTable build(const WalkLaw& law, std::int64_t n_max, std::int64_t k_max, AreaTableOptions opts = {});

    // log P(V_n = 0, A_n = k) restricted as per flags; -inf when the set is empty.
    double log_prob(std::int64_t n, std::int64_t k) const;
    double prob(std::int64_t n, std::int64_t k) const;

    std::int64_t n_max() const { return n_max_; }
    std::int64_t k_max() const { return k_max_; }
    std::int64_t x_cap() const { return x_cap_; }
    bool positive() const { return positive_; }
    double beta() const { return beta_; }
    // Reported bound on the mass discarded by the position cap:
    // n_max * c_beta * exp(-beta x_cap / 4), zero when x_cap >= k_max.
    double truncation_bound() const;

    // Raw row access for serialization (cache files).
    const std::vector<double>& rows() const { return log_rows_; }
    static ReturnTable from_rows(double beta, std::int64_t n_max, std::int64_t k_max, std::int64_t x_cap,
                                 bool positive, std::vector<double> rows);
    // Cap actually used by build() for a requested x_cap (-1 = default).
    static std::int64_t effective_x_cap(std::int64_t requested, std::int64_t k_max);

  private:
    double beta_ = 0.0;
    std::int64_t n_max_ = 0, k_max_ = 0, x_cap_ = 0;
    bool positive_ = false;
    std::vector<double> log_rows_;  // [(n-1)*(k_max+1) + k]
};

double prob_area_return(const ReturnTable& unrestricted, std::int64_t n, std::int64_t k);
double prob_area_excursion(const ReturnTable& positive, std::int64_t n, std::int64_t k);

// P(V_i > 0 for 0 < i < n | A_n = k, V_n = 0) = P(V+_{n,k}) / P(V_{n,k}).
// Throws when the conditioning event has zero probability.
double conditional_positive_prob(const ReturnTable& unrestricted, const ReturnTable& positive,
                                 std::int64_t n, std::int64_t k);

// log Z~^m_{L} = log sum_{N=1..L} Gamma^m(beta)^N P_beta(V_{N+1, L-N});
// table must cover n >= L+1, k >= L-1.
double excess_log_partition(const ReturnTable& unrestricted, Model m, std::int64_t L);
// One-bead variant: log of 2 sum_N Gamma^N P_beta(V+_{N+1, L-N}).
double one_bead_log_partition(const ReturnTable& positive, Model m, std::int64_t L);

// Convenience: builds a table sized for a single L.
double excess_log_partition(const WalkLaw& law, Model m, std::int64_t L);
double one_bead_log_partition(const WalkLaw& law, Model m, std::int64_t L);

// Full per-layer history of the area DP for one (n, k): exact backward
// sampling of the walk bridge conditioned on {V_n = 0, A_n = k}.
class PathTable {
  public:
    static PathTable build(const WalkLaw& law, std::int64_t n_steps, std::int64_t area_total,
                           std::int64_t x_cap = -1);

    // Draws V_1..V_{n-1} (V_0 = V_n = 0) from the conditioned law. Throws when
    // the conditioning event has zero probability.
    std::vector<std::int64_t> sample_bridge(CounterRng& rng) const;

    double log_prob_return() const;  // log P(V_n = 0, A_n = k)
    // Worst |sum of per-step conditional probabilities - 1| seen by the last
    // sample_bridge call on this thread-unsafe scratch-free table.
    double last_step_normalization_error() const { return last_norm_err_; }

    std::int64_t n_steps() const { return n_; }
    std::int64_t area_total() const { return k_; }

  private:
    WalkLaw law_{1.0};
    std::int64_t n_ = 0, k_ = 0, x_cap_ = 0;
    std::int64_t width_ = 0;
    std::vector<std::vector<double>> layers_;  // [i][(x + x_cap)*(k+1) + a]
    std::vector<double> layer_log_scale_;
    mutable double last_norm_err_ = 0.0;
};

// Exact draw from the polymer law P^m_{L,beta}: sample the horizontal
// extension N with weight Gamma^N P(V_{N+1,L-N}), then backward-sample the
// conditioned walk and map through T_N. Deterministic given the seed.
StretchConfig sample_polymer(const WalkLaw& law, Model m, std::int64_t L, std::uint64_t seed);

inline constexpr std::int64_t kSamplingLengthCeiling = 2000;

// Batched sampler reusing the N-weight table and per-N path tables.
class PolymerSampler {
  public:
    PolymerSampler(const WalkLaw& law, Model m, std::int64_t L);
    PolymerSampler(const WalkLaw& law, Model m, std::int64_t L, ReturnTable table);

    // Draw `count` configurations; draw i uses RNG stream (seed, i).
    std::vector<StretchConfig> draw(std::int64_t count, std::uint64_t seed) const;
    // Exact weights of the horizontal extension N = 1..L (normalized).
    std::vector<double> extension_weights() const;

  private:
    WalkLaw law_;
    Model m_;
    std::int64_t L_;
    ReturnTable table_;
    std::vector<double> weights_;  // P(N_L = N), index N-1
};

// E_{beta,x0}(e^{-delta A_n}) with positions truncated at |x| <= x_cap.
struct DiscountedArea {
    double value;
    double truncation_bound;
};
DiscountedArea discounted_area_expectation(const WalkLaw& law, double delta, std::int64_t n,
                                           std::int64_t x0, std::int64_t x_cap);
// Whole profile over x0 in [-x_cap, x_cap] from one DP sweep.
std::vector<double> discounted_area_profile(const WalkLaw& law, double delta, std::int64_t n, std::int64_t x_cap);

// Joint law of (S_N, V_N) with S_N = sum_{i<N} V_i = N Y_N under the
// H-tilted measure with step tilts h_N^i = (1 - i/N) h0 + h1.
struct TiltPair {
    double h0 = 0.0, h1 = 0.0;
};

struct JointWindow {
    std::int64_t s_lo, s_hi, v_lo, v_hi;
};

class TiltedJointTable {
  public:
    std::int64_t N;
    TiltPair H;
    JointWindow win;
    double mass = 0.0;            // total probability captured in the window
    double truncated_mass = 0.0;  // 1 - mass

    double prob(std::int64_t s, std::int64_t v) const;
    // Marginal distribution of V_N within the window.
    std::vector<double> v_marginal() const;
    std::array<double, 2> mean() const;  // (E[S_N], E[V_N])

    std::vector<double> p;  // [(s - s_lo)*vW + (v - v_lo)]
};

TiltedJointTable tilted_joint_pmf(const WalkLaw& law, std::int64_t N, TiltPair H, JointWindow win);
JointWindow default_joint_window(const WalkLaw& law, std::int64_t N, TiltPair H, double num_sd = 6.0);

// Per-step tilted increment pmf p_i(v); exposed for the normalization tests.
double tilted_increment_pmf(const WalkLaw& law, double h, std::int64_t v);

} // namespace ipdsaw

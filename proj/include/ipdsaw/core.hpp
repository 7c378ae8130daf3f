// Polymer configurations in lattice-path and stretch coordinates, the
// Hamiltonian in both forms, bead decomposition, envelope/midline processes,
// and the small-L enumeration oracle.
#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "ipdsaw/law.hpp"

namespace ipdsaw {

enum class Step : std::uint8_t { north, south, east };

// Self-avoiding path of unit north/south/east steps ending with an east step.
struct LatticePath {
    std::vector<Step> steps;

    std::int64_t length() const { return static_cast<std::int64_t>(steps.size()); }
    std::vector<std::pair<std::int64_t, std::int64_t>> vertices() const;
    bool valid() const;
};

// Signed vertical stretch lengths l_1..l_N; total length L = sum|l_i| + N.
struct StretchConfig {
    std::vector<std::int64_t> stretches;

    std::int64_t horizontal_steps() const { return static_cast<std::int64_t>(stretches.size()); }
    std::int64_t total_length() const;
    bool valid() const { return !stretches.empty(); }
};

// min(|x|,|y|) when xy < 0, else 0.
std::int64_t wedge(std::int64_t x, std::int64_t y);
// Same quantity via (|x|+|y|-|x+y|)/2.
std::int64_t wedge_by_identity(std::int64_t x, std::int64_t y);

// Number of non-consecutive vertex pairs at lattice distance 1.
std::int64_t self_touchings(const LatticePath& path);

// sum_{n<N} l_n wedge l_{n+1}; energy is beta times this.
std::int64_t hamiltonian_stretches(const StretchConfig& cfg);

LatticePath stretches_to_path(const StretchConfig& cfg);
StretchConfig path_to_stretches(const LatticePath& path);

// Bead structure of a configuration: cut indices x_0=0 < x_1 < .. < x_n = N,
// cumulated lengths u_j = |l_1|+..+|l_j|+j, monomer intervals I_j, largest bead.
struct BeadDecomposition {
    std::vector<std::int64_t> cumulated;                              // u_1..u_N
    std::vector<std::int64_t> cuts;                                   // x_1..x_n
    std::vector<std::pair<std::int64_t, std::int64_t>> intervals;     // I_j as [lo,hi], 1-based inclusive
    std::size_t j_max = 0;                                            // 0-based index of the largest bead

    std::int64_t bead_count() const { return static_cast<std::int64_t>(cuts.size()); }
    std::int64_t largest_bead_size() const {
        const auto& iv = intervals[j_max];
        return iv.second - iv.first + 1;
    }
};

BeadDecomposition bead_decomposition(const StretchConfig& cfg);

// Upper/lower envelopes, midline (stored as twice its half-integer values)
// and the auxiliary walk V_l = T_N^{-1}(l), all of length N+2.
struct EnvelopeSet {
    std::vector<std::int64_t> upper;      // E+_0..E+_{N+1}
    std::vector<std::int64_t> lower;      // E-_0..E-_{N+1}
    std::vector<std::int64_t> mid_twice;  // 2*M_0..2*M_{N+1}
    std::vector<std::int64_t> walk;       // V_0..V_{N+1}

    // Time-space rescaled cadlag evaluation: seq_{floor(t(N+1))}/(N+1), t in [0,1].
    static double rescaled(const std::vector<std::int64_t>& seq, double t);
    static double rescaled_half(const std::vector<std::int64_t>& twice_seq, double t);
};

EnvelopeSet envelopes(const StretchConfig& cfg);

inline constexpr std::int64_t kEnumMax = 14;

// Visits every element of Omega_L exactly once, in a fixed deterministic order.
// Throws std::invalid_argument for L < 1 or L > kEnumMax.
void enumerate_configs(std::int64_t L, const std::function<void(const StretchConfig&)>& visit);
std::vector<StretchConfig> all_configs(std::int64_t L);

// P^m_L weight of one configuration: 1 for uniform, (1/3)^N (1/2)^{L-N} otherwise.
double config_weight(const StretchConfig& cfg, Model m);

// Partition function by exhaustive enumeration (L <= kEnumMax).
double brute_force_Z(std::int64_t L, double beta, Model m);
// Restricted to one-bead configurations.
double brute_force_Z_one_bead(std::int64_t L, double beta, Model m);
// Restricted to configurations whose first bead ends at monomer Lprime.
double brute_force_Z_first_bead(std::int64_t L, double beta, Model m, std::int64_t Lprime);

// Checks (1/2) Z^o_{L'} Z_{L-L'} <= Z_L(u_{x1}=L') <= Z^o_{L'} Z_{L-L'}
// for every L' in {1..L}, all sides by enumeration.
bool one_bead_Z_inequality_check(std::int64_t L, double beta, Model m);

} // namespace ipdsaw

#include "ipdsaw/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace ipdsaw {

std::vector<std::pair<std::int64_t, std::int64_t>> LatticePath::vertices() const {
    std::vector<std::pair<std::int64_t, std::int64_t>> v;
    v.reserve(steps.size() + 1);
    std::int64_t x = 0, y = 0;
    v.emplace_back(x, y);
    for (Step s : steps) {
        switch (s) {
            case Step::north: ++y; break;
            case Step::south: --y; break;
            case Step::east: ++x; break;
        }
        v.emplace_back(x, y);
    }
    return v;
}

bool LatticePath::valid() const {
    if (steps.empty() || steps.back() != Step::east) return false;
    auto v = vertices();
    std::map<std::pair<std::int64_t, std::int64_t>, int> seen;
    for (const auto& p : v) {
        if (p.first < 0) return false;
        if (++seen[p] > 1) return false;
    }
    return true;
}

std::int64_t StretchConfig::total_length() const {
    std::int64_t L = horizontal_steps();
    for (std::int64_t l : stretches) L += std::llabs(l);
    return L;
}

std::int64_t wedge(std::int64_t x, std::int64_t y) {
    if ((x > 0 && y < 0) || (x < 0 && y > 0)) return std::min(std::llabs(x), std::llabs(y));
    return 0;
}

std::int64_t wedge_by_identity(std::int64_t x, std::int64_t y) {
    return (std::llabs(x) + std::llabs(y) - std::llabs(x + y)) / 2;
}

std::int64_t self_touchings(const LatticePath& path) {
    const auto v = path.vertices();
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::int64_t>> at;
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(v.size()); ++i) at[v[i]].push_back(i);

    const std::pair<std::int64_t, std::int64_t> moves[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    std::int64_t count = 0;
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(v.size()); ++i) {
        for (const auto& mv : moves) {
            auto it = at.find({v[i].first + mv.first, v[i].second + mv.second});
            if (it == at.end()) continue;
            for (std::int64_t j : it->second)
                if (j > i + 1) ++count;
        }
    }
    return count;
}

std::int64_t hamiltonian_stretches(const StretchConfig& cfg) {
    std::int64_t h = 0;
    for (std::size_t n = 0; n + 1 < cfg.stretches.size(); ++n)
        h += wedge(cfg.stretches[n], cfg.stretches[n + 1]);
    return h;
}

LatticePath stretches_to_path(const StretchConfig& cfg) {
    LatticePath p;
    for (std::int64_t l : cfg.stretches) {
        const Step dir = l > 0 ? Step::north : Step::south;
        for (std::int64_t i = 0; i < std::llabs(l); ++i) p.steps.push_back(dir);
        p.steps.push_back(Step::east);
    }
    return p;
}

StretchConfig path_to_stretches(const LatticePath& path) {
    StretchConfig cfg;
    std::int64_t run = 0;
    for (Step s : path.steps) {
        if (s == Step::east) {
            cfg.stretches.push_back(run);
            run = 0;
        } else {
            run += (s == Step::north) ? 1 : -1;
        }
    }
    return cfg;
}

BeadDecomposition bead_decomposition(const StretchConfig& cfg) {
    const auto& l = cfg.stretches;
    const std::int64_t N = cfg.horizontal_steps();
    BeadDecomposition d;
    d.cumulated.resize(N);
    std::int64_t acc = 0;
    for (std::int64_t j = 0; j < N; ++j) {
        acc += std::llabs(l[j]);
        d.cumulated[j] = acc + j + 1;
    }
    auto next_stretch = [&](std::int64_t i) { return i < N ? l[i] : 0; }; // l_{N+1} = 0 convention
    std::int64_t prev = 0;
    while (prev < N) {
        std::int64_t i = prev + 1;
        while (wedge(next_stretch(i - 1), next_stretch(i)) != 0) ++i;
        d.cuts.push_back(i);
        prev = i;
    }
    std::int64_t lo = 1;
    for (std::int64_t x : d.cuts) {
        d.intervals.emplace_back(lo, d.cumulated[x - 1]);
        lo = d.cumulated[x - 1] + 1;
    }
    std::int64_t best = -1;
    for (std::size_t j = 0; j < d.intervals.size(); ++j) {
        const std::int64_t sz = d.intervals[j].second - d.intervals[j].first + 1;
        if (sz > best) { best = sz; d.j_max = j; }
    }
    return d;
}

EnvelopeSet envelopes(const StretchConfig& cfg) {
    const auto& l = cfg.stretches;
    const std::int64_t N = cfg.horizontal_steps();
    EnvelopeSet e;
    e.upper.assign(N + 2, 0);
    e.lower.assign(N + 2, 0);
    e.mid_twice.assign(N + 2, 0);
    e.walk.assign(N + 2, 0);
    std::int64_t partial = 0; // l_1 + .. + l_{i-1}
    for (std::int64_t i = 1; i <= N; ++i) {
        const std::int64_t li = l[i - 1];
        e.upper[i] = std::max(partial, partial + li);
        e.lower[i] = std::min(partial, partial + li);
        e.mid_twice[i] = 2 * partial + li;
        e.walk[i] = (i % 2 == 1) ? li : -li;
        partial += li;
    }
    e.upper[N + 1] = partial;
    e.lower[N + 1] = partial;
    e.mid_twice[N + 1] = 2 * partial;
    e.walk[N + 1] = 0;
    return e;
}

double EnvelopeSet::rescaled(const std::vector<std::int64_t>& seq, double t) {
    const std::int64_t n1 = static_cast<std::int64_t>(seq.size()) - 1; // N+1
    std::int64_t idx = static_cast<std::int64_t>(std::floor(t * static_cast<double>(n1)));
    idx = std::clamp<std::int64_t>(idx, 0, n1);
    return static_cast<double>(seq[idx]) / static_cast<double>(n1);
}

double EnvelopeSet::rescaled_half(const std::vector<std::int64_t>& twice_seq, double t) {
    return 0.5 * rescaled(twice_seq, t);
}

namespace {

void enumerate_rec(std::vector<std::int64_t>& cur, std::int64_t slots_left, std::int64_t budget,
                   const std::function<void(const StretchConfig&)>& visit) {
    if (slots_left == 0) {
        if (budget == 0) {
            StretchConfig cfg;
            cfg.stretches = cur;
            visit(cfg);
        }
        return;
    }
    for (std::int64_t mag = 0; mag <= budget; ++mag) {
        if (mag == 0) {
            cur.push_back(0);
            enumerate_rec(cur, slots_left - 1, budget, visit);
            cur.pop_back();
        } else {
            for (int sgn : {+1, -1}) {
                cur.push_back(sgn * mag);
                enumerate_rec(cur, slots_left - 1, budget - mag, visit);
                cur.pop_back();
            }
        }
    }
}

} // namespace

void enumerate_configs(std::int64_t L, const std::function<void(const StretchConfig&)>& visit) {
    if (L < 1) throw std::invalid_argument("enumerate_configs: L must be >= 1");
    if (L > kEnumMax) throw std::invalid_argument("enumerate_configs: L exceeds the enumeration cap");
    std::vector<std::int64_t> cur;
    for (std::int64_t N = 1; N <= L; ++N) enumerate_rec(cur, N, L - N, visit);
}

std::vector<StretchConfig> all_configs(std::int64_t L) {
    std::vector<StretchConfig> out;
    enumerate_configs(L, [&](const StretchConfig& c) { out.push_back(c); });
    return out;
}

double config_weight(const StretchConfig& cfg, Model m) {
    if (m == Model::uniform) return 1.0;
    const double N = static_cast<double>(cfg.horizontal_steps());
    const double L = static_cast<double>(cfg.total_length());
    return std::exp(-N * std::log(3.0) - (L - N) * std::log(2.0));
}

double brute_force_Z(std::int64_t L, double beta, Model m) {
    double z = 0.0;
    enumerate_configs(L, [&](const StretchConfig& c) {
        z += config_weight(c, m) * std::exp(beta * static_cast<double>(hamiltonian_stretches(c)));
    });
    return z;
}

double brute_force_Z_one_bead(std::int64_t L, double beta, Model m) {
    double z = 0.0;
    enumerate_configs(L, [&](const StretchConfig& c) {
        if (bead_decomposition(c).bead_count() != 1) return;
        z += config_weight(c, m) * std::exp(beta * static_cast<double>(hamiltonian_stretches(c)));
    });
    return z;
}

double brute_force_Z_first_bead(std::int64_t L, double beta, Model m, std::int64_t Lprime) {
    double z = 0.0;
    enumerate_configs(L, [&](const StretchConfig& c) {
        const auto d = bead_decomposition(c);
        if (d.intervals.front().second != Lprime) return;
        z += config_weight(c, m) * std::exp(beta * static_cast<double>(hamiltonian_stretches(c)));
    });
    return z;
}

bool one_bead_Z_inequality_check(std::int64_t L, double beta, Model m) {
    for (std::int64_t Lp = 1; Lp <= L; ++Lp) {
        const double mid = brute_force_Z_first_bead(L, beta, m, Lp);
        const double zo = brute_force_Z_one_bead(Lp, beta, m);
        const double rest = Lp == L ? 1.0 : brute_force_Z(L - Lp, beta, m);
        const double hi = zo * rest;
        const double tolerance = 1e-12 * std::max(1.0, hi);
        if (mid > hi + tolerance) return false;
        if (mid < 0.5 * hi - tolerance) return false;
    }
    return true;
}

} // namespace ipdsaw

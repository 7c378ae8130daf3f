// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Run with --only N[,M,...] to restrict to specific
// criteria during investigation.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ipdsaw/area_dp.hpp"
#include "ipdsaw/collapse.hpp"
#include "ipdsaw/core.hpp"
#include "ipdsaw/experiments.hpp"
#include "ipdsaw/io.hpp"
#include "ipdsaw/law.hpp"
#include "ipdsaw/spectral.hpp"
#include "ipdsaw/tilt.hpp"
#include "ipdsaw/util.hpp"

using namespace ipdsaw;
namespace fs = std::filesystem;

namespace {

// Pilot-frozen constant for the bead-window exceedance statistic (beta = 2,
// uniform model, L = 1000, 500 draws); the theorem asserts existence of some
// c, the pilot fixes the value used by criterion 10b.
constexpr double kBeadWindowC = experiments::kDefaultBeadWindowC;

std::ostringstream g_detail;

bool criterion_1() {
    // representation identity at full enumeration scale
    double worst = 0.0;
    for (double beta : {0.5, 1.0, 2.0}) {
        const WalkLaw law(beta);
        const auto table = ReturnTable::build(law, 11, 10, {false, -1});
        for (Model m : {Model::uniform, Model::nonuniform}) {
            for (std::int64_t L = 1; L <= 10; ++L) {
                const double lhs = std::log(law.c) + log_phi_total(beta, m, L) + excess_log_partition(table, m, L);
                const double rhs = std::log(brute_force_Z(L, beta, m));
                worst = std::max(worst, std::abs(std::expm1(lhs - rhs)));
            }
        }
    }
    g_detail << "max relative error " << worst;
    return worst <= 1e-10;
}

bool criterion_2() {
    std::int64_t mismatches = 0, configs = 0;
    for (std::int64_t L = 1; L <= 8; ++L) {
        enumerate_configs(L, [&](const StretchConfig& cfg) {
            ++configs;
            if (self_touchings(stretches_to_path(cfg)) != hamiltonian_stretches(cfg)) ++mismatches;
        });
    }
    g_detail << configs << " configurations, " << mismatches << " mismatches";
    return mismatches == 0;
}

bool criterion_3() {
    auto cubic_root = [](auto poly) {
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (poly(mid) < 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double bu = beta_critical(Model::uniform, 1e-12);
    const double bnu = beta_critical(Model::nonuniform, 1e-12);
    const double gu = std::abs(gamma_factor(bu, Model::uniform) - 1.0);
    const double gnu = std::abs(gamma_factor(bnu, Model::nonuniform) - 1.0);
    const double xu = cubic_root([](double x) { return x * x * x + x * x + x - 1.0; });
    const double xnu = cubic_root([](double x) { return 2.0 * x * x * x + 2.0 * x * x + 3.0 * x - 3.0; });
    const double du = std::abs(bu + 2.0 * std::log(xu));
    const double dnu = std::abs(bnu + 2.0 * std::log(xnu));
    g_detail << "beta_c^u=" << bu << " |Gamma-1|=" << gu << " cubic gap " << du << "; beta_c^nu=" << bnu
             << " |Gamma-1|=" << gnu << " cubic gap " << dnu;
    return gu <= 1e-10 && gnu <= 1e-10 && du <= 1e-9 && dnu <= 1e-9;
}

bool criterion_4() {
    const double beta = beta_critical(Model::uniform, 1e-13) - 0.2;
    const WalkLaw law(beta);
    const auto rep = excess_free_energy(law, Model::uniform, 1e-7);
    std::vector<std::int64_t> Ls;
    for (std::int64_t L = 50; L <= 400; ++L) Ls.push_back(L);
    const auto est = direct_free_energy_estimate(law, Model::uniform, Ls);
    bool dominated = true, decreasing = true;
    double prev_gap = 1e300;
    for (double e : est) {
        dominated = dominated && rep.f_excess >= e - 1e-9;
        const double gap = rep.f_excess - e;
        decreasing = decreasing && gap < prev_gap;
        prev_gap = gap;
    }
    g_detail << "f~=" << rep.f_excess << " residual " << rep.residual << ", dominated over all L in 50..400 "
             << dominated << ", gap decreasing at every L " << decreasing;
    return rep.residual <= 1e-6 && dominated && decreasing;
}

bool criterion_5() {
    const double airy = airy_prime_first_zero(1e-10);
    const double airy_gap = std::abs(airy - (-1.0187929716));
    const auto cc = critical_constants(Model::uniform);
    const auto rows = exponent_scan(Model::uniform, {0.01, 0.005, 0.002}, 1e-10);
    bool slopes_ok = true;
    for (std::size_t i = 1; i < rows.size(); ++i)
        slopes_ok = slopes_ok && rows[i].slope >= 1.35 && rows[i].slope <= 1.65;
    const double ratio = rows.back().ratio;
    const double amp_gap = std::abs(ratio - cc.amplitude) / cc.amplitude;
    g_detail << "slopes " << rows[1].slope << ", " << rows[2].slope << "; ratio@0.002 " << ratio << " vs amplitude "
             << cc.amplitude << " (gap " << amp_gap << "); |airy zero error| " << airy_gap;
    return slopes_ok && amp_gap <= 0.20 && airy_gap <= 1e-8;
}

bool criterion_6() {
    const WalkLaw law(beta_critical(Model::uniform, 1e-13));
    const double h0 = h_beta(law, 0.0, 1e-9);
    bool monotone = true, convex = true;
    std::vector<double> vals;
    for (int i = 0; i <= 20; ++i) vals.push_back(h_beta(law, 0.05 * i, 1e-8));
    for (std::size_t i = 1; i < vals.size(); ++i) monotone = monotone && vals[i] <= vals[i - 1] + 1e-10;
    for (std::size_t i = 1; i + 1 < vals.size(); ++i)
        convex = convex && vals[i - 1] + vals[i + 1] - 2.0 * vals[i] >= -1e-7;

    bool dominates = true;
    for (std::int64_t N : {10, 20, 40})
        dominates = dominates && h_beta(law, 0.1, 1e-9) >= h_beta_finite(law, 0.1, N, 256) - 1e-12;

    const auto scan = critical_scaling_scan(law, {0.02, 0.01, 0.005, 0.002, 0.001}, 1e-8);
    const double r3 = scan[scan.size() - 3].ratio, r2 = scan[scan.size() - 2].ratio, r1 = scan.back().ratio;
    const double cauchy = std::max({std::abs(r3 - r2), std::abs(r2 - r1), std::abs(r3 - r1)}) / std::abs(r1);
    const double d_u = critical_constants(Model::uniform).d_m;
    const double d_gap = std::abs(r1 - (-d_u)) / d_u;
    g_detail << "h(0)=" << h0 << ", monotone " << monotone << ", convex " << convex << ", sup-dominates " << dominates
             << ", Cauchy " << cauchy << ", ratio@1e-3 " << r1 << " vs -d_u " << -d_u << " (gap " << d_gap << ")";
    return std::abs(h0) <= 1e-8 && monotone && convex && dominates && cauchy <= 0.10 && d_gap <= 0.15;
}

bool criterion_7() {
    const WalkLaw law(1.0);
    double worst_res = 0.0, worst_sym = 0.0;
    for (double q : {0.1, 0.31622776601683794, 1.0, 3.1622776601683795, 10.0}) {
        const auto p = solve_tilt(law, q);
        worst_res = std::max(worst_res, p.residual);
        worst_sym = std::max(worst_sym, std::abs(p.h0 + 2.0 * p.h1));
    }
    bool bounded = true;
    for (double q : {0.5, 1.0, 2.0}) {
        const auto cont = solve_tilt(law, q);
        double lo = 1e300, hi = 0.0;
        for (std::int64_t n : {16, 32, 64, 128, 256}) {
            const auto fin = solve_tilt_finite(law, n, q);
            const double s =
                static_cast<double>(n) * std::max(std::abs(fin.h0 - cont.h0), std::abs(fin.h1 - cont.h1));
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        bounded = bounded && hi <= 10.0 * std::max(lo, 1e-6) + 1.0;
    }
    const double h = 0.2;
    const double conj = std::abs(legendre_Lstar(law, law.log_mgf_d1(h)) - (h * law.log_mgf_d1(h) - law.log_mgf(h)));
    g_detail << "max residual " << worst_res << ", max |h0+2h1| " << worst_sym << ", n-scaled distance bounded "
             << bounded << ", conjugacy " << conj;
    return worst_res <= 1e-10 && worst_sym <= 1e-9 && bounded && conj <= 1e-10;
}

bool criterion_8() {
    const auto rows = local_clt_check(WalkLaw(1.0), 1.0, {20, 40, 80});
    bool in_band = true, improving = true;
    double prev = 1e300;
    g_detail << "ratios";
    for (const auto& r : rows) {
        in_band = in_band && r.ratio > 1.0 / 3.0 && r.ratio < 3.0;
        improving = improving && std::abs(r.ratio - 1.0) < prev;
        prev = std::abs(r.ratio - 1.0);
        g_detail << " N=" << r.N << ":" << r.ratio;
    }
    return in_band && improving;
}

bool criterion_9() {
    const WalkLaw law(1.0);
    std::int64_t violations = 0;
    for (double delta : {0.05, 0.2})
        for (std::int64_t n = 1; n <= 30; ++n) {
            const auto prof = discounted_area_profile(law, delta, n, 160);
            for (std::int64_t x = 0; x < 20; ++x)
                if (prof[160 + x + 1] > prof[160 + x]) ++violations;
        }
    g_detail << violations << " violations over x in 0..20, n <= 30, delta in {0.05, 0.2}";
    return violations == 0;
}

struct GeometryRun {
    double mean_n_scaled = 0.0, se_n_scaled = 0.0;
    double mean_sup_v = 0.0, mean_sup_mid = 0.0;
    double exceed_freq = 0.0;
};

GeometryRun geometry_run(const WalkLaw& law, const WulffShape& shape, std::int64_t L, std::int64_t samples,
                         std::uint64_t seed) {
    PolymerSampler sampler(law, Model::uniform, L);
    const auto draws = sampler.draw(samples, seed);
    GeometryRun out;
    std::vector<double> n_scaled;
    const double window = kBeadWindowC * std::pow(std::log(static_cast<double>(L)), 4.0);
    for (const auto& d : draws) {
        const auto rec = experiments::analyze_draw(d, &shape);
        n_scaled.push_back(static_cast<double>(rec.N) / std::sqrt(static_cast<double>(L)));
        out.mean_sup_v += rec.sup_v_gamma;
        out.mean_sup_mid += rec.sup_mid;
        if (static_cast<double>(rec.largest_bead) >= static_cast<double>(L) - window) out.exceed_freq += 1.0;
    }
    const double inv = 1.0 / static_cast<double>(samples);
    out.mean_sup_v *= inv;
    out.mean_sup_mid *= inv;
    out.exceed_freq *= inv;
    for (double x : n_scaled) out.mean_n_scaled += x;
    out.mean_n_scaled *= inv;
    double var = 0.0;
    for (double x : n_scaled) var += (x - out.mean_n_scaled) * (x - out.mean_n_scaled);
    var /= static_cast<double>(samples - 1);
    out.se_n_scaled = std::sqrt(var * inv);
    return out;
}

bool criterion_10() {
    const WalkLaw law(2.0);
    const auto shape = wulff_shape(law, Model::uniform, 1025);

    // (d) shape checks first
    double sym = 0.0;
    for (std::size_t i = 0; i < shape.s.size(); ++i)
        sym = std::max(sym, std::abs(shape.gamma[i] - shape.gamma[shape.s.size() - 1 - i]));
    double simpson = 0.0;
    const double h = shape.s[1] - shape.s[0];
    for (std::size_t i = 0; i + 2 < shape.s.size(); i += 2)
        simpson += (h / 3.0) * (shape.gamma[i] + 4.0 * shape.gamma[i + 1] + shape.gamma[i + 2]);
    const double area_gap = std::abs(simpson - 1.0 / (shape.a_star * shape.a_star));
    const bool shape_ok = std::abs(shape.gamma.back()) <= 1e-10 && sym <= 1e-10 && area_gap <= 1e-8;

    const auto small = geometry_run(law, shape, 250, 500, 424242);
    const auto big = geometry_run(law, shape, 1000, 500, 424242);

    const double dev = std::abs(big.mean_n_scaled - shape.a_star);
    const bool extension_ok = dev <= 3.0 * big.se_n_scaled;
    const bool window_ok = big.exceed_freq >= 0.9;
    const bool shrink_ok = big.mean_sup_v < small.mean_sup_v && big.mean_sup_mid < small.mean_sup_mid;

    g_detail << "a*=" << shape.a_star << ", mean N/sqrtL @1000 = " << big.mean_n_scaled << " (se " << big.se_n_scaled
             << ", @250 " << small.mean_n_scaled << "), exceedance " << big.exceed_freq << " (c=" << kBeadWindowC
             << "), sup_v " << small.mean_sup_v << " -> " << big.mean_sup_v << ", sup_mid " << small.mean_sup_mid
             << " -> " << big.mean_sup_mid << ", shape(gamma(1)=" << shape.gamma.back() << ", sym " << sym
             << ", area gap " << area_gap << ")";
    return shape_ok && extension_ok && window_ok && shrink_ok;
}

bool criterion_11() {
    const WalkLaw law(2.0);
    const double target = -G_tilde(law, Model::uniform, a_star(law, Model::uniform));
    const auto table = ReturnTable::build(law, 1501, 1500, {true, tail_aware_x_cap(law, 1501, 1500)});
    bool improving = true;
    double prev_gap = 1e300, last_rel = 0.0;
    g_detail << "target " << target << ";";
    for (std::int64_t L : {500, 1000, 1500}) {
        const double v = -one_bead_log_partition(table, Model::uniform, L) / std::sqrt(static_cast<double>(L));
        const double gap = std::abs(v - target);
        improving = improving && gap < prev_gap;
        prev_gap = gap;
        last_rel = gap / target;
        g_detail << " L=" << L << ":" << v;
    }
    g_detail << "; final relative gap " << last_rel << ", improving " << improving;
    return last_rel <= 0.10 && improving;
}

bool criterion_12() {
    const fs::path base = fs::temp_directory_path() / "ipdsaw-acceptance-determinism";
    fs::remove_all(base);
    auto run_twice = [&](experiments::Config cfg, const std::string& tag) {
        cfg.out_dir = (base / (tag + "-a")).string();
        const auto first = experiments::run(cfg);
        cfg.out_dir = (base / (tag + "-b")).string();
        const auto second = experiments::run(cfg);
        if (first.exit_code != 0 || second.exit_code != 0) return false;
        if (first.files.size() != second.files.size()) return false;
        for (std::size_t i = 0; i < first.files.size(); ++i) {
            std::ifstream fa(first.files[i], std::ios::binary), fb(second.files[i], std::ios::binary);
            const std::string a((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
            const std::string b((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
            if (a != b || a.empty()) return false;
        }
        return true;
    };

    experiments::Config fe;
    fe.command = "free-energy";
    fe.beta_grid = {0.9, 1.4};
    fe.tol = 1e-6;

    experiments::Config sm;
    sm.command = "sample";
    sm.beta = 2.0;
    sm.L = 60;
    sm.samples = 25;
    sm.seed = 7;
    sm.has_seed = true;

    experiments::Config hb;
    hb.command = "hbeta";
    hb.beta = 1.0;
    hb.delta_grid = {0.2, 0.1};
    hb.tol = 1e-7;

    experiments::Config bd;
    bd.command = "beads";
    bd.beta = 2.0;
    bd.L = 40;
    bd.samples = 20;
    bd.seed = 3;
    bd.has_seed = true;

    const bool ok = run_twice(fe, "fe") && run_twice(sm, "sample") && run_twice(hb, "hbeta") && run_twice(bd, "beads");
    fs::remove_all(base);
    g_detail << (ok ? "all reruns bit-identical" : "byte mismatch between reruns");
    return ok;
}

const char* criterion_name(int id) {
    switch (id) {
        case 1: return "representation identity";
        case 2: return "Hamiltonian equivalence";
        case 3: return "critical point";
        case 4: return "free-energy equation";
        case 5: return "critical exponent";
        case 6: return "h_beta properties";
        case 7: return "tilt stack";
        case 8: return "local CLT";
        case 9: return "discounted-area monotonicity";
        case 10: return "collapsed geometry";
        case 11: return "one-bead partition scaling";
        case 12: return "determinism";
        default: return "?";
    }
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            std::stringstream ss(argv[++i]);
            std::string tok;
            while (std::getline(ss, tok, ',')) only.insert(std::stoi(tok));
        }
    }

    bool (*criteria[])() = {criterion_1, criterion_2, criterion_3, criterion_4,  criterion_5,  criterion_6,
                            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12};
    int failures = 0;
    for (int id = 1; id <= 12; ++id) {
        if (!only.empty() && !only.count(id)) continue;
        g_detail.str("");
        const auto start = std::chrono::steady_clock::now();
        bool pass = false;
        try {
            pass = criteria[id - 1]();
        } catch (const std::exception& e) {
            g_detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!pass) ++failures;
        std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << id << " (" << criterion_name(id)
                  << "): " << g_detail.str() << " [" << secs << "s]" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}

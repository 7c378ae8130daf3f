#include "ipdsaw/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "ipdsaw/collapse.hpp"
#include "ipdsaw/io.hpp"
#include "ipdsaw/spectral.hpp"
#include "ipdsaw/util.hpp"

namespace ipdsaw::experiments {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string model_name(Model m) { return m == Model::uniform ? "u" : "nu"; }

std::vector<double> default_eps_grid() { return {0.1, 0.05, 0.02, 0.01, 0.005, 0.002}; }
std::vector<double> default_delta_grid() { return {0.2, 0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001}; }

std::string fd(double v) { return io::format_double(v); }
std::string fi(std::int64_t v) { return std::to_string(v); }

std::filesystem::path out_file(const Config& c, const std::string& ext) {
    return std::filesystem::path(c.out_dir) / (c.command + "-" + c.hash() + ext);
}

void require_seed(const Config& c) {
    if (!c.has_seed) throw std::invalid_argument(c.command + ": --seed is mandatory for sampling commands");
}

} // namespace

nlohmann::json Config::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["model"] = model_name(model);
    j["beta"] = beta;
    j["beta_grid"] = beta_grid;
    j["L"] = L;
    j["L_list"] = L_list;
    j["samples"] = samples;
    j["seed"] = seed;
    j["has_seed"] = has_seed;
    j["out"] = out_dir;
    j["tol"] = tol;
    j["cache"] = cache_dir;
    j["q"] = q;
    j["delta_grid"] = delta_grid;
    j["eps_grid"] = eps_grid;
    j["wulff_grid"] = wulff_grid;
    j["bead_window_c"] = bead_window_c;
    return j;
}

std::string Config::hash() const { return io::hex16(io::fnv1a64(to_json().dump())); }

Config config_from_json(const nlohmann::json& j) {
    Config c;
    if (j.contains("command")) c.command = j.at("command").get<std::string>();
    if (j.contains("model")) {
        const auto m = j.at("model").get<std::string>();
        if (m == "u") c.model = Model::uniform;
        else if (m == "nu") c.model = Model::nonuniform;
        else throw std::invalid_argument("config: model must be 'u' or 'nu'");
    }
    if (j.contains("beta")) c.beta = j.at("beta").get<double>();
    if (j.contains("beta_grid")) c.beta_grid = j.at("beta_grid").get<std::vector<double>>();
    if (j.contains("L")) c.L = j.at("L").get<std::int64_t>();
    if (j.contains("L_list")) c.L_list = j.at("L_list").get<std::vector<std::int64_t>>();
    if (j.contains("samples")) c.samples = j.at("samples").get<std::int64_t>();
    if (j.contains("seed")) {
        c.seed = j.at("seed").get<std::uint64_t>();
        c.has_seed = true;
    }
    if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
    if (j.contains("tol")) c.tol = j.at("tol").get<double>();
    if (j.contains("cache")) c.cache_dir = j.at("cache").get<std::string>();
    if (j.contains("q")) c.q = j.at("q").get<double>();
    if (j.contains("delta_grid")) c.delta_grid = j.at("delta_grid").get<std::vector<double>>();
    if (j.contains("eps_grid")) c.eps_grid = j.at("eps_grid").get<std::vector<double>>();
    if (j.contains("wulff_grid")) c.wulff_grid = j.at("wulff_grid").get<std::int64_t>();
    if (j.contains("bead_window_c")) c.bead_window_c = j.at("bead_window_c").get<double>();
    if (!(c.beta > 0.0)) throw std::invalid_argument("config: beta must be > 0");
    if (c.L < 1) throw std::invalid_argument("config: L must be >= 1");
    if (c.samples < 0) throw std::invalid_argument("config: samples must be >= 0");
    if (!(c.tol > 0.0)) throw std::invalid_argument("config: tol must be > 0");
    return c;
}

std::int64_t bead_area_gap(const StretchConfig& cfg) {
    const auto env = envelopes(cfg);
    std::int64_t algebraic = 0;
    for (std::size_t i = 1; i + 1 < env.walk.size(); ++i) algebraic += env.walk[i];
    return (cfg.total_length() - cfg.horizontal_steps()) - std::llabs(algebraic);
}

double wulff_gamma_at(const WulffShape& shape, double t) {
    const double pos = std::clamp(t, 0.0, 1.0) * static_cast<double>(shape.s.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= shape.s.size()) return shape.gamma.back();
    const double frac = pos - static_cast<double>(i);
    return shape.gamma[i] * (1.0 - frac) + shape.gamma[i + 1] * frac;
}

namespace {

// sup over [0,1] of |step(t) - ref(t)| for the rescaled cadlag step process;
// per interval both endpoints are checked, plus the reference apex at 1/2.
double sup_step_vs_ref(const std::vector<double>& step_vals, const WulffShape* shape, double ref_scale,
                       bool abs_step) {
    const std::size_t n1 = step_vals.size() - 1;  // N+1 pieces
    double sup = 0.0;
    for (std::size_t i = 0; i < n1; ++i) {
        double v = step_vals[i];
        if (abs_step) v = std::abs(v);
        const double t_lo = static_cast<double>(i) / static_cast<double>(n1);
        const double t_hi = static_cast<double>(i + 1) / static_cast<double>(n1);
        double worst = 0.0;
        if (shape) {
            worst = std::max(std::abs(v - ref_scale * wulff_gamma_at(*shape, t_lo)),
                             std::abs(v - ref_scale * wulff_gamma_at(*shape, t_hi)));
            if (t_lo < 0.5 && 0.5 < t_hi) worst = std::max(worst, std::abs(v - ref_scale * wulff_gamma_at(*shape, 0.5)));
        } else {
            worst = std::abs(v);
        }
        sup = std::max(sup, worst);
    }
    // endpoint t = 1
    double v_end = step_vals[n1];
    if (abs_step) v_end = std::abs(v_end);
    const double ref_end = shape ? ref_scale * shape->gamma.back() : 0.0;
    return std::max(sup, std::abs(v_end - ref_end));
}

std::vector<double> rescale_seq(const std::vector<std::int64_t>& seq, double denom_extra = 1.0) {
    const double n1 = static_cast<double>(seq.size() - 1);
    std::vector<double> out(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) out[i] = static_cast<double>(seq[i]) / (n1 * denom_extra);
    return out;
}

} // namespace

DrawRecord analyze_draw(const StretchConfig& cfg, const WulffShape* shape) {
    DrawRecord r;
    const std::int64_t L = cfg.total_length();
    r.N = cfg.horizontal_steps();
    const auto beads = bead_decomposition(cfg);
    r.beads = beads.bead_count();
    r.largest_bead = beads.largest_bead_size();
    r.lead_offset = beads.intervals[beads.j_max].first - 1;
    r.tail_offset = L - beads.intervals[beads.j_max].second;
    r.area_gap = bead_area_gap(cfg);

    const auto env = envelopes(cfg);
    if (shape) {
        r.sup_v_gamma = sup_step_vs_ref(rescale_seq(env.walk), shape, 1.0, true);
        r.sup_eplus = sup_step_vs_ref(rescale_seq(env.upper), shape, 0.5, false);
        // E~- compares against -gamma*/2: flip the sign of the step values
        auto lower = rescale_seq(env.lower);
        for (double& v : lower) v = -v;
        r.sup_eminus = sup_step_vs_ref(lower, shape, 0.5, false);
    } else {
        r.sup_v_gamma = r.sup_eplus = r.sup_eminus = kNaN;
    }
    r.sup_mid = sup_step_vs_ref(rescale_seq(env.mid_twice, 2.0), nullptr, 0.0, false);
    return r;
}

CommandResult cmd_free_energy(const Config& c) {
    std::vector<double> grid = c.beta_grid.empty() ? std::vector<double>{c.beta} : c.beta_grid;
    io::Csv csv({"beta", "phase", "f_excess", "f_total"});
    for (double b : grid) {
        const auto rep = excess_free_energy(WalkLaw(b), c.model, c.tol);
        csv.row({fd(b), rep.phase == Phase::collapsed ? "collapsed" : "extended", fd(rep.f_excess), fd(rep.f_total)});
    }
    const auto path = out_file(c, ".csv");
    csv.write(path);
    return {0, {path.string()}, ""};
}

CommandResult cmd_exponent(const Config& c) {
    const auto eps = c.eps_grid.empty() ? default_eps_grid() : c.eps_grid;
    const auto rows = exponent_scan(c.model, eps, c.tol);
    io::Csv csv({"eps", "f_excess", "ratio", "slope"});
    for (const auto& r : rows) csv.row({fd(r.eps), fd(r.f_excess), fd(r.ratio), fd(r.slope)});
    const auto path = out_file(c, ".csv");
    csv.write(path);
    return {0, {path.string()}, ""};
}

CommandResult cmd_hbeta(const Config& c) {
    const auto grid = c.delta_grid.empty() ? default_delta_grid() : c.delta_grid;
    const WalkLaw law(c.beta);
    const auto rows = critical_scaling_scan(law, grid, c.tol);
    io::Csv csv({"delta", "h", "ratio"});
    for (const auto& r : rows) csv.row({fd(r.delta), fd(r.h), fd(r.ratio)});
    const auto path = out_file(c, ".csv");
    csv.write(path);
    return {0, {path.string()}, ""};
}

CommandResult cmd_tilt(const Config& c) {
    const WalkLaw law(c.beta);
    const auto p = solve_tilt(law, c.q);
    io::Csv csv({"q", "h0", "h1", "L_Lambda", "residual", "decay_rate"});
    csv.row({fd(c.q), fd(p.h0), fd(p.h1), fd(p.value), fd(p.residual), fd(p.value - p.h0 * c.q)});
    const auto path = out_file(c, ".csv");
    csv.write(path);
    return {0, {path.string()}, ""};
}

namespace {

std::vector<StretchConfig> run_sampler(const Config& c, const WalkLaw& law, std::int64_t L) {
    require_seed(c);
    ReturnTable table = io::cached_return_table(c.cache_dir, law, L + 1, std::max<std::int64_t>(L - 1, 0),
                                                {false, tail_aware_x_cap(law, L + 1, L)});
    PolymerSampler sampler(law, c.model, L, std::move(table));
    return sampler.draw(c.samples, c.seed);
}

// sampling commands accept a single L or an L sweep; one output set per L
std::vector<std::int64_t> length_sweep(const Config& c) {
    if (c.L_list.empty()) return {c.L};
    for (std::int64_t L : c.L_list)
        if (L < 1) throw std::invalid_argument("config: L_list entries must be >= 1");
    return c.L_list;
}

std::filesystem::path out_file_L(const Config& c, std::int64_t L, bool sweep, const std::string& ext) {
    std::string stem = c.command + "-" + c.hash();
    if (sweep) stem += "-L" + std::to_string(L);
    return std::filesystem::path(c.out_dir) / (stem + ext);
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double quantile_of(std::vector<double> v, double p) {
    std::sort(v.begin(), v.end());
    const double pos = p * static_cast<double>(v.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= v.size()) return v.back();
    return v[i] + (pos - static_cast<double>(i)) * (v[i + 1] - v[i]);
}

} // namespace

CommandResult cmd_sample(const Config& c) {
    const WalkLaw law(c.beta);
    const bool collapsed = gamma_factor(c.beta, c.model) < 1.0;
    std::string warning;
    std::optional<WulffShape> shape;
    double a_ref = kNaN;
    if (collapsed) {
        shape = wulff_shape(law, c.model, c.wulff_grid);
        a_ref = shape->a_star;
    } else {
        warning = "warning: beta <= beta_c, geometry references (gamma*, a_m) are undefined";
    }

    const auto sweep = length_sweep(c);
    CommandResult result{0, {}, warning};
    for (std::int64_t L : sweep) {
        const auto draws = run_sampler(c, law, L);
        io::Csv csv({"draw", "N", "beads", "largest_bead", "lead_offset", "tail_offset", "area_gap", "sup_v_gamma",
                     "sup_eplus", "sup_eminus", "sup_mid"});
        std::vector<double> n_scaled, sup_v, sup_m, gaps;
        std::int64_t exceed = 0;
        const double window = c.bead_window_c * std::pow(std::log(static_cast<double>(L)), 4.0);
        for (std::size_t i = 0; i < draws.size(); ++i) {
            const auto r = analyze_draw(draws[i], shape ? &*shape : nullptr);
            csv.row({fi(static_cast<std::int64_t>(i)), fi(r.N), fi(r.beads), fi(r.largest_bead), fi(r.lead_offset),
                     fi(r.tail_offset), fi(r.area_gap), fd(r.sup_v_gamma), fd(r.sup_eplus), fd(r.sup_eminus),
                     fd(r.sup_mid)});
            n_scaled.push_back(static_cast<double>(r.N) / std::sqrt(static_cast<double>(L)));
            sup_v.push_back(r.sup_v_gamma);
            sup_m.push_back(r.sup_mid);
            gaps.push_back(static_cast<double>(r.area_gap));
            if (static_cast<double>(r.largest_bead) >= static_cast<double>(L) - window) ++exceed;
        }
        const auto csv_path = out_file_L(c, L, sweep.size() > 1, ".csv");
        csv.write(csv_path);

        const double mean_n = mean_of(n_scaled);
        double var_n = 0.0;
        for (double x : n_scaled) var_n += (x - mean_n) * (x - mean_n);
        var_n /= std::max<double>(1.0, static_cast<double>(n_scaled.size() - 1));

        nlohmann::json agg;
        agg["beta"] = c.beta;
        agg["model"] = model_name(c.model);
        agg["L"] = L;
        agg["samples"] = c.samples;
        agg["seed"] = c.seed;
        agg["phase"] = collapsed ? "collapsed" : "extended";
        agg["a_star"] = a_ref;
        agg["mean_N_over_sqrtL"] = mean_n;
        agg["se_N_over_sqrtL"] = std::sqrt(var_n / static_cast<double>(n_scaled.size()));
        agg["mean_sup_v_gamma"] = collapsed ? mean_of(sup_v) : kNaN;
        agg["mean_sup_mid"] = mean_of(sup_m);
        agg["bead_window_c"] = c.bead_window_c;
        agg["bead_window"] = window;
        agg["exceedance_freq"] = static_cast<double>(exceed) / std::max<double>(1.0, static_cast<double>(c.samples));
        agg["area_gap_p50"] = quantile_of(gaps, 0.5);
        agg["area_gap_p95"] = quantile_of(gaps, 0.95);
        if (!warning.empty()) agg["warning"] = warning;
        const auto json_path = out_file_L(c, L, sweep.size() > 1, ".json");
        io::write_text(json_path, agg.dump(2) + "\n");
        result.files.push_back(csv_path.string());
        result.files.push_back(json_path.string());
    }
    return result;
}

CommandResult cmd_beads(const Config& c) {
    const WalkLaw law(c.beta);
    const auto sweep = length_sweep(c);
    CommandResult result{0, {}, ""};
    for (std::int64_t L : sweep) {
        const auto draws = run_sampler(c, law, L);
        io::Csv csv({"draw", "N", "beads", "largest_bead", "area_gap"});
        std::vector<double> gaps, largest;
        for (std::size_t i = 0; i < draws.size(); ++i) {
            const auto beads = bead_decomposition(draws[i]);
            const auto gap = bead_area_gap(draws[i]);
            csv.row({fi(static_cast<std::int64_t>(i)), fi(draws[i].horizontal_steps()), fi(beads.bead_count()),
                     fi(beads.largest_bead_size()), fi(gap)});
            gaps.push_back(static_cast<double>(gap));
            largest.push_back(static_cast<double>(beads.largest_bead_size()));
        }
        const auto csv_path = out_file_L(c, L, sweep.size() > 1, ".csv");
        csv.write(csv_path);

        nlohmann::json agg;
        agg["beta"] = c.beta;
        agg["model"] = model_name(c.model);
        agg["L"] = L;
        agg["samples"] = c.samples;
        agg["seed"] = c.seed;
        agg["area_gap_p50"] = quantile_of(gaps, 0.5);
        agg["area_gap_p95"] = quantile_of(gaps, 0.95);
        agg["largest_bead_p05"] = quantile_of(largest, 0.05);
        agg["log4_window"] = std::pow(std::log(static_cast<double>(L)), 4.0);
        const auto json_path = out_file_L(c, L, sweep.size() > 1, ".json");
        io::write_text(json_path, agg.dump(2) + "\n");
        result.files.push_back(csv_path.string());
        result.files.push_back(json_path.string());
    }
    return result;
}

CommandResult cmd_wulff(const Config& c) {
    const WalkLaw law(c.beta);
    const auto shape = wulff_shape(law, c.model, c.wulff_grid);
    if (c.samples == 0) {
        io::Csv csv({"s", "gamma_star"});
        for (std::size_t i = 0; i < shape.s.size(); ++i) csv.row({fd(shape.s[i]), fd(shape.gamma[i])});
        const auto path = out_file(c, ".csv");
        csv.write(path);
        return {0, {path.string()}, ""};
    }

    const auto draws = run_sampler(c, law, c.L);
    const std::size_t G = shape.s.size();
    std::vector<double> mean_absv(G, 0.0), mean_ep(G, 0.0), mean_em(G, 0.0), mean_mid(G, 0.0);
    for (const auto& d : draws) {
        const auto env = envelopes(d);
        const double n1 = static_cast<double>(env.walk.size() - 1);
        for (std::size_t j = 0; j < G; ++j) {
            const auto idx = std::min<std::size_t>(static_cast<std::size_t>(shape.s[j] * n1), env.walk.size() - 1);
            mean_absv[j] += std::abs(static_cast<double>(env.walk[idx])) / n1;
            mean_ep[j] += static_cast<double>(env.upper[idx]) / n1;
            mean_em[j] += static_cast<double>(env.lower[idx]) / n1;
            mean_mid[j] += 0.5 * static_cast<double>(env.mid_twice[idx]) / n1;
        }
    }
    const double inv = 1.0 / static_cast<double>(draws.size());
    io::Csv csv({"s", "gamma_star", "mean_abs_v", "mean_eplus", "mean_eminus", "mean_mid"});
    for (std::size_t j = 0; j < G; ++j)
        csv.row({fd(shape.s[j]), fd(shape.gamma[j]), fd(mean_absv[j] * inv), fd(mean_ep[j] * inv),
                 fd(mean_em[j] * inv), fd(mean_mid[j] * inv)});
    const auto path = out_file(c, ".csv");
    csv.write(path);
    return {0, {path.string()}, ""};
}

std::vector<ValidationCheck> run_validation_suite(const Config& c) {
    std::vector<ValidationCheck> checks;
    auto add = [&](const std::string& name, bool pass, double residual, const std::string& detail = "") {
        checks.push_back({name, pass, residual, detail});
    };

    {  // representation identity, small L
        double worst = 0.0;
        for (double beta : {0.5, 1.0, 2.0}) {
            const WalkLaw law(beta);
            for (Model m : {Model::uniform, Model::nonuniform}) {
                const auto table = ReturnTable::build(law, 9, 8, {false, -1});
                for (std::int64_t L = 1; L <= 8; ++L) {
                    const double lhs = std::log(law.c) + log_phi_total(beta, m, L) + excess_log_partition(table, m, L);
                    const double rhs = std::log(brute_force_Z(L, beta, m));
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
            }
        }
        add("partition_identity", worst <= 1e-10, worst, "log-scale error, L<=8");
    }
    {  // wedge identity
        bool ok = true;
        for (std::int64_t x = -50; x <= 50 && ok; ++x)
            for (std::int64_t y = -50; y <= 50 && ok; ++y) ok = wedge(x, y) == wedge_by_identity(x, y);
        add("wedge_identity", ok, 0.0);
    }
    {  // discounted-area monotonicity in |x|
        std::int64_t violations = 0;
        const WalkLaw law(1.0);
        for (double delta : {0.05, 0.2}) {
            for (std::int64_t n : {10, 20, 30}) {
                const auto prof = discounted_area_profile(law, delta, n, 120);
                for (std::int64_t x = 0; x < 20; ++x)
                    if (prof[120 + x + 1] > prof[120 + x] + 1e-15) ++violations;
            }
        }
        add("discounted_area_monotone", violations == 0, static_cast<double>(violations));
    }
    {  // first-bead factorization inequality
        const bool ok = one_bead_Z_inequality_check(4, 1.0, Model::uniform) &&
                        one_bead_Z_inequality_check(6, 2.0, Model::nonuniform);
        add("one_bead_factorization", ok, 0.0);
    }
    {  // h(0) = 0 and h < 0 beyond
        const WalkLaw law(beta_critical(Model::uniform));
        const double h0 = h_beta(law, 0.0, 1e-10);
        const double h1 = h_beta(law, 0.1, 1e-8);
        add("h_at_zero", h0 == 0.0 && h1 < 0.0, std::abs(h0));
    }
    {  // tilt residuals
        const WalkLaw law(1.0);
        double worst = 0.0;
        for (double q : {0.25, 1.0, 4.0}) worst = std::max(worst, solve_tilt(law, q).residual);
        add("tilt_residual", worst <= 1e-10, worst);
    }
    {  // Legendre conjugacy
        const WalkLaw law(1.0);
        const double h = 0.2;
        const double lhs = legendre_Lstar(law, law.log_mgf_d1(h));
        const double rhs = h * law.log_mgf_d1(h) - law.log_mgf(h);
        add("legendre_conjugacy", std::abs(lhs - rhs) <= 1e-10, std::abs(lhs - rhs));
    }
    {  // local CLT ratios at light sizes
        const auto rows = local_clt_check(WalkLaw(1.0), 1.0, {16, 24});
        bool ok = true;
        double worst = 0.0;
        for (const auto& r : rows) {
            ok = ok && r.ratio > 1.0 / 3.0 && r.ratio < 3.0;
            worst = std::max(worst, std::abs(r.ratio - 1.0));
        }
        add("local_clt_ratio", ok, worst);
    }
    {  // sampler per-step normalization
        const WalkLaw law(2.0);
        const auto pt = PathTable::build(law, 9, 22);
        CounterRng rng(7, 0);
        double worst = 0.0;
        for (int i = 0; i < 32; ++i) {
            pt.sample_bridge(rng);
            worst = std::max(worst, pt.last_step_normalization_error());
        }
        add("sampler_normalization", worst <= 1e-12, worst);
    }
    if (!c.cache_dir.empty()) {  // cache round-trip with key verification
        const WalkLaw law(c.beta);
        const auto table = ReturnTable::build(law, 12, 10, {false, -1});
        io::save_return_table(c.cache_dir, table);
        const io::CacheKey key{law.beta, 12, 10, table.x_cap(), false};
        bool ok = false;
        double worst = 0.0;
        if (auto loaded = io::load_return_table(c.cache_dir, key)) {
            ok = loaded->rows() == table.rows();
        }
        add("cache_roundtrip", ok, worst);
    }
    return checks;
}

CommandResult cmd_validate(const Config& c) {
    const auto checks = run_validation_suite(c);
    std::ostringstream report;
    nlohmann::json j;
    bool all = true;
    for (const auto& chk : checks) {
        all = all && chk.pass;
        report << (chk.pass ? "[PASS] " : "[FAIL] ") << chk.name << " residual=" << fd(chk.residual);
        if (!chk.detail.empty()) report << " (" << chk.detail << ")";
        report << "\n";
        j[chk.name] = {{"pass", chk.pass}, {"residual", chk.residual}, {"detail", chk.detail}};
    }
    const auto json_path = out_file(c, ".json");
    io::write_text(json_path, j.dump(2) + "\n");
    return {all ? 0 : 2, {json_path.string()}, report.str()};
}

CommandResult run(const Config& c) {
    try {
        if (c.command == "free-energy") return cmd_free_energy(c);
        if (c.command == "exponent") return cmd_exponent(c);
        if (c.command == "hbeta") return cmd_hbeta(c);
        if (c.command == "tilt") return cmd_tilt(c);
        if (c.command == "wulff") return cmd_wulff(c);
        if (c.command == "sample") return cmd_sample(c);
        if (c.command == "beads") return cmd_beads(c);
        if (c.command == "validate") return cmd_validate(c);
        return {1, {}, "unknown command: " + c.command};
    } catch (const io::CacheCorrupt& e) {
        return {2, {}, std::string("cache integrity failure: ") + e.what()};
    } catch (const std::length_error& e) {
        return {3, {}, std::string("resource ceiling: ") + e.what()};
    } catch (const std::invalid_argument& e) {
        return {1, {}, std::string("usage error: ") + e.what()};
    } catch (const std::exception& e) {
        return {1, {}, std::string("error: ") + e.what()};
    }
}

} // namespace ipdsaw::experiments

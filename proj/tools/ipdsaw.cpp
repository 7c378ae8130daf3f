// Command-line front end: subcommands mirror the experiment drivers, flags
// mirror the JSON config schema (flags win over the config file; the
// IPDSAW_CACHE environment variable supplies a cache dir when --cache is
// absent). Exit codes: 0 success, 1 usage error, 2 validation failure,
// 3 resource ceiling.
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ipdsaw/experiments.hpp"

namespace {

struct FlagSet {
    std::string config_file;
    std::string model;
    double beta = 0.0;
    std::vector<double> beta_grid;
    std::int64_t L = 0;
    std::vector<std::int64_t> L_list;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    std::string out;
    double tol = 0.0;
    std::string cache;
    double q = 0.0;
    std::vector<double> delta_grid;
    std::vector<double> eps_grid;
    std::int64_t wulff_grid = 0;
    double bead_window_c = 0.0;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ipdsaw: exact numerics for the partially directed polymer collapse model"};
    app.require_subcommand(1);

    FlagSet f;
    const std::vector<std::string> commands = {"free-energy", "exponent", "hbeta", "tilt",
                                               "wulff", "sample", "beads", "validate"};
    std::vector<CLI::App*> subs;
    std::vector<CLI::Option*> opt_model, opt_beta, opt_bgrid, opt_L, opt_Llist, opt_samples, opt_seed, opt_out,
        opt_tol, opt_cache, opt_q, opt_dgrid, opt_egrid, opt_wgrid, opt_beadc, opt_cfg;
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        subs.push_back(sub);
        opt_cfg.push_back(sub->add_option("--config", f.config_file, "JSON config file mirroring the flags"));
        opt_model.push_back(sub->add_option("--model", f.model, "u | nu")->check(CLI::IsMember({"u", "nu"})));
        opt_beta.push_back(sub->add_option("--beta", f.beta, "interaction strength"));
        opt_bgrid.push_back(sub->add_option("--beta-grid", f.beta_grid, "beta sweep values"));
        opt_L.push_back(sub->add_option("--L", f.L, "polymer length"));
        opt_Llist.push_back(sub->add_option("--L-list", f.L_list, "length sweep values"));
        opt_samples.push_back(sub->add_option("--samples", f.samples, "number of draws"));
        opt_seed.push_back(sub->add_option("--seed", f.seed, "RNG seed (mandatory for sampling)"));
        opt_out.push_back(sub->add_option("--out", f.out, "output directory"));
        opt_tol.push_back(sub->add_option("--tol", f.tol, "solver tolerance"));
        opt_cache.push_back(sub->add_option("--cache", f.cache, "table cache directory"));
        opt_q.push_back(sub->add_option("--q", f.q, "tilt target"));
        opt_dgrid.push_back(sub->add_option("--delta-grid", f.delta_grid, "h_beta scan grid (descending)"));
        opt_egrid.push_back(sub->add_option("--eps-grid", f.eps_grid, "exponent scan grid (descending)"));
        opt_wgrid.push_back(sub->add_option("--wulff-grid", f.wulff_grid, "Wulff shape grid size"));
        opt_beadc.push_back(sub->add_option("--bead-window-c", f.bead_window_c, "bead window constant"));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    std::size_t idx = 0;
    for (std::size_t i = 0; i < subs.size(); ++i)
        if (subs[i]->parsed()) idx = i;

    ipdsaw::experiments::Config cfg;
    try {
        if (opt_cfg[idx]->count()) {
            std::ifstream in(f.config_file);
            if (!in) {
                std::cerr << "usage error: cannot open config file " << f.config_file << "\n";
                return 1;
            }
            nlohmann::json j;
            in >> j;
            cfg = ipdsaw::experiments::config_from_json(j);
        }
        cfg.command = commands[idx];
        if (opt_model[idx]->count()) cfg.model = f.model == "u" ? ipdsaw::Model::uniform : ipdsaw::Model::nonuniform;
        if (opt_beta[idx]->count()) cfg.beta = f.beta;
        if (opt_bgrid[idx]->count()) cfg.beta_grid = f.beta_grid;
        if (opt_L[idx]->count()) cfg.L = f.L;
        if (opt_Llist[idx]->count()) cfg.L_list = f.L_list;
        if (opt_samples[idx]->count()) cfg.samples = f.samples;
        if (opt_seed[idx]->count()) {
            cfg.seed = f.seed;
            cfg.has_seed = true;
        }
        if (opt_out[idx]->count()) cfg.out_dir = f.out;
        if (opt_tol[idx]->count()) cfg.tol = f.tol;
        if (opt_cache[idx]->count()) cfg.cache_dir = f.cache;
        else if (cfg.cache_dir.empty()) {
            if (const char* env = std::getenv("IPDSAW_CACHE")) cfg.cache_dir = env;
        }
        if (opt_q[idx]->count()) cfg.q = f.q;
        if (opt_dgrid[idx]->count()) cfg.delta_grid = f.delta_grid;
        if (opt_egrid[idx]->count()) cfg.eps_grid = f.eps_grid;
        if (opt_wgrid[idx]->count()) cfg.wulff_grid = f.wulff_grid;
        if (opt_beadc[idx]->count()) cfg.bead_window_c = f.bead_window_c;
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }

    const auto result = ipdsaw::experiments::run(cfg);
    if (!result.report.empty()) {
        std::cout << result.report;
        if (result.report.back() != '\n') std::cout << "\n";
    }
    for (const auto& file : result.files) std::cout << "wrote " << file << "\n";
    if (result.exit_code != 0 && result.files.empty() && result.report.empty())
        std::cerr << "command failed with exit code " << result.exit_code << "\n";
    return result.exit_code;
}

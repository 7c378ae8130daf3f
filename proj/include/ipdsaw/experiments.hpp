// Experiment orchestration behind the CLI: configuration, per-draw sample
// statistics, command drivers and the validation suite.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ipdsaw/area_dp.hpp"
#include "ipdsaw/core.hpp"
#include "ipdsaw/law.hpp"
#include "ipdsaw/tilt.hpp"

namespace ipdsaw::experiments {

// Frozen on a pilot run (beta=2, uniform, L=1000, 500 draws): the bead-window
// constant c in the |I_jmax| >= L - c (log L)^4 exceedance statistic.
inline constexpr double kDefaultBeadWindowC = 0.05;

struct Config {
    std::string command;
    Model model = Model::uniform;
    double beta = 2.0;
    std::vector<double> beta_grid;       // free-energy sweep; defaults to {beta}
    std::int64_t L = 100;
    std::vector<std::int64_t> L_list;    // direct free-energy estimates
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::string out_dir = ".";
    double tol = 1e-8;
    std::string cache_dir;
    double q = 1.0;
    std::vector<double> delta_grid;      // hbeta scan; descending
    std::vector<double> eps_grid;        // exponent scan; descending
    std::int64_t wulff_grid = 1025;
    double bead_window_c = kDefaultBeadWindowC;

    nlohmann::json to_json() const;  // canonical form used for hashing
    std::string hash() const;
};

Config config_from_json(const nlohmann::json& j);

struct CommandResult {
    int exit_code = 0;
    std::vector<std::string> files;
    std::string report;  // human-readable summary (validate prints per-check lines)
};

CommandResult cmd_free_energy(const Config&);
CommandResult cmd_exponent(const Config&);
CommandResult cmd_hbeta(const Config&);
CommandResult cmd_tilt(const Config&);
CommandResult cmd_wulff(const Config&);
CommandResult cmd_sample(const Config&);
CommandResult cmd_beads(const Config&);
CommandResult cmd_validate(const Config&);

// Dispatch on config.command with error-to-exit-code mapping:
// 1 usage, 2 validation failure, 3 resource ceiling.
CommandResult run(const Config&);

// Gap between the geometric area L - N and the modulus of the algebraic area
// |sum_i V_{l,i}| of the associated auxiliary walk; >= 0.
std::int64_t bead_area_gap(const StretchConfig& cfg);

struct DrawRecord {
    std::int64_t N = 0;             // horizontal extension
    std::int64_t beads = 0;         // n_L
    std::int64_t largest_bead = 0;  // |I_jmax|
    std::int64_t lead_offset = 0;   // i1
    std::int64_t tail_offset = 0;   // L - i2
    std::int64_t area_gap = 0;
    double sup_v_gamma = 0.0;  // || |V~| - gamma* ||_inf
    double sup_eplus = 0.0;    // || E~+ - gamma*/2 ||_inf
    double sup_eminus = 0.0;   // || E~- + gamma*/2 ||_inf
    double sup_mid = 0.0;      // || M~ ||_inf
};

// Wulff-reference metrics are NaN when shape == nullptr (extended phase).
DrawRecord analyze_draw(const StretchConfig& cfg, const WulffShape* shape);

double wulff_gamma_at(const WulffShape& shape, double t);

struct ValidationCheck {
    std::string name;
    bool pass;
    double residual;
    std::string detail;
};

std::vector<ValidationCheck> run_validation_suite(const Config&);

} // namespace ipdsaw::experiments

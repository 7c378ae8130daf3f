#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "ipdsaw/core.hpp"
#include "ipdsaw/experiments.hpp"
#include "ipdsaw/io.hpp"

using namespace ipdsaw;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

struct TempDir {
    fs::path path;
    TempDir(const std::string& tag) : path(fs::temp_directory_path() / ("ipdsaw-test-" + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("double formatting round-trips") {
    for (double v : {0.0, 1.0, -1.5, 1.0 / 3.0, 1e-17, 123456.789, -2.2250738585072014e-308}) {
        const auto s = io::format_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(io::format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("csv assembly") {
    io::Csv csv({"a", "b"});
    csv.row({"1", "2"});
    csv.row({"x", "y"});
    CHECK(csv.text() == "a,b\n1,2\nx,y\n");
    CHECK_THROWS_AS(csv.row({"only-one"}), std::invalid_argument);
}

TEST_CASE("return-table cache: round trip, key mismatch, corruption") {
    TempDir dir("cache");
    const WalkLaw law(1.25);
    const auto table = ReturnTable::build(law, 12, 10, {false, -1});
    io::save_return_table(dir.path, table);

    const io::CacheKey key{law.beta, 12, 10, table.x_cap(), false};
    auto loaded = io::load_return_table(dir.path, key);
    REQUIRE(loaded.has_value());
    CHECK(loaded->rows() == table.rows());
    CHECK(loaded->log_prob(5, 4) == table.log_prob(5, 4));

    // different key hashes to a different file: a miss, not an error
    const io::CacheKey other{law.beta, 13, 10, table.x_cap(), false};
    CHECK_FALSE(io::load_return_table(dir.path, other).has_value());

    // flip one payload byte: the stored hash no longer matches
    const auto file = dir.path / ("tbl-" + key.id() + ".bin");
    {
        std::fstream f(file, std::ios::binary | std::ios::in | std::ios::out);
        f.seekp(64 + 40);
        char b;
        f.seekg(64 + 40);
        f.get(b);
        b = static_cast<char>(b ^ 0x40);
        f.seekp(64 + 40);
        f.put(b);
    }
    CHECK_THROWS_AS(io::load_return_table(dir.path, key), io::CacheCorrupt);

    // perturb the stored beta bits: header no longer matches the key
    io::save_return_table(dir.path, table);
    {
        std::fstream f(file, std::ios::binary | std::ios::in | std::ios::out);
        f.seekp(16);
        char b;
        f.seekg(16);
        f.get(b);
        b = static_cast<char>(b ^ 0x01);
        f.seekp(16);
        f.put(b);
    }
    CHECK_THROWS_AS(io::load_return_table(dir.path, key), io::CacheCorrupt);
}

TEST_CASE("bead area gap") {
    CHECK(experiments::bead_area_gap(StretchConfig{{3, -3, 3, -3}}) == 0);
    CHECK(experiments::bead_area_gap(StretchConfig{{2, -2, 2}}) == 0);

    for (std::int64_t L = 2; L <= 8; ++L) {
        enumerate_configs(L, [&](const StretchConfig& cfg) {
            const auto gap = experiments::bead_area_gap(cfg);
            CHECK(gap >= 0);
            // aira bound: gap <= 2 sum of |l_i| outside the largest bead
            const auto d = bead_decomposition(cfg);
            const std::int64_t x_hi = d.cuts[d.j_max];
            const std::int64_t x_lo = d.j_max == 0 ? 0 : d.cuts[d.j_max - 1];
            std::int64_t outside = 0;
            for (std::int64_t i = 0; i < cfg.horizontal_steps(); ++i)
                if (i < x_lo || i >= x_hi) outside += std::llabs(cfg.stretches[i]);
            CHECK(gap <= 2 * outside);
        });
    }
}

TEST_CASE("config parsing and hashing") {
    nlohmann::json j;
    j["command"] = "free-energy";
    j["model"] = "nu";
    j["beta"] = 1.5;
    j["seed"] = 9;
    auto cfg = experiments::config_from_json(j);
    CHECK(cfg.model == Model::nonuniform);
    CHECK(cfg.beta == 1.5);
    CHECK(cfg.has_seed);
    CHECK(cfg.hash().size() == 16);

    auto cfg2 = cfg;
    CHECK(cfg2.hash() == cfg.hash());
    cfg2.beta = 1.6;
    CHECK(cfg2.hash() != cfg.hash());

    j["model"] = "bogus";
    CHECK_THROWS_AS(experiments::config_from_json(j), std::invalid_argument);
    j["model"] = "u";
    j["beta"] = -1.0;
    CHECK_THROWS_AS(experiments::config_from_json(j), std::invalid_argument);
}

TEST_CASE("free-energy command writes a deterministic sweep") {
    TempDir dir("fe");
    experiments::Config cfg;
    cfg.command = "free-energy";
    cfg.beta_grid = {0.9, 1.5};
    cfg.tol = 1e-6;
    cfg.out_dir = dir.path.string();
    const auto res = experiments::run(cfg);
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.files.size() == 1);
    const auto text = slurp(res.files[0]);
    CHECK(text.rfind("beta,phase,f_excess,f_total\n", 0) == 0);
    CHECK(text.find("extended") != std::string::npos);
    CHECK(text.find("collapsed") != std::string::npos);
    // three lines: header + two grid points
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);

    const auto again = experiments::run(cfg);
    CHECK(slurp(again.files[0]) == text);
}

TEST_CASE("sample command: records, aggregates, determinism") {
    TempDir dir("sample");
    experiments::Config cfg;
    cfg.command = "sample";
    cfg.beta = 2.0;
    cfg.L = 60;
    cfg.samples = 40;
    cfg.seed = 11;
    cfg.has_seed = true;
    cfg.out_dir = dir.path.string();
    const auto res = experiments::run(cfg);
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.files.size() == 2);
    const auto csv = slurp(res.files[0]);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 41);
    const auto agg = nlohmann::json::parse(slurp(res.files[1]));
    CHECK(agg["phase"] == "collapsed");
    CHECK(agg["samples"] == 40);
    CHECK(agg["mean_N_over_sqrtL"].get<double>() > 0.0);

    const auto rerun = experiments::run(cfg);
    CHECK(slurp(rerun.files[0]) == csv);

    experiments::Config other = cfg;
    other.seed = 12;
    const auto different = experiments::run(other);
    CHECK(slurp(different.files[0]) != csv);
}

TEST_CASE("per-draw invariants hold on every sample") {
    TempDir dir("draws");
    const WalkLaw law(2.0);
    PolymerSampler sampler(law, Model::uniform, 80);
    const auto wul = wulff_shape(law, Model::uniform, 257);
    for (const auto& d : sampler.draw(50, 3)) {
        CHECK(d.total_length() == 80);
        const auto rec = experiments::analyze_draw(d, &wul);
        CHECK(rec.N >= rec.beads);  // each bead holds at least one horizontal step
        CHECK(rec.largest_bead <= 80);
        CHECK(rec.area_gap >= 0);
        CHECK(rec.sup_v_gamma >= 0.0);
        CHECK(rec.sup_mid >= 0.0);
        CHECK(rec.lead_offset >= 0);
        CHECK(rec.tail_offset >= 0);
    }
}

TEST_CASE("exit codes: usage, ceiling, cache corruption") {
    TempDir dir("codes");
    experiments::Config cfg;
    cfg.command = "sample";
    cfg.beta = 1.0;
    cfg.L = 20;
    cfg.samples = 5;
    cfg.out_dir = dir.path.string();
    // missing seed
    CHECK(experiments::run(cfg).exit_code == 1);

    cfg.seed = 1;
    cfg.has_seed = true;
    cfg.L = kSamplingLengthCeiling + 100;
    CHECK(experiments::run(cfg).exit_code == 3);

    // corrupt cache: build one, damage the payload, rerun
    cfg.L = 20;
    cfg.cache_dir = (dir.path / "cache").string();
    CHECK(experiments::run(cfg).exit_code == 0);
    for (const auto& entry : fs::directory_iterator(dir.path / "cache")) {
        if (entry.path().extension() != ".bin") continue;
        std::fstream f(entry.path(), std::ios::binary | std::ios::in | std::ios::out);
        f.seekp(64 + 8);
        f.put('\x7f');
    }
    CHECK(experiments::run(cfg).exit_code == 2);

    cfg.command = "no-such";
    CHECK(experiments::run(cfg).exit_code == 1);
}

TEST_CASE("non-uniform model: sampled extension concentrates at its own a*") {
    const WalkLaw law(2.0);
    const auto shape = wulff_shape(law, Model::nonuniform, 513);
    PolymerSampler sampler(law, Model::nonuniform, 600);
    const auto draws = sampler.draw(300, 17);
    double mean = 0.0;
    for (const auto& d : draws) mean += static_cast<double>(d.horizontal_steps()) / std::sqrt(600.0);
    mean /= 300.0;
    double var = 0.0;
    for (const auto& d : draws) {
        const double x = static_cast<double>(d.horizontal_steps()) / std::sqrt(600.0) - mean;
        var += x * x;
    }
    const double se = std::sqrt(var / 299.0 / 300.0);
    CHECK(std::abs(mean - shape.a_star) <= 3.0 * se);
}

TEST_CASE("envelope sup-distance to the Wulff halves shrinks with length") {
    const WalkLaw law(2.0);
    const auto shape = wulff_shape(law, Model::uniform, 513);
    auto mean_sups = [&](std::int64_t L) {
        PolymerSampler sampler(law, Model::uniform, L);
        double ep = 0.0, em = 0.0;
        const auto draws = sampler.draw(150, 5);
        for (const auto& d : draws) {
            const auto rec = experiments::analyze_draw(d, &shape);
            ep += rec.sup_eplus;
            em += rec.sup_eminus;
        }
        return std::pair<double, double>{ep / 150.0, em / 150.0};
    };
    const auto small = mean_sups(100);
    const auto big = mean_sups(400);
    CHECK(big.first < small.first);
    CHECK(big.second < small.second);
}

TEST_CASE("area gap stays inside the pilot log^4 window on sampled draws") {
    const WalkLaw law(2.0);
    PolymerSampler sampler(law, Model::uniform, 200);
    std::vector<double> gaps;
    for (const auto& d : sampler.draw(100, 9)) gaps.push_back(static_cast<double>(experiments::bead_area_gap(d)));
    std::sort(gaps.begin(), gaps.end());
    const double p95 = gaps[94];
    CHECK(p95 <= experiments::kDefaultBeadWindowC * std::pow(std::log(200.0), 4.0));
}

TEST_CASE("cache does not change results") {
    TempDir dir("transparent");
    experiments::Config cfg;
    cfg.command = "sample";
    cfg.beta = 2.0;
    cfg.L = 48;
    cfg.samples = 16;
    cfg.seed = 21;
    cfg.has_seed = true;
    cfg.out_dir = (dir.path / "plain").string();
    const auto plain = experiments::run(cfg);
    REQUIRE(plain.exit_code == 0);

    cfg.out_dir = (dir.path / "warm").string();
    cfg.cache_dir = (dir.path / "cache").string();
    const auto warm = experiments::run(cfg);  // builds and stores the table
    REQUIRE(warm.exit_code == 0);
    const auto warm_csv = slurp(warm.files[0]);
    const auto warm_json = slurp(warm.files[1]);

    const auto cached = experiments::run(cfg);  // loads the table back
    REQUIRE(cached.exit_code == 0);
    CHECK(slurp(plain.files[0]) == warm_csv);
    CHECK(slurp(cached.files[0]) == warm_csv);
    CHECK(slurp(cached.files[1]) == warm_json);
}

TEST_CASE("validation suite passes on defaults") {
    TempDir dir("validate");
    experiments::Config cfg;
    cfg.command = "validate";
    cfg.beta = 1.0;
    cfg.out_dir = dir.path.string();
    cfg.cache_dir = (dir.path / "cache").string();
    const auto res = experiments::run(cfg);
    CHECK(res.exit_code == 0);
    CHECK(res.report.find("[FAIL]") == std::string::npos);
    CHECK(res.report.find("partition_identity") != std::string::npos);
    CHECK(res.report.find("cache_roundtrip") != std::string::npos);
}

TEST_CASE("wulff command emits the shape and profiles") {
    TempDir dir("wulff");
    experiments::Config cfg;
    cfg.command = "wulff";
    cfg.beta = 2.0;
    cfg.wulff_grid = 129;
    cfg.out_dir = dir.path.string();
    const auto bare = experiments::run(cfg);
    REQUIRE(bare.exit_code == 0);
    CHECK(slurp(bare.files[0]).rfind("s,gamma_star\n", 0) == 0);

    cfg.L = 60;
    cfg.samples = 10;
    cfg.seed = 4;
    cfg.has_seed = true;
    const auto with_profiles = experiments::run(cfg);
    REQUIRE(with_profiles.exit_code == 0);
    CHECK(slurp(with_profiles.files[0]).rfind("s,gamma_star,mean_abs_v,mean_eplus,mean_eminus,mean_mid\n", 0) == 0);
}

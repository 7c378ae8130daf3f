// Deterministic serialization and the on-disk table cache.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ipdsaw/area_dp.hpp"

namespace ipdsaw::io {

// Shortest round-trip decimal form, locale-independent ('.' decimal point).
std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex16(std::uint64_t v);

// Minimal CSV assembly: comma separator, LF line endings, header row.
class Csv {
  public:
    explicit Csv(std::vector<std::string> header);
    void row(const std::vector<std::string>& cells);
    const std::string& text() const { return text_; }
    void write(const std::filesystem::path& path) const;

  private:
    std::size_t cols_;
    std::string text_;
};

void write_text(const std::filesystem::path& path, std::string_view text);

// Raised when a cache file exists but fails the key or payload check.
struct CacheCorrupt : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CacheKey {
    double beta;
    std::int64_t n_max, k_max, x_cap;
    bool positive;

    std::string id() const;  // hex string used in the file name
};

// Versioned binary file: magic, version, key fields, payload hash, then the
// row-major float64 log-probability rows, little-endian. Uses advisory
// flock-based locking so concurrent invocations can share a cache directory.
void save_return_table(const std::filesystem::path& dir, const ReturnTable& table);
// nullopt when absent; throws CacheCorrupt when present but inconsistent.
std::optional<ReturnTable> load_return_table(const std::filesystem::path& dir, const CacheKey& key);

// Build-or-load helper; a missing or empty dir means always build.
ReturnTable cached_return_table(const std::filesystem::path& dir, const WalkLaw& law, std::int64_t n_max,
                                std::int64_t k_max, AreaTableOptions opts);

} // namespace ipdsaw::io

#include "ipdsaw/io.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <charconv>
#include <cstring>
#include <fstream>

namespace ipdsaw::io {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex16(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

Csv::Csv(std::vector<std::string> header) : cols_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) text_ += ',';
        text_ += header[i];
    }
    text_ += '\n';
}

void Csv::row(const std::vector<std::string>& cells) {
    if (cells.size() != cols_) throw std::invalid_argument("Csv: column count mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) text_ += ',';
        text_ += cells[i];
    }
    text_ += '\n';
}

void Csv::write(const std::filesystem::path& path) const { write_text(path, text_); }

void write_text(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

namespace {

constexpr char kMagic[8] = {'I', 'P', 'D', 'S', 'A', 'W', 'T', 'B'};
constexpr std::uint32_t kVersion = 1;

struct Header {
    char magic[8];
    std::uint32_t version;
    std::uint32_t flags;
    std::uint64_t beta_bits;
    std::int64_t n_max;
    std::int64_t k_max;
    std::int64_t x_cap;
    std::uint64_t payload_hash;
};

std::uint64_t bits_of(double v) {
    std::uint64_t b;
    std::memcpy(&b, &v, sizeof(b));
    return b;
}

struct FileLock {
    int fd = -1;
    FileLock(const std::filesystem::path& p, int op) {
        fd = ::open(p.c_str(), O_RDWR | O_CREAT, 0644);
        if (fd >= 0) ::flock(fd, op);
    }
    ~FileLock() {
        if (fd >= 0) {
            ::flock(fd, LOCK_UN);
            ::close(fd);
        }
    }
};

} // namespace

std::string CacheKey::id() const {
    std::string s = hex16(bits_of(beta)) + ":" + std::to_string(n_max) + ":" + std::to_string(k_max) + ":" +
                    std::to_string(x_cap) + ":" + (positive ? "1" : "0");
    return hex16(fnv1a64(s));
}

void save_return_table(const std::filesystem::path& dir, const ReturnTable& table) {
    std::filesystem::create_directories(dir);
    const CacheKey key{table.beta(), table.n_max(), table.k_max(), table.x_cap(), table.positive()};
    const auto path = dir / ("tbl-" + key.id() + ".bin");
    FileLock lock(dir / ("tbl-" + key.id() + ".lock"), LOCK_EX);

    Header h{};
    std::memcpy(h.magic, kMagic, 8);
    h.version = kVersion;
    h.flags = table.positive() ? 1u : 0u;
    h.beta_bits = bits_of(table.beta());
    h.n_max = table.n_max();
    h.k_max = table.k_max();
    h.x_cap = table.x_cap();
    const auto& rows = table.rows();
    h.payload_hash = fnv1a64(std::string_view(reinterpret_cast<const char*>(rows.data()), rows.size() * sizeof(double)));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cache: cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(&h), sizeof(h));
    out.write(reinterpret_cast<const char*>(rows.data()), static_cast<std::streamsize>(rows.size() * sizeof(double)));
}

std::optional<ReturnTable> load_return_table(const std::filesystem::path& dir, const CacheKey& key) {
    const auto path = dir / ("tbl-" + key.id() + ".bin");
    if (!std::filesystem::exists(path)) return std::nullopt;
    FileLock lock(dir / ("tbl-" + key.id() + ".lock"), LOCK_SH);

    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    Header h{};
    in.read(reinterpret_cast<char*>(&h), sizeof(h));
    if (!in || std::memcmp(h.magic, kMagic, 8) != 0 || h.version != kVersion)
        throw CacheCorrupt("cache: bad magic/version in " + path.string());
    if (h.beta_bits != bits_of(key.beta) || h.n_max != key.n_max || h.k_max != key.k_max || h.x_cap != key.x_cap ||
        ((h.flags & 1u) != 0) != key.positive)
        throw CacheCorrupt("cache: header does not match the cache key for " + path.string());

    std::vector<double> rows(static_cast<std::size_t>(h.n_max) * (h.k_max + 1));
    in.read(reinterpret_cast<char*>(rows.data()), static_cast<std::streamsize>(rows.size() * sizeof(double)));
    if (!in) throw CacheCorrupt("cache: truncated payload in " + path.string());
    const auto hash = fnv1a64(std::string_view(reinterpret_cast<const char*>(rows.data()), rows.size() * sizeof(double)));
    if (hash != h.payload_hash) throw CacheCorrupt("cache: payload hash mismatch in " + path.string());
    return ReturnTable::from_rows(key.beta, key.n_max, key.k_max, key.x_cap, key.positive, std::move(rows));
}

ReturnTable cached_return_table(const std::filesystem::path& dir, const WalkLaw& law, std::int64_t n_max,
                                std::int64_t k_max, AreaTableOptions opts) {
    const std::int64_t cap = ReturnTable::effective_x_cap(opts.x_cap, k_max);
    if (!dir.empty()) {
        const CacheKey key{law.beta, n_max, k_max, cap, opts.positive};
        if (auto t = load_return_table(dir, key)) return std::move(*t);
    }
    ReturnTable t = ReturnTable::build(law, n_max, k_max, {opts.positive, cap});
    if (!dir.empty()) save_return_table(dir, t);
    return t;
}

} // namespace ipdsaw::io

#include "goormaghtigh/tables.hpp"

#include <cstring>
#include <fstream>

namespace gm {

SieveTable SieveTable::build(std::uint32_t p) {
    if (p == 2)
        throw std::invalid_argument("SieveTable: p = 2 has degenerate exponent classes");
    if (p >= (1u << 16))
        throw std::invalid_argument("SieveTable: p must be < 2^16");
    if (!is_prime_small(p) || p < 3)
        throw std::invalid_argument("SieveTable: p must be an odd prime");

    SieveTable t;
    t.p_ = p;
    t.values_.resize(static_cast<std::size_t>(p - 2) * (p - 1));
    for (std::uint32_t b = 2; b <= p - 1; ++b) {
        std::uint16_t* row = t.values_.data() + static_cast<std::size_t>(b - 2) * (p - 1);
        std::uint64_t f = 1;  // f_1(b) = 1
        for (std::uint32_t q = 1; q <= p - 1; ++q) {
            row[q - 1] = static_cast<std::uint16_t>(f);
            f = (f * b + 1) % p;  // f_{q+1} = b*f_q + 1
        }
    }
    t.rebuild_feasible();
    return t;
}

void SieveTable::rebuild_feasible() {
    words_ = (p_ + 63) / 64;
    feasible_.assign(static_cast<std::size_t>(p_ - 1) * words_, 0);
    for (std::uint32_t r = 1; r <= p_ - 1; ++r) {
        std::uint64_t* row = feasible_.data() + static_cast<std::size_t>(r - 1) * words_;
        for (std::uint32_t b = 2; b <= p_ - 1; ++b) {
            std::uint32_t v = value(b, r);
            row[v >> 6] |= std::uint64_t(1) << (v & 63);
        }
    }
}

std::vector<std::uint32_t> SieveTable::feasible_residues(std::uint32_t r) const {
    if (r < 1 || r > p_ - 1)
        throw std::invalid_argument("feasible_residues: class out of range");
    std::vector<std::uint32_t> out;
    const std::uint64_t* row = feasible_.data() + static_cast<std::size_t>(r - 1) * words_;
    for (std::uint32_t v = 0; v < p_; ++v)
        if ((row[v >> 6] >> (v & 63)) & 1) out.push_back(v);
    return out;
}

namespace {

constexpr char kMagic[4] = {'G', 'M', 'S', 'V'};
constexpr std::uint8_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 24)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

bool get_u32(std::istream& is, std::uint32_t& v) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) return false;
    v = b[0] | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
        (std::uint32_t(b[3]) << 24);
    return true;
}

}  // namespace

void save_tables(const std::vector<SieveTable>& tables, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw TableIoError(TableIoError::Kind::io, "cannot open for writing: " + path.string());
    os.write(kMagic, 4);
    os.put(static_cast<char>(kVersion));
    put_u32(os, static_cast<std::uint32_t>(tables.size()));
    for (const SieveTable& t : tables) {
        put_u32(os, t.p());
        std::vector<unsigned char> buf(t.values().size() * 2);
        for (std::size_t i = 0; i < t.values().size(); ++i) {
            buf[2 * i] = static_cast<unsigned char>(t.values()[i]);
            buf[2 * i + 1] = static_cast<unsigned char>(t.values()[i] >> 8);
        }
        os.write(reinterpret_cast<const char*>(buf.data()),
                 static_cast<std::streamsize>(buf.size()));
    }
    if (!os)
        throw TableIoError(TableIoError::Kind::io, "write failed: " + path.string());
}

std::vector<SieveTable> load_tables(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw TableIoError(TableIoError::Kind::io, "cannot open for reading: " + path.string());
    char magic[4];
    if (!is.read(magic, 4))
        throw TableIoError(TableIoError::Kind::truncated, "table file shorter than header");
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw TableIoError(TableIoError::Kind::bad_magic, "not a sieve table file (bad magic)");
    int version = is.get();
    if (version == std::istream::traits_type::eof())
        throw TableIoError(TableIoError::Kind::truncated, "table file shorter than header");
    if (version != kVersion)
        throw TableIoError(TableIoError::Kind::bad_version,
                           "unsupported table file version " + std::to_string(version));
    std::uint32_t count;
    if (!get_u32(is, count))
        throw TableIoError(TableIoError::Kind::truncated, "table file shorter than header");

    std::vector<SieveTable> tables;
    tables.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        std::uint32_t p;
        if (!get_u32(is, p))
            throw TableIoError(TableIoError::Kind::truncated,
                               "table file ends inside prime header");
        if (p < 3 || p >= (1u << 16) || !is_prime_small(p))
            throw TableIoError(TableIoError::Kind::corrupt,
                               "invalid table prime " + std::to_string(p));
        SieveTable t;
        t.p_ = p;
        std::size_t n = static_cast<std::size_t>(p - 2) * (p - 1);
        std::vector<unsigned char> buf(n * 2);
        if (!is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size())))
            throw TableIoError(TableIoError::Kind::truncated,
                               "table file ends inside residue block for p = " + std::to_string(p));
        t.values_.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            std::uint16_t v = static_cast<std::uint16_t>(buf[2 * k] | (buf[2 * k + 1] << 8));
            if (v >= p)
                throw TableIoError(TableIoError::Kind::corrupt,
                                   "residue out of range for p = " + std::to_string(p));
            t.values_[k] = v;
        }
        t.rebuild_feasible();
        tables.push_back(std::move(t));
    }
    return tables;
}

std::vector<SieveTable> build_default_tables(std::uint32_t pmax) {
    if (pmax > (1u << 16))
        throw std::invalid_argument("build_default_tables: pmax must be <= 2^16");
    std::vector<SieveTable> tables;
    for (std::uint64_t p : primes_in(3, static_cast<std::int64_t>(pmax) - 1))
        tables.push_back(SieveTable::build(static_cast<std::uint32_t>(p)));
    return tables;
}

}  // namespace gm

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "goormaghtigh/arith.hpp"

namespace gm {

/// Canonical exponent-class representative: r(k) = ((k-1) mod (p-1)) + 1,
/// so k = r(k) (mod p-1) and 1 <= r(k) <= p-1.
inline std::uint32_t exponent_class(std::uint64_t k, std::uint32_t p) {
    return static_cast<std::uint32_t>((k - 1) % (p - 1)) + 1;
}

/// Per-prime residue table: f_q(b) mod p for all 2 <= b <= p-1, 1 <= q <= p-1,
/// plus per-exponent-class feasible-value bitsets
/// feasible(r) = { f_r(b) mod p : 2 <= b <= p-1 }.
/// Immutable once built; shared read-only by all search workers.
class SieveTable {
public:
    /// Builds the full table for an odd prime p (p >= 3, p < 2^16).
    static SieveTable build(std::uint32_t p);

    std::uint32_t p() const { return p_; }

    /// Stored residue f_q(b) mod p, 2 <= b <= p-1, 1 <= q <= p-1.
    std::uint16_t value(std::uint32_t b, std::uint32_t q) const {
        return values_[static_cast<std::size_t>(b - 2) * (p_ - 1) + (q - 1)];
    }

    /// f_m(x) mod p for any m >= 1, given x_res = x mod p.
    /// x = 0 gives 1; x = 1 gives m mod p; otherwise the stored class value.
    std::uint32_t lookup_a(std::uint32_t x_res, std::uint64_t m) const {
        x_res %= p_;
        if (x_res == 0) return 1;
        if (x_res == 1) return static_cast<std::uint32_t>(m % p_);
        return value(x_res, exponent_class(m, p_));
    }

    /// True iff some residue y mod p (including y = 0 and y = 1) can have
    /// f_n(y) = a mod p. False certifies there is no solution mod p.
    bool n_feasible(std::uint32_t a, std::uint64_t n) const {
        if (a >= p_) throw std::invalid_argument("n_feasible: residue out of range");
        if (a == 1) return true;                     // y = 0 mod p
        if (a == n % p_) return true;                // y = 1 mod p
        const std::uint64_t* row =
            feasible_.data() + static_cast<std::size_t>(exponent_class(n, p_) - 1) * words_;
        return (row[a >> 6] >> (a & 63)) & 1;
    }

    /// Residues in feasible(r), ascending (diagnostic / test surface).
    std::vector<std::uint32_t> feasible_residues(std::uint32_t r) const;

    /// Raw row-major residues (b ascending, then q ascending), as serialized.
    const std::vector<std::uint16_t>& values() const { return values_; }

private:
    SieveTable() = default;
    void rebuild_feasible();
    friend std::vector<SieveTable> load_tables(const std::filesystem::path&);

    std::uint32_t p_ = 0;
    std::uint32_t words_ = 0;                // 64-bit words per feasible row
    std::vector<std::uint16_t> values_;      // (p-2)*(p-1) entries
    std::vector<std::uint64_t> feasible_;    // (p-1) rows of p-bit sets
};

/// Distinct failure kinds for the binary table file.
class TableIoError : public std::runtime_error {
public:
    enum class Kind { bad_magic, bad_version, truncated, corrupt, io };
    TableIoError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Little-endian binary format: "GMSV", version byte 1, u32 prime count;
/// per prime a u32 p followed by (p-2)*(p-1) u16 residues in row-major
/// (b ascending, q ascending) order. Feasible sets are recomputed on load.
void save_tables(const std::vector<SieveTable>& tables, const std::filesystem::path& path);
std::vector<SieveTable> load_tables(const std::filesystem::path& path);

/// Tables for all odd primes in [3, pmax), ascending.
std::vector<SieveTable> build_default_tables(std::uint32_t pmax);

}  // namespace gm

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "goormaghtigh/arith.hpp"
#include "goormaghtigh/report.hpp"
#include "goormaghtigh/tables.hpp"

namespace gm {

/// Theorem-backed search-space reductions; each can be disabled for audit runs.
struct FilterToggles {
    bool use_m_min = true;           // m >= m_min (53 by default)
    bool use_n_ge_7 = true;          // n >= 7 (n = 3, 5 ruled out separately)
    bool use_ratio_exclusion = true; // skip (m-1) = 3(n-1)
    bool use_y_prune = true;         // y exceeds y_floor, bounding n
};

struct ShardSpec {
    std::uint32_t index = 1;  // 1-based
    std::uint32_t count = 1;
};

struct SearchConfig {
    std::uint32_t digits = 700;        // search bound 10^digits
    std::uint32_t m_min = 53;
    std::uint32_t x_min = 3;           // 2 admits the Mersenne column in audit runs
    std::uint32_t sieve_pmax = 1024;   // tables for odd primes in [3, pmax)
    std::uint64_t y_floor = 100000;    // exclusive lower bound for y
    std::uint64_t x_block = std::uint64_t(1) << 20;
    FilterToggles filters;
    ShardSpec shard;
    bool adaptive_order = false;       // reorder table trial by witness success

    void validate() const;             // throws std::invalid_argument
    /// Fixed-order key=value text; the identity that config_hash fingerprints.
    std::string canonical_text() const;
    std::uint64_t config_hash() const { return fnv1a_64(canonical_text()); }
};

/// A triple (m, x, n) in the search space.
struct Candidate {
    std::uint32_t m = 0;
    std::uint64_t x = 0;
    std::uint32_t n = 0;
    friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// An exactly verified pair of repunit representations of the same value.
struct Solution {
    std::uint64_t x = 0;
    std::uint32_t m = 0;
    Natural y;
    std::uint32_t n = 0;
    Natural value;  // N = f_m(x) = f_n(y)
    bool n_prime = false;
    bool value_probable_prime = false;
};

/// Ascending primes m with m >= the effective floor and f_m(base) < 10^digits,
/// where base is the smallest searched x (3 by default).
std::vector<std::uint32_t> m_candidates(const SearchConfig& cfg);

struct XRange {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    bool empty() const { return hi < lo; }
    std::uint64_t size() const { return empty() ? 0 : hi - lo + 1; }
};

/// All x >= cfg.x_min with f_m(x) < 10^digits (exact boundary comparison).
/// Throws std::overflow_error if the range would exceed the machine word.
XRange x_range(std::uint32_t m, const SearchConfig& cfg);

/// The excluded exponent ratio, oriented for m > n: (m-1) = 3(n-1).
/// Both arguments must be prime with m > n.
bool excluded_pair(std::uint32_t m, std::uint32_t n);

/// Primes n in [n_floor, m) after the ratio exclusion and the y-floor prune
/// (n - 1 <= log f_m(x) / log y_min with y_min = max(x+1, y_floor+1)).
std::vector<std::uint32_t> n_candidates(std::uint32_t m, std::uint64_t x,
                                        const SearchConfig& cfg);

/// First table prime witnessing that f_n(y) = f_m(x) has no solution mod p,
/// or nullopt if every table admits a local solution ("survived").
std::optional<std::uint32_t> rule_out(const std::vector<SieveTable>& tables,
                                      std::uint32_t m, std::uint64_t x, std::uint32_t n);

/// Exact fallback for survivors: computes N = f_m(x) and binary-searches
/// y in (x, N] for f_n(y) = N, using strict monotonicity in y.
std::optional<Solution> verify_candidate(std::uint32_t m, std::uint64_t x, std::uint32_t n);

class MissingTablesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SearchOptions {
    const Checkpoint* resume_from = nullptr;     // validated against cfg hash
    std::filesystem::path checkpoint_path = {};  // empty: no checkpointing
    unsigned threads = 1;
    std::function<bool()> keep_going;            // polled at block boundaries
};

struct ShardReport {
    std::vector<Solution> solutions;
    std::vector<Candidate> survivors;
    bool completed = true;  // false when stopped by keep_going
    std::uint64_t blocks_processed = 0;
    std::uint64_t ruled_out_count = 0;
};

/// Runs the full m -> x -> n -> rule_out pipeline for one shard, emitting
/// solution/survivor/progress/stats records to the sink in deterministic
/// order. The solution and survivor sets do not depend on table ordering,
/// sharding, thread count, or interruption at block boundaries.
ShardReport search_shard(const SearchConfig& cfg, const std::vector<SieveTable>& tables,
                         RecordSink& sink, const SearchOptions& opts = {});

}  // namespace gm

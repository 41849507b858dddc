#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "goormaghtigh/arith.hpp"
#include "goormaghtigh/search.hpp"

namespace gm {

/// A value with all of its nontrivial (length >= 3) repunit representations.
struct RepunitHit {
    Natural value;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> representations;  // (base, length), base ascending
};

/// Brute-force ground truth: every N <= limit with at least two nontrivial
/// repunit representations, ascending. Enumerates the per-length streams
/// f_k(2), f_k(3), ... by a sorted merge, so memory stays proportional to
/// the number of lengths rather than the number of repunits.
std::vector<RepunitHit> oracle_enumerate(const Natural& limit);

/// oracle_enumerate filtered to hits where N and at least two representation
/// bases are all prime.
std::vector<RepunitHit> bateman_stemmler(const Natural& limit);

/// Exhaustive x = 2 closure: for every prime m with 2^m - 1 < 10^digits,
/// searches every n in [3, m) for a second representation f_n(y) = 2^m - 1.
std::vector<Solution> mersenne_scan(std::uint32_t digits);

}  // namespace gm

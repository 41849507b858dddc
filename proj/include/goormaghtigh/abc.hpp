#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "goormaghtigh/arith.hpp"

namespace gm {

class FactorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FactorOptions {
    std::uint64_t trial_limit = 1'000'000;       // trial-division prime bound (capped at 10^6)
    std::uint64_t rho_iterations = 50'000'000;   // total rho effort budget
};

/// Prime factorization, primes ascending. Primes above the trial bound are
/// probable primes.
struct Factorization {
    std::vector<std::pair<Natural, unsigned>> factors;
};

/// Throws FactorError if a composite cofactor resists the effort budget.
Factorization factorize(const Natural& n, const FactorOptions& opts = {});

/// Product of the distinct primes dividing n; radical(1) = 1.
Natural radical(const Natural& n, const FactorOptions& opts = {});

/// Exact rational, normalized with den > 0.
struct Rational {
    long long num = 0;
    long long den = 1;
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// The y-exponent 15/4 + (5/4)(n+1)/m - n in the conditional finiteness
/// argument. Requires n > m >= 5 (that argument's exponent orientation).
Rational exponent_margin(std::uint32_t m, std::uint32_t n);

/// The abc triple of a repunit coincidence f_m(x) = f_n(y):
/// a = x^m(y-1)/g, b = (x-y)/g, c = y^n(x-1)/g for
/// g = gcd(x^m(y-1), x-y, y^n(x-1)). When the residual
/// x^m(y-1) + (x-y) - y^n(x-1) is zero, a + b = c with a, b, c pairwise
/// coprime, and rad/quality are populated.
struct AbcTriple {
    std::uint64_t x = 0, y = 0;
    std::uint32_t m = 0, n = 0;
    Natural g, a, c;
    long long b = 0;          // negative: x < y
    bool is_solution = false;
    std::string residual;     // signed decimal
    std::optional<Natural> rad;      // rad(|abc|), solutions only
    std::optional<double> quality;   // ln c / ln rad, solutions only
};

/// Requires y > x >= 2 and m, n >= 2. Non-solutions come back flagged
/// (is_solution = false) with rad/quality absent, never as an error.
AbcTriple abc_triple(std::uint64_t x, std::uint64_t y, std::uint32_t m, std::uint32_t n,
                     const FactorOptions& opts = {});

/// x(y-1)(y-x)y(x-1)/g, the radical bound for the triple above.
Natural rad_upper_bound(std::uint64_t x, std::uint64_t y, const Natural& g);

/// JSON record for the CLI: {x, y, m, n, g, a, b, c, residual, rad, quality}.
std::string abc_record(const AbcTriple& t);

}  // namespace gm

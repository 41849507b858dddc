#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace gm {

/// Arbitrary-precision nonnegative integer. Canonical GMP representation,
/// round-trips exactly through decimal strings (the external encoding for
/// every value too large for a machine word).
class Natural {
public:
    Natural() : v_(0) {}
    Natural(unsigned long long x) { set_u64(x); }
    Natural(int x) {
        if (x < 0) throw std::invalid_argument("Natural: negative value");
        set_u64(static_cast<unsigned long long>(x));
    }
    Natural(long long x) {
        if (x < 0) throw std::invalid_argument("Natural: negative value");
        set_u64(static_cast<unsigned long long>(x));
    }
    Natural(unsigned x) { set_u64(x); }
    Natural(unsigned long x) { set_u64(x); }
    Natural(long x) {
        if (x < 0) throw std::invalid_argument("Natural: negative value");
        set_u64(static_cast<unsigned long long>(x));
    }
    /// Parses a decimal string. Rejects empty strings, signs and non-digits.
    explicit Natural(std::string_view decimal);

    static Natural from_raw(mpz_class z);
    const mpz_class& raw() const { return v_; }

    std::string str() const { return v_.get_str(); }

    bool is_zero() const { return mpz_sgn(v_.get_mpz_t()) == 0; }
    bool fits_u64() const;
    std::uint64_t to_u64() const;  // throws std::overflow_error if too large
    /// Number of bits in the binary representation (0 has bit_length 0).
    std::size_t bit_length() const;

    static Natural pow(const Natural& base, unsigned long exp);
    static Natural pow10(unsigned long exp);
    static Natural gcd(const Natural& a, const Natural& b);
    /// Floor of the k-th root, k >= 1.
    static Natural iroot(const Natural& n, unsigned long k);

    Natural& operator+=(const Natural& o) { v_ += o.v_; return *this; }
    Natural& operator*=(const Natural& o) { v_ *= o.v_; return *this; }
    Natural& operator-=(const Natural& o);  // throws std::underflow_error below zero
    Natural& operator/=(const Natural& o);  // floor division; throws on zero divisor
    Natural& operator%=(const Natural& o);

    friend Natural operator+(Natural a, const Natural& b) { a += b; return a; }
    friend Natural operator-(Natural a, const Natural& b) { a -= b; return a; }
    friend Natural operator*(Natural a, const Natural& b) { a *= b; return a; }
    friend Natural operator/(Natural a, const Natural& b) { a /= b; return a; }
    friend Natural operator%(Natural a, const Natural& b) { a %= b; return a; }

    friend bool operator==(const Natural& a, const Natural& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    void set_u64(unsigned long long x);
    mpz_class v_;
};

/// f_length(base) = 1 + base + ... + base^(length-1), computed exactly.
/// Requires base >= 2, length >= 1.
Natural repunit_exact(const Natural& base, std::uint32_t length);
Natural repunit_exact(std::uint64_t base, std::uint32_t length);

/// f_length(base) mod p for an odd prime p. base may be unreduced.
/// base = 0 mod p gives 1; base = 1 mod p gives length mod p; otherwise
/// (base^length - 1) * (base - 1)^-1 mod p.
std::uint64_t repunit_mod(std::uint64_t base, std::uint64_t length, std::uint64_t p);

/// Deterministic primality for any 64-bit integer.
bool is_prime_small(std::uint64_t k);

/// Baillie-PSW: strong base-2 probable prime plus strong Lucas (Selfridge
/// parameters). Deterministic below 2^64; no false composites are known.
bool is_probable_prime(const Natural& n);

/// Ascending primes in the closed interval [lo, hi]. Sieve-backed; the
/// toolkit only needs ranges up to the trial-division bound (hi <= 10^8).
std::vector<std::uint64_t> primes_in(std::int64_t lo, std::int64_t hi);

// modular helpers shared by the sieve tables
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m);
std::uint64_t inv_mod_prime(std::uint64_t a, std::uint64_t p);

}  // namespace gm

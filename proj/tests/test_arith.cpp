#include <doctest.h>

#include <random>

#include "goormaghtigh/arith.hpp"

using namespace gm;

namespace {

// independent oracle: trial division up to sqrt
bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST_SUITE_BEGIN("arith");

TEST_CASE("Natural round-trips decimal strings") {
    CHECK(Natural("0").str() == "0");
    CHECK(Natural(12345).str() == "12345");
    const std::string big = "123456789012345678901234567890123456789";
    CHECK(Natural(big).str() == big);
    CHECK(Natural("007").str() == "7");  // canonical form
    CHECK_THROWS_AS(Natural(""), std::invalid_argument);
    CHECK_THROWS_AS(Natural("-5"), std::invalid_argument);
    CHECK_THROWS_AS(Natural("12x"), std::invalid_argument);
}

TEST_CASE("Natural arithmetic and guards") {
    CHECK((Natural(7) + Natural(8)).str() == "15");
    CHECK((Natural(100) - Natural(1)) == Natural(99));
    CHECK_THROWS_AS(Natural(3) - Natural(4), std::underflow_error);
    CHECK_THROWS_AS(Natural(3) / Natural(0), std::invalid_argument);
    CHECK(Natural::pow10(3) == Natural(1000));
    CHECK(Natural::pow(Natural(2), 64).str() == "18446744073709551616");
    CHECK(Natural::gcd(Natural(91136), Natural(91125)) == Natural(1));
    CHECK(Natural::iroot(Natural(8191), 3) == Natural(20));
    CHECK(Natural(8191).bit_length() == 13);
    CHECK(Natural(0).bit_length() == 0);
    CHECK(!Natural::pow(Natural(2), 70).fits_u64());
    CHECK_THROWS_AS(Natural::pow(Natural(2), 70).to_u64(), std::overflow_error);
}

TEST_CASE("repunit_exact on the known values") {
    CHECK(repunit_exact(2, 5) == Natural(31));
    CHECK(repunit_exact(5, 3) == Natural(31));
    CHECK(repunit_exact(2, 13) == Natural(8191));
    CHECK(repunit_exact(90, 3) == Natural(8191));
    for (std::uint64_t b : {2ull, 7ull, 90ull, 1000000007ull})
        CHECK(repunit_exact(b, 1) == Natural(1));
    CHECK(repunit_exact(10, 6).str() == "111111");
    CHECK_THROWS_AS(repunit_exact(1, 5), std::invalid_argument);
    CHECK_THROWS_AS(repunit_exact(2, 0), std::invalid_argument);
}

TEST_CASE("repunit recurrence, congruence and monotonicity") {
    for (std::uint64_t base : {2ull, 3ull, 10ull, 90ull, 65537ull}) {
        for (std::uint32_t len = 2; len <= 40; ++len) {
            CHECK(repunit_exact(base, len) ==
                  Natural(1) + Natural(base) * repunit_exact(base, len - 1));
        }
    }
    for (std::uint64_t base : {3ull, 4ull, 11ull, 97ull})
        for (std::uint32_t len = 1; len <= 30; ++len)
            CHECK(repunit_exact(base, len) % Natural(base - 1) ==
                  Natural(len) % Natural(base - 1));
    for (std::uint32_t len = 2; len <= 12; ++len)
        for (std::uint64_t base = 2; base < 40; ++base)
            CHECK(repunit_exact(base, len) < repunit_exact(base + 1, len));
    for (std::uint64_t base : {2ull, 5ull, 10ull})
        for (std::uint32_t len = 1; len <= 20; ++len)
            CHECK(repunit_exact(base, len) < repunit_exact(base, len + 1));
}

TEST_CASE("repunit_mod examples and special bases") {
    // oracles: exact values reduced mod p
    CHECK((repunit_exact(2, 5) % Natural(7)).to_u64() == 3);
    CHECK(repunit_mod(2, 5, 7) == 3);
    CHECK(repunit_exact(8, 5) == Natural(4681));
    CHECK((repunit_exact(8, 5) % Natural(7)).to_u64() == 5);
    CHECK(repunit_mod(8, 5, 7) == 5);  // 8 = 1 mod 7, so f = length mod 7
    CHECK(repunit_mod(7, 3, 7) == 1);  // base = 0 mod p
    CHECK(repunit_mod(0, 9, 11) == 1);
    CHECK(repunit_mod(1, 9, 11) == 9);
    CHECK_THROWS_AS(repunit_mod(2, 0, 7), std::invalid_argument);
    CHECK_THROWS_AS(repunit_mod(2, 5, 4), std::invalid_argument);
}

TEST_CASE("repunit_mod agrees with exact arithmetic") {
    for (std::uint64_t p : primes_in(3, 61)) {
        for (std::uint64_t base = 0; base <= 2 * p; ++base) {
            for (std::uint64_t len = 1; len <= p + 2; ++len) {
                const Natural exact = base == 0 ? Natural(1)
                                    : base == 1 ? Natural(len)
                                                : repunit_exact(base, static_cast<std::uint32_t>(len));
                CHECK(repunit_mod(base, len, p) == (exact % Natural(p)).to_u64());
            }
        }
    }
}

TEST_CASE("repunit_mod periodicity in the exponent") {
    for (std::uint64_t p : primes_in(3, 61))
        for (std::uint64_t base = 2; base < p; ++base) {
            if (base % p == 1) continue;
            for (std::uint64_t len = 1; len <= p; ++len)
                CHECK(repunit_mod(base, len + (p - 1), p) == repunit_mod(base, len, p));
        }
}

TEST_CASE("is_prime_small basics") {
    CHECK(is_prime_small(2));
    CHECK(is_prime_small(53));
    CHECK(is_prime_small(8191));
    CHECK(!is_prime_small(0));
    CHECK(!is_prime_small(1));
    CHECK(!is_prime_small(90));
    CHECK(is_prime_small(18446744073709551557ull));  // largest 64-bit prime
    CHECK(!is_prime_small(3215031751ull));           // strong pseudoprime to 2,3,5,7
}

TEST_CASE("is_prime_small agrees with trial division") {
    for (std::uint64_t n = 0; n <= 20000; ++n)
        CHECK(is_prime_small(n) == trial_division_prime(n));
}

TEST_CASE("is_probable_prime word-sized cases") {
    CHECK(is_probable_prime(Natural(31)));
    CHECK(!is_probable_prime(Natural(0)));
    CHECK(!is_probable_prime(Natural(1)));
    // oracle: trial division
    CHECK(!trial_division_prime(1111111));
    CHECK(1111111ull == 239ull * 4649ull);
    CHECK(!is_probable_prime(Natural(1111111)));
}

TEST_CASE("is_probable_prime above the machine word") {
    auto mersenne = [](unsigned long e) { return Natural::pow(Natural(2), e) - Natural(1); };
    for (unsigned long e : {89ul, 107ul, 127ul}) CHECK(is_probable_prime(mersenne(e)));
    for (unsigned long e : {67ul, 83ul, 97ul, 101ul}) CHECK(!is_probable_prime(mersenne(e)));
    CHECK(!is_probable_prime(mersenne(61) * mersenne(61)));  // perfect square
    CHECK(!is_probable_prime(mersenne(61) * mersenne(89)));
    CHECK(!is_probable_prime(Natural::pow(Natural(10), 30)));
    // 10^30 + 57 is prime; its neighbors are not
    CHECK(is_probable_prime(Natural::pow(Natural(10), 30) + Natural(57)));
    CHECK(!is_probable_prime(Natural::pow(Natural(10), 30) + Natural(55)));
}

TEST_CASE("primes_in") {
    CHECK(primes_in(53, 60) == std::vector<std::uint64_t>{53, 59});
    CHECK(primes_in(7, 7) == std::vector<std::uint64_t>{7});
    CHECK(primes_in(8, 10).empty());
    CHECK(primes_in(-5, 2) == std::vector<std::uint64_t>{2});
    CHECK_THROWS_AS(primes_in(10, 5), std::invalid_argument);
    auto got = primes_in(0, 2000);
    std::vector<std::uint64_t> want;
    for (std::uint64_t n = 0; n <= 2000; ++n)
        if (trial_division_prime(n)) want.push_back(n);
    CHECK(got == want);
}

TEST_SUITE_END();

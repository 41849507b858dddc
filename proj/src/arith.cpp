#include "goormaghtigh/arith.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace gm {

Natural::Natural(std::string_view decimal) {
    if (decimal.empty())
        throw std::invalid_argument("Natural: empty decimal string");
    for (char c : decimal)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("Natural: not a decimal digit string: " +
                                        std::string(decimal));
    v_.set_str(std::string(decimal), 10);
}

void Natural::set_u64(unsigned long long x) {
    static_assert(sizeof(unsigned long) == 8, "LP64 expected");
    v_ = static_cast<unsigned long>(x);
}

Natural Natural::from_raw(mpz_class z) {
    if (mpz_sgn(z.get_mpz_t()) < 0)
        throw std::invalid_argument("Natural: negative value");
    Natural n;
    n.v_ = std::move(z);
    return n;
}

bool Natural::fits_u64() const { return mpz_fits_ulong_p(v_.get_mpz_t()) != 0; }

std::uint64_t Natural::to_u64() const {
    if (!fits_u64())
        throw std::overflow_error("Natural: does not fit in 64 bits");
    return mpz_get_ui(v_.get_mpz_t());
}

std::size_t Natural::bit_length() const {
    return is_zero() ? 0 : mpz_sizeinbase(v_.get_mpz_t(), 2);
}

Natural Natural::pow(const Natural& base, unsigned long exp) {
    Natural r;
    mpz_pow_ui(r.v_.get_mpz_t(), base.v_.get_mpz_t(), exp);
    return r;
}

Natural Natural::pow10(unsigned long exp) {
    Natural r;
    mpz_ui_pow_ui(r.v_.get_mpz_t(), 10, exp);
    return r;
}

Natural Natural::gcd(const Natural& a, const Natural& b) {
    Natural r;
    mpz_gcd(r.v_.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
    return r;
}

Natural Natural::iroot(const Natural& n, unsigned long k) {
    if (k == 0)
        throw std::invalid_argument("iroot: k must be >= 1");
    Natural r;
    mpz_root(r.v_.get_mpz_t(), n.v_.get_mpz_t(), k);
    return r;
}

Natural& Natural::operator-=(const Natural& o) {
    if (v_ < o.v_)
        throw std::underflow_error("Natural: subtraction below zero");
    v_ -= o.v_;
    return *this;
}

Natural& Natural::operator/=(const Natural& o) {
    if (o.is_zero())
        throw std::invalid_argument("Natural: division by zero");
    mpz_fdiv_q(v_.get_mpz_t(), v_.get_mpz_t(), o.v_.get_mpz_t());
    return *this;
}

Natural& Natural::operator%=(const Natural& o) {
    if (o.is_zero())
        throw std::invalid_argument("Natural: modulo by zero");
    mpz_fdiv_r(v_.get_mpz_t(), v_.get_mpz_t(), o.v_.get_mpz_t());
    return *this;
}

Natural repunit_exact(const Natural& base, std::uint32_t length) {
    if (base < Natural(2))
        throw std::invalid_argument("repunit_exact: base must be >= 2");
    if (length < 1)
        throw std::invalid_argument("repunit_exact: length must be >= 1");
    // (base^length - 1) / (base - 1), exact
    mpz_class num;
    mpz_pow_ui(num.get_mpz_t(), base.raw().get_mpz_t(), length);
    num -= 1;
    mpz_class den = base.raw() - 1;
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return Natural::from_raw(std::move(q));
}

Natural repunit_exact(std::uint64_t base, std::uint32_t length) {
    return repunit_exact(Natural(base), length);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t inv_mod_prime(std::uint64_t a, std::uint64_t p) {
    return pow_mod(a, p - 2, p);
}

std::uint64_t repunit_mod(std::uint64_t base, std::uint64_t length, std::uint64_t p) {
    if (p < 3 || (p & 1) == 0)
        throw std::invalid_argument("repunit_mod: p must be an odd prime");
    if (length < 1)
        throw std::invalid_argument("repunit_mod: length must be >= 1");
    base %= p;
    if (base == 0) return 1;
    if (base == 1) return length % p;
    std::uint64_t num = pow_mod(base, length, p);
    num = (num + p - 1) % p;
    return mul_mod(num, inv_mod_prime(base - 1, p), p);
}

namespace {

bool miller_rabin_u64(std::uint64_t n, std::uint64_t a) {
    a %= n;
    if (a == 0) return true;
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime_small(std::uint64_t k) {
    if (k < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        if (k == p) return true;
        if (k % p == 0) return false;
    }
    // Sinclair base set: deterministic for all n < 2^64
    for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull,
                            9780504ull, 1795265022ull})
        if (!miller_rabin_u64(k, a)) return false;
    return true;
}

namespace {

// strong probable-prime test to base a over mpz, n odd >= 3
bool mpz_strong_prp(const mpz_class& n, unsigned long a) {
    mpz_class d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    mpz_class x, base(static_cast<unsigned long>(a));
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return true;
    }
    return false;
}

// Strong Lucas probable-prime test with Selfridge (method A) parameters.
bool mpz_strong_lucas_prp(const mpz_class& n) {
    // pick D = 5, -7, 9, -11, ... with jacobi(D, n) = -1
    long d_abs = 5;
    int sign = 1;
    mpz_class D;
    for (;;) {
        D = sign * d_abs;
        int j = mpz_kronecker(D.get_mpz_t(), n.get_mpz_t());
        if (j == -1) break;
        if (j == 0) return false;  // 1 < gcd(D, n) < n for n > |D|
        if (d_abs == 13 && mpz_perfect_square_p(n.get_mpz_t())) return false;
        d_abs += 2;
        sign = -sign;
    }
    // P = 1, Q = (1 - D) / 4
    mpz_class Q = (1 - D) / 4;
    mpz_class delta = n + 1;
    unsigned long s = mpz_scan1(delta.get_mpz_t(), 0);
    mpz_class t;
    mpz_fdiv_q_2exp(t.get_mpz_t(), delta.get_mpz_t(), s);

    auto half_mod = [&n](mpz_class v) {
        if (mpz_odd_p(v.get_mpz_t())) v += n;
        mpz_fdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), 1);
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        return v;
    };

    // compute U_t, V_t, Q^t by a left-to-right ladder
    mpz_class U = 1, V = 1, Qk;  // U_1 = 1, V_1 = P = 1
    mpz_fdiv_r(Qk.get_mpz_t(), Q.get_mpz_t(), n.get_mpz_t());
    long bits = static_cast<long>(mpz_sizeinbase(t.get_mpz_t(), 2));
    for (long i = bits - 2; i >= 0; --i) {
        // double: U_2k = U*V, V_2k = V^2 - 2 Q^k
        U = (U * V) % n;
        V = (V * V - 2 * Qk) % n;
        Qk = (Qk * Qk) % n;
        if (mpz_tstbit(t.get_mpz_t(), static_cast<unsigned long>(i))) {
            // increment: U' = (P U + V)/2, V' = (D U + P V)/2, with P = 1
            mpz_class U2 = half_mod(U + V);
            V = half_mod(D * U + V);
            U = U2;
            Qk = (Qk * Q) % n;
        }
    }
    mpz_class zero_check;
    mpz_fdiv_r(zero_check.get_mpz_t(), U.get_mpz_t(), n.get_mpz_t());
    if (zero_check == 0) return true;
    mpz_fdiv_r(zero_check.get_mpz_t(), V.get_mpz_t(), n.get_mpz_t());
    if (zero_check == 0) return true;
    for (unsigned long r = 1; r < s; ++r) {
        V = (V * V - 2 * Qk) % n;
        mpz_fdiv_r(zero_check.get_mpz_t(), V.get_mpz_t(), n.get_mpz_t());
        if (zero_check == 0) return true;
        Qk = (Qk * Qk) % n;
    }
    return false;
}

}  // namespace

bool is_probable_prime(const Natural& n) {
    if (n.fits_u64()) return is_prime_small(n.to_u64());
    const mpz_class& N = n.raw();
    if (mpz_even_p(N.get_mpz_t())) return false;
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                            29ull, 31ull, 37ull, 41ull, 43ull, 47ull})
        if (mpz_divisible_ui_p(N.get_mpz_t(), p)) return false;
    if (!mpz_strong_prp(N, 2)) return false;
    return mpz_strong_lucas_prp(N);
}

std::vector<std::uint64_t> primes_in(std::int64_t lo, std::int64_t hi) {
    if (lo > hi)
        throw std::invalid_argument("primes_in: lo must be <= hi");
    std::vector<std::uint64_t> out;
    if (hi < 2) return out;
    if (hi > 100'000'000)
        throw std::invalid_argument("primes_in: range bound above 10^8");
    std::uint64_t lo_u = lo < 2 ? 2 : static_cast<std::uint64_t>(lo);
    std::uint64_t hi_u = static_cast<std::uint64_t>(hi);
    std::vector<bool> composite(hi_u + 1, false);
    for (std::uint64_t i = 2; i * i <= hi_u; ++i)
        if (!composite[i])
            for (std::uint64_t j = i * i; j <= hi_u; j += i) composite[j] = true;
    for (std::uint64_t i = lo_u; i <= hi_u; ++i)
        if (!composite[i]) out.push_back(i);
    return out;
}

}  // namespace gm

#include "goormaghtigh/abc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

namespace gm {

namespace {

const std::vector<std::uint64_t>& trial_primes() {
    static const std::vector<std::uint64_t> primes = primes_in(2, 1'000'000);
    return primes;
}

// Brent-cycle rho with batched gcds. n odd composite with no factor below
// the trial bound. Deterministic polynomial sequence x^2 + c, c = 1, 2, ...
mpz_class pollard_brent(const mpz_class& n, std::uint64_t& budget) {
    for (unsigned long c = 1;; ++c) {
        mpz_class y = 2, q = 1, g = 1, x, ys;
        std::uint64_t r = 1;
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                const std::uint64_t steps = std::min<std::uint64_t>(128, r - k);
                for (std::uint64_t i = 0; i < steps; ++i) {
                    y = (y * y + c) % n;
                    q = (q * abs(x - y)) % n;
                }
                if (budget < steps) throw FactorError("factoring effort budget exhausted");
                budget -= steps;
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += steps;
            }
            r *= 2;
        }
        if (g == n) {
            // overshot inside a batch; replay one step at a time
            do {
                ys = (ys * ys + c) % n;
                mpz_class d = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
                if (budget == 0) throw FactorError("factoring effort budget exhausted");
                --budget;
            } while (g == 1);
        }
        if (g != n) return g;
        // cycle collapsed for this c; try the next polynomial
    }
}

}  // namespace

Factorization factorize(const Natural& n, const FactorOptions& opts) {
    if (n.is_zero())
        throw std::invalid_argument("factorize: n must be >= 1");
    Factorization out;
    mpz_class v = n.raw();
    if (v == 1) return out;

    const std::uint64_t tl = std::min<std::uint64_t>(opts.trial_limit, 1'000'000);
    for (std::uint64_t p : trial_primes()) {
        if (p > tl) break;
        if (mpz_fits_ulong_p(v.get_mpz_t())) {
            std::uint64_t vs = mpz_get_ui(v.get_mpz_t());
            if (vs == 1 || p * p > vs) break;
        }
        unsigned e = 0;
        while (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(p))) {
            mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(p));
            ++e;
        }
        if (e) out.factors.emplace_back(Natural(p), e);
    }
    // all factors <= tl are stripped, so a leftover below tl^2 is prime
    if (v > 1 && mpz_fits_ulong_p(v.get_mpz_t()) && mpz_get_ui(v.get_mpz_t()) <= tl * tl) {
        out.factors.emplace_back(Natural(mpz_get_ui(v.get_mpz_t())), 1u);
        v = 1;
    }

    std::uint64_t budget = opts.rho_iterations;
    std::vector<mpz_class> pending;
    if (v > 1) pending.push_back(v);
    std::vector<mpz_class> primes_found;
    while (!pending.empty()) {
        mpz_class c = std::move(pending.back());
        pending.pop_back();
        if (is_probable_prime(Natural::from_raw(c))) {
            primes_found.push_back(std::move(c));
            continue;
        }
        if (mpz_perfect_square_p(c.get_mpz_t())) {
            mpz_class r;
            mpz_sqrt(r.get_mpz_t(), c.get_mpz_t());
            pending.push_back(r);
            pending.push_back(std::move(r));
            continue;
        }
        mpz_class f = pollard_brent(c, budget);
        pending.push_back(c / f);
        pending.push_back(std::move(f));
    }
    // merge the rho-found primes into the exponent list
    std::sort(primes_found.begin(), primes_found.end());
    for (std::size_t i = 0; i < primes_found.size();) {
        std::size_t j = i;
        while (j < primes_found.size() && primes_found[j] == primes_found[i]) ++j;
        out.factors.emplace_back(Natural::from_raw(primes_found[i]),
                                 static_cast<unsigned>(j - i));
        i = j;
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

Natural radical(const Natural& n, const FactorOptions& opts) {
    if (n.is_zero())
        throw std::invalid_argument("radical: n must be >= 1");
    Natural r(1);
    for (const auto& [p, e] : factorize(n, opts).factors) r *= p;
    return r;
}

Rational exponent_margin(std::uint32_t m, std::uint32_t n) {
    if (m < 5)
        throw std::invalid_argument("exponent_margin: m must be >= 5");
    if (n <= m)
        throw std::invalid_argument("exponent_margin: requires n > m");
    if (n > 1'000'000)
        throw std::invalid_argument("exponent_margin: n out of supported range");
    // 15/4 + (5/4)(n+1)/m - n over the common denominator 4m
    long long num = 15ll * m + 5ll * (n + 1) - 4ll * m * n;
    long long den = 4ll * m;
    long long g = std::gcd(num < 0 ? -num : num, den);
    return {num / g, den / g};
}

namespace {

double natural_log(const Natural& v) {
    long e;
    double d = mpz_get_d_2exp(&e, v.raw().get_mpz_t());
    return std::log(d) + double(e) * std::log(2.0);
}

}  // namespace

AbcTriple abc_triple(std::uint64_t x, std::uint64_t y, std::uint32_t m, std::uint32_t n,
                     const FactorOptions& opts) {
    if (!(y > x && x >= 2))
        throw std::invalid_argument("abc_triple: requires y > x >= 2");
    if (m < 2 || n < 2)
        throw std::invalid_argument("abc_triple: requires m, n >= 2");

    const mpz_class X = Natural(x).raw(), Y = Natural(y).raw();
    mpz_class xm, yn;
    mpz_pow_ui(xm.get_mpz_t(), X.get_mpz_t(), m);
    mpz_pow_ui(yn.get_mpz_t(), Y.get_mpz_t(), n);
    const mpz_class t1 = xm * (Y - 1);   // x^m (y-1)
    const mpz_class t2 = X - Y;          // negative
    const mpz_class t3 = yn * (X - 1);   // y^n (x-1)

    mpz_class g;
    mpz_gcd(g.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t3.get_mpz_t());

    AbcTriple t;
    t.x = x;
    t.y = y;
    t.m = m;
    t.n = n;
    t.g = Natural::from_raw(g);
    t.a = Natural::from_raw(t1 / g);
    t.c = Natural::from_raw(t3 / g);
    mpz_class b = t2 / g;
    if (!mpz_fits_slong_p(b.get_mpz_t()))
        throw std::overflow_error("abc_triple: b does not fit a machine word");
    t.b = mpz_get_si(b.get_mpz_t());

    const mpz_class residual = t1 + t2 - t3;
    t.residual = residual.get_str();
    t.is_solution = residual == 0;
    if (t.is_solution) {
        mpz_class prod = t1 / g;
        prod *= abs(b);
        prod *= t3 / g;
        t.rad = radical(Natural::from_raw(prod), opts);
        t.quality = natural_log(t.c) / natural_log(*t.rad);
    }
    return t;
}

Natural rad_upper_bound(std::uint64_t x, std::uint64_t y, const Natural& g) {
    if (!(y > x && x >= 2))
        throw std::invalid_argument("rad_upper_bound: requires y > x >= 2");
    if (g.is_zero())
        throw std::invalid_argument("rad_upper_bound: g must be >= 1");
    mpz_class prod = Natural(x).raw();
    prod *= Natural(y - 1).raw();
    prod *= Natural(y - x).raw();
    prod *= Natural(y).raw();
    prod *= Natural(x - 1).raw();
    if (!mpz_divisible_p(prod.get_mpz_t(), g.raw().get_mpz_t()))
        throw std::invalid_argument("rad_upper_bound: g does not divide the product");
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), prod.get_mpz_t(), g.raw().get_mpz_t());
    return Natural::from_raw(std::move(q));
}

std::string abc_record(const AbcTriple& t) {
    nlohmann::ordered_json j;
    j["x"] = t.x;
    j["y"] = t.y;
    j["m"] = t.m;
    j["n"] = t.n;
    j["g"] = t.g.str();
    j["a"] = t.a.str();
    j["b"] = t.b;
    j["c"] = t.c.str();
    j["residual"] = t.residual;
    if (t.rad) j["rad"] = t.rad->str();
    if (t.quality) j["quality"] = *t.quality;
    return j.dump();
}

}  // namespace gm

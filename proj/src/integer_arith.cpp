#include "catcode/integer_arith.hpp"

#include <cmath>
#include <numeric>

#include "catcode/errors.hpp"

namespace catcode {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<__uint128_t>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    base %= m;
    while (e) {
        if (e & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

bool composite_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    int s = 0;
    std::uint64_t d = n - 1;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // This witness set is exact for every n < 3.3 * 10^24.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (composite_witness(n, a, d, s)) return false;
    return true;
}

std::uint64_t pow_clamped(std::uint64_t base, unsigned exp) {
    constexpr std::uint64_t cap = (1ull << 63) - 1;
    __uint128_t acc = 1;
    for (unsigned i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > cap) return cap;
    }
    return static_cast<std::uint64_t>(acc);
}

PrimeSearchWindow make_prime_window(std::uint64_t n_classes, unsigned k, double epsilon) {
    if (n_classes < 2 || n_classes > kMaxClasses)
        raise(errc::bad_parameters, "n_classes must be in [2, 2^40]");
    if (k < 1) raise(errc::bad_parameters, "k must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0)) raise(errc::bad_parameters, "epsilon must be in (0,1)");

    PrimeSearchWindow w;
    w.n_classes = n_classes;
    w.k = k;
    w.epsilon = epsilon;

    // lower: smallest L with L^k >= N, found integer-exactly.
    std::uint64_t lo = 2, hi = n_classes;
    while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (pow_clamped(mid, k) >= n_classes) hi = mid; else lo = mid + 1;
    }
    w.lower = lo < 2 ? 2 : lo;

    // upper: floor(N^(1/(k-epsilon))); non-integral exponent, nudged so that
    // upper^(k-epsilon) <= N < (upper+1)^(k-epsilon) under long double eval.
    long double ex = 1.0L / (static_cast<long double>(k) - static_cast<long double>(epsilon));
    long double raw = std::floor(std::pow(static_cast<long double>(n_classes), ex));
    constexpr long double kUpperCap = 4.6e18L; // keep the cast to u64 defined
    std::uint64_t up = static_cast<std::uint64_t>(raw < kUpperCap ? raw : kUpperCap);
    auto fits = [&](std::uint64_t u) {
        return std::pow(static_cast<long double>(u), static_cast<long double>(k) - static_cast<long double>(epsilon)) <=
               static_cast<long double>(n_classes);
    };
    while (up > 2 && !fits(up)) --up;
    while (fits(up + 1)) ++up;
    w.upper = up;
    return w;
}

std::vector<std::uint64_t> select_primes(const PrimeSearchWindow& window, std::size_t count) {
    if (count < 1) raise(errc::bad_parameters, "count must be >= 1");
    std::vector<std::uint64_t> out;
    out.reserve(count);
    for (std::uint64_t p = window.lower; p <= window.upper && out.size() < count; ++p)
        if (is_prime(p)) out.push_back(p);
    if (out.size() < count)
        raise(errc::insufficient_primes,
              "only " + std::to_string(out.size()) + " primes in [" + std::to_string(window.lower) + ", " +
                  std::to_string(window.upper) + "], need " + std::to_string(count) + " (widen epsilon)");
    return out;
}

bool validate_pairwise_coprime(std::span<const std::uint64_t> moduli) {
    if (moduli.empty()) raise(errc::bad_parameters, "empty modulus list");
    for (std::uint64_t m : moduli)
        if (m < 2) raise(errc::bad_parameters, "moduli must be >= 2");
    for (std::size_t i = 0; i < moduli.size(); ++i)
        for (std::size_t j = i + 1; j < moduli.size(); ++j)
            if (std::gcd(moduli[i], moduli[j]) != 1) return false;
    return true;
}

PAdicDigits p_adic_digits(std::uint64_t x, std::uint64_t p, unsigned k) {
    if (p < 2) raise(errc::bad_parameters, "p must be >= 2");
    if (p > 0xFFFFFFFFull) raise(errc::bad_parameters, "p must fit 32 bits");
    if (k < 1) raise(errc::bad_parameters, "k must be >= 1");
    if (x >= pow_clamped(p, k))
        raise(errc::out_of_range, std::to_string(x) + " >= " + std::to_string(p) + "^" + std::to_string(k));
    PAdicDigits d;
    d.p = p;
    d.digits.resize(k);
    for (unsigned i = 0; i < k; ++i) {
        d.digits[i] = static_cast<std::uint32_t>(x % p);
        x /= p;
    }
    return d;
}

std::uint64_t recompose(const PAdicDigits& d) {
    std::uint64_t x = 0;
    for (std::size_t i = d.digits.size(); i-- > 0;) x = x * d.p + d.digits[i];
    return x;
}

std::uint32_t poly_eval_mod_p(const PAdicDigits& d, std::uint32_t point) {
    std::uint64_t acc = 0;
    for (std::size_t i = d.digits.size(); i-- > 0;) acc = (acc * point + d.digits[i]) % d.p;
    return static_cast<std::uint32_t>(acc);
}

} // namespace catcode

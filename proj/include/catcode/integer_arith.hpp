#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace catcode {

// Class counts are capped so pair products stay inside 128-bit intermediates.
inline constexpr std::uint64_t kMaxClasses = 1ull << 40;

// Search range for code moduli: primes p with lower <= p <= upper, where
// lower = ceil(N^(1/k)) and upper = floor(N^(1/(k-epsilon))). Both ends
// closed; lower is integer-exact (smallest L with L^k >= N).
struct PrimeSearchWindow {
    std::uint64_t n_classes = 0;
    unsigned k = 1;
    double epsilon = 0.5;
    std::uint64_t lower = 2;
    std::uint64_t upper = 2;
};

PrimeSearchWindow make_prime_window(std::uint64_t n_classes, unsigned k, double epsilon = 0.5);

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

// The `count` smallest primes in [window.lower, window.upper], ascending.
// Throws insufficient_primes when the window is too narrow (widen epsilon).
std::vector<std::uint64_t> select_primes(const PrimeSearchWindow& window, std::size_t count);

bool validate_pairwise_coprime(std::span<const std::uint64_t> moduli);

// Base-p digit vector (x_0,...,x_{k-1}), least significant first; the
// reconstruction sum_i digits[i] * p^i is unique below p^k.
struct PAdicDigits {
    std::vector<std::uint32_t> digits;
    std::uint64_t p = 2;
};

PAdicDigits p_adic_digits(std::uint64_t x, std::uint64_t p, unsigned k);
std::uint64_t recompose(const PAdicDigits& d);

// sum_j digits[j] * point^j mod p, Horner form.
std::uint32_t poly_eval_mod_p(const PAdicDigits& d, std::uint32_t point);

// p^k clamped to 2^63-1 on overflow; enough for range checks.
std::uint64_t pow_clamped(std::uint64_t base, unsigned exp);

} // namespace catcode

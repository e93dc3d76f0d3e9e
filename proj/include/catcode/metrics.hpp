#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "catcode/codebook.hpp"
#include "catcode/rational.hpp"

namespace catcode {

struct CollisionMode {
    bool exhaustive = true;
    std::uint64_t samples = 0; // sampled mode: number of random pairs
    std::uint64_t seed = 0;
    std::uint64_t cap = 30'000; // exhaustive pair scans gated at this N
};

struct CollisionReport {
    unsigned max_collisions = 0;
    unsigned theoretical_bound = 0;
    bool bound_reachable = true; // false when the full size product is < N
    std::optional<std::pair<std::uint64_t, std::uint64_t>> witness_pair;
    bool exhaustive = true;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

// Max over id pairs of the number of agreeing sites. Exhaustive mode is the
// exact collision number; sampled mode is a lower bound.
CollisionReport collision_number(const Codebook& cb, const CollisionMode& mode);
CollisionReport collision_number(const SiteTable& table, const Codebook& cb, const CollisionMode& mode);

// Exact I(Y_i; Y_j) in nats for x uniform on [0, N); one pass over all ids.
double mutual_information(const Codebook& cb, unsigned site_i, unsigned site_j,
                          std::uint64_t cap = 10'000'000);

// Core MI on two materialized columns (exposed for oracle-style checks).
double mutual_information_columns(const std::vector<std::uint32_t>& col_i, const std::vector<std::uint32_t>& col_j,
                                  std::uint32_t size_i, std::uint32_t size_j);

// KL(dist(a) || dist(b)) for uniform-on-support vectors with equal set-bit
// counts splits into a multiple of log(inf) and a finite part (always zero
// here). The infinite coefficient |supp a \ supp b| / r is the useful signal.
struct ExtendedKL {
    Rational infinite_coefficient;
    double finite_part = 0.0;
};

ExtendedKL reduced_kl(const RHotVector& a, const RHotVector& b);

enum class AmklMode { automatic, brute_force, lemma_shortcut };

struct AmklReport {
    Rational coefficient;      // exact when weights are uniform
    double value = 0.0;        // always populated
    bool exact = true;
    std::string method;        // "lemma-shortcut" or "brute-force"
    std::uint64_t duplicate_support_ids = 0; // ids whose best match shares the full support
};

// Average over ids of min_j KL(dist(c_i) || dist(c_j)), reported as the
// coefficient of log(inf). The lemma shortcut uses the counting bound when
// every id provably attains it; the brute force scans all pairs.
AmklReport amkl_coefficient(const Codebook& cb, const std::vector<double>* weights = nullptr,
                            AmklMode mode = AmklMode::automatic, std::uint64_t brute_cap = 25'000);

struct HammingStats {
    std::uint64_t min = 0;
    double mean = 0.0;
    std::uint64_t max = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

// Hamming distance statistics over seeded random pairs of distinct ids.
HammingStats hamming_stats(const Codebook& cb, std::uint64_t samples, std::uint64_t seed);

// |A delta B| computed from the sorted set-bit lists.
std::uint64_t hamming_distance(const RHotVector& a, const RHotVector& b);

// Agreement count between two rows of a site table.
unsigned row_agreements(const SiteTable& t, std::uint64_t x, std::uint64_t y);

} // namespace catcode

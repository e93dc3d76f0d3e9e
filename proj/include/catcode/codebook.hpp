#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "catcode/gauss.hpp"
#include "catcode/integer_arith.hpp"

namespace catcode {

enum class Scheme { polynomial, remainder, gauss, coo, rmp, ecoc };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

struct PolynomialParams {
    std::uint64_t p = 2;
    unsigned k = 1;
    std::vector<std::uint32_t> eval_points;
};

struct RemainderParams {
    std::vector<std::uint64_t> moduli;
};

struct GaussParams {
    std::vector<GaussInt> moduli;
    // Runtime structures, rebuilt deterministically from moduli and N.
    DiscEmbedding disc;
    std::vector<GaussModulus> residue_systems;
};

struct CooParams {
    std::uint32_t total_bits = 2;
    // rank -> id, most frequent first; empty means identity. rank_of is the
    // inverse, materialized when an explicit order is given.
    std::vector<std::uint32_t> frequency_order;
    std::vector<std::uint32_t> rank_of;
};

struct RmpParams {
    unsigned m = 1;
    std::vector<std::uint32_t> kept_coords; // sorted subset of [0, 2^m)
    std::uint64_t seed = 0;
};

struct EcocParams {
    unsigned bits = 1;
    bool random_codewords = false; // default: binary expansion of the id
    std::uint64_t seed = 0;
    std::vector<std::uint32_t> codewords; // materialized when random
};

// A constructed category code: immutable once built, safe to share across
// threads. site_sizes[i] is the alphabet size of site i.
struct Codebook {
    Scheme scheme = Scheme::remainder;
    std::uint64_t n_classes = 0;
    std::vector<std::uint32_t> site_sizes;
    std::variant<PolynomialParams, RemainderParams, GaussParams, CooParams, RmpParams, EcocParams> params;
    bool anti = false;

    unsigned sites() const { return static_cast<unsigned>(site_sizes.size()); }
    std::uint64_t total_bits() const;
};

struct SiteTuple {
    std::vector<std::uint32_t> values;
};

struct RHotVector {
    std::uint64_t total_bits = 0;
    std::vector<std::uint64_t> set_bits;     // sorted
    std::vector<std::uint64_t> block_offsets; // prefix sums of site_sizes
};

Codebook build_polynomial_cc(std::uint64_t n_classes, unsigned k, std::optional<std::uint64_t> p, unsigned r,
                             std::optional<std::vector<std::uint32_t>> eval_points = std::nullopt);
Codebook build_remainder_cc(std::uint64_t n_classes, unsigned k, std::optional<std::vector<std::uint64_t>> moduli,
                            unsigned r);
Codebook build_gauss_cc(std::uint64_t n_classes, unsigned k, std::optional<std::vector<GaussInt>> moduli, unsigned r);
Codebook build_coo(std::uint64_t n_classes, std::uint32_t total_bits,
                   std::optional<std::vector<std::uint32_t>> frequency_order = std::nullopt);
Codebook build_rmp(std::uint64_t n_classes, unsigned m, std::uint32_t kept_bits, std::uint64_t seed);
Codebook build_ecoc(std::uint64_t n_classes, unsigned bits, bool random_codewords = false, std::uint64_t seed = 0);

SiteTuple encode(const Codebook& cb, std::uint64_t x);
RHotVector to_rhot(const Codebook& cb, std::uint64_t x);

// Counting lower bound on the collision number:
// min{ i : N <= prod of the i smallest sizes } - 1. Throws `unreachable`
// when even the full product is below N (no injective code exists).
unsigned theoretical_min_collision(std::uint64_t n_classes, std::vector<std::uint32_t> site_sizes);

// All site tuples materialized row-major, N x r. Backs the pair scans,
// exact MI and the exhaustive decoder paths.
struct SiteTable {
    std::uint64_t n = 0;
    unsigned r = 0;
    std::vector<std::uint32_t> values;
    const std::uint32_t* row(std::uint64_t x) const { return values.data() + x * r; }
};

SiteTable build_site_table(const Codebook& cb);

} // namespace catcode

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace catcode {

// Gaussian integer re + im*sqrt(-1). Coordinates stay within +-2^31 so
// norms and products fit in 64 bits.
struct GaussInt {
    std::int64_t re = 0;
    std::int64_t im = 0;

    friend GaussInt operator+(GaussInt a, GaussInt b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussInt operator-(GaussInt a, GaussInt b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussInt operator*(GaussInt a, GaussInt b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(GaussInt a, GaussInt b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(GaussInt a, GaussInt b) { return !(a == b); }
};

std::uint64_t gauss_norm(GaussInt z);
inline GaussInt gauss_conj(GaussInt z) { return {z.re, -z.im}; }
inline bool gauss_is_unit(GaussInt z) { return gauss_norm(z) == 1; }

struct GaussDivMod {
    GaussInt quotient;
    GaussInt remainder;
};

// Euclidean division: z = q*m + r with Nm(r) <= Nm(m)/2. Each coordinate of
// z/m is rounded to the nearest integer; at exact half ties the remainder
// coordinate is taken negative (quotient coordinate rounds up).
GaussDivMod gauss_divmod(GaussInt z, GaussInt m);

// Euclidean gcd, normalized to the unique associate with re > 0, im >= 0
// (zero only for gcd(0,0), which is rejected).
GaussInt gauss_gcd(GaussInt a, GaussInt b);

// Complete residue system modulo a non-unit Gaussian integer. Residues are
// the canonical divmod remainders, sorted by (re, im); index_of inverts the
// list so one-hot layouts are reproducible.
struct GaussModulus {
    GaussInt value;
    std::uint64_t norm = 0;
    std::vector<GaussInt> residues;
    std::unordered_map<std::uint64_t, std::uint32_t> index_of;
};

GaussModulus build_modulus(GaussInt p);
std::uint32_t residue_index(const GaussModulus& m, GaussInt z);

// IDs 0..N-1 mapped to the N lattice points of smallest norm, ordered by
// (norm ascending, angle ascending counterclockwise from the positive real
// axis). radius_sq is the norm of the last point taken.
struct DiscEmbedding {
    std::uint64_t n_classes = 0;
    std::uint64_t radius_sq = 0;
    std::vector<GaussInt> points;
};

DiscEmbedding build_disc_embedding(std::uint64_t n_classes);

// Pairwise-coprime moduli scanned from the annulus |p| in
// [(2t)^(1/k), (2t)^(1/(k-epsilon))), first-quadrant candidates ordered by
// (norm, angle), greedily keeping those coprime to everything kept so far.
std::vector<GaussInt> select_gauss_moduli(std::uint64_t n_classes, unsigned k, double epsilon, std::size_t count);

// Wire format "a+bi" / "a-bi" (no spaces, sign always explicit on im).
std::string gauss_to_string(GaussInt z);
GaussInt gauss_from_string(const std::string& s);

// Packs coordinates for hash keys; coordinates must fit in 32 bits.
std::uint64_t gauss_pack(GaussInt z);

} // namespace catcode

#include "catcode/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "catcode/errors.hpp"

namespace catcode {

std::uint64_t gauss_norm(GaussInt z) {
    return static_cast<std::uint64_t>(z.re * z.re + z.im * z.im);
}

std::uint64_t gauss_pack(GaussInt z) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(static_cast<std::int32_t>(z.re))) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(static_cast<std::int32_t>(z.im)));
}

namespace {

// floor(a/b) for b > 0
std::int64_t floor_div(__int128 a, __int128 b) {
    __int128 q = a / b;
    if (a % b != 0 && a < 0) --q;
    return static_cast<std::int64_t>(q);
}

// round(n/d) to nearest with the half case going up, d > 0
std::int64_t round_half_up(__int128 n, __int128 d) { return floor_div(2 * n + d, 2 * d); }

} // namespace

GaussDivMod gauss_divmod(GaussInt z, GaussInt m) {
    if (m.re == 0 && m.im == 0) raise(errc::division_by_zero, "gauss_divmod by zero");
    GaussInt num = z * gauss_conj(m);
    __int128 d = static_cast<__int128>(gauss_norm(m));
    GaussInt q{round_half_up(num.re, d), round_half_up(num.im, d)};
    GaussInt r = z - q * m;
    return {q, r};
}

GaussInt gauss_gcd(GaussInt a, GaussInt b) {
    if (a == GaussInt{} && b == GaussInt{}) raise(errc::bad_parameters, "gcd(0,0) undefined");
    while (!(b == GaussInt{})) {
        GaussInt r = gauss_divmod(a, b).remainder;
        a = b;
        b = r;
    }
    // normalize to first quadrant: re > 0, im >= 0
    for (int i = 0; i < 3 && !(a.re > 0 && a.im >= 0); ++i) a = a * GaussInt{0, 1};
    return a;
}

GaussModulus build_modulus(GaussInt p) {
    if (gauss_norm(p) < 2) raise(errc::not_a_modulus, "modulus must have norm >= 2");
    GaussModulus m;
    m.value = p;
    m.norm = gauss_norm(p);

    // The fundamental parallelogram spanned by p and i*p contains one point
    // per class; scanning its bounding box reaches a representative of all.
    GaussInt ip = p * GaussInt{0, 1};
    std::int64_t re_lo = std::min({std::int64_t{0}, p.re, ip.re, p.re + ip.re});
    std::int64_t re_hi = std::max({std::int64_t{0}, p.re, ip.re, p.re + ip.re});
    std::int64_t im_lo = std::min({std::int64_t{0}, p.im, ip.im, p.im + ip.im});
    std::int64_t im_hi = std::max({std::int64_t{0}, p.im, ip.im, p.im + ip.im});

    std::vector<GaussInt> reps;
    reps.reserve(m.norm * 2);
    for (std::int64_t a = re_lo; a <= re_hi; ++a)
        for (std::int64_t b = im_lo; b <= im_hi; ++b)
            reps.push_back(gauss_divmod(GaussInt{a, b}, p).remainder);
    std::sort(reps.begin(), reps.end(), [](GaussInt x, GaussInt y) {
        return x.re != y.re ? x.re < y.re : x.im < y.im;
    });
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    if (reps.size() != m.norm)
        raise(errc::unreachable, "residue count " + std::to_string(reps.size()) + " != norm " + std::to_string(m.norm));

    m.residues = std::move(reps);
    m.index_of.reserve(m.residues.size());
    for (std::uint32_t i = 0; i < m.residues.size(); ++i) m.index_of.emplace(gauss_pack(m.residues[i]), i);
    return m;
}

std::uint32_t residue_index(const GaussModulus& m, GaussInt z) {
    GaussInt r = gauss_divmod(z, m.value).remainder;
    auto it = m.index_of.find(gauss_pack(r));
    if (it == m.index_of.end()) raise(errc::unreachable, "canonical remainder missing from residue table");
    return it->second;
}

namespace {

// 0: positive real axis, 1: open upper half plane, 2: negative real axis,
// 3: open lower half plane. Zero sorts before everything via norm.
int angle_sector(GaussInt z) {
    if (z.im == 0) return z.re >= 0 ? 0 : 2;
    return z.im > 0 ? 1 : 3;
}

// Total order: norm, then angle in [0, 2pi). Exact integer comparisons only.
bool disc_order(GaussInt a, GaussInt b) {
    std::uint64_t na = gauss_norm(a), nb = gauss_norm(b);
    if (na != nb) return na < nb;
    int sa = angle_sector(a), sb = angle_sector(b);
    if (sa != sb) return sa < sb;
    __int128 cross = static_cast<__int128>(a.re) * b.im - static_cast<__int128>(a.im) * b.re;
    if (cross != 0) return cross > 0;
    return false; // equal norm, equal direction => same point
}

} // namespace

DiscEmbedding build_disc_embedding(std::uint64_t n_classes) {
    if (n_classes < 1) raise(errc::bad_parameters, "n_classes must be >= 1");
    if (n_classes > 100'000'000ull) raise(errc::cap_exceeded, "disc embedding capped at 10^8 points");

    // pi*s lattice points up to norm s; pad generously and grow if short.
    std::uint64_t guess = static_cast<std::uint64_t>(static_cast<double>(n_classes) / 3.141592653589793 +
                                                     24.0 * std::sqrt(static_cast<double>(n_classes)) + 64.0);
    std::vector<GaussInt> pts;
    for (;;) {
        pts.clear();
        std::int64_t R = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(guess)))) + 1;
        for (std::int64_t a = -R; a <= R; ++a)
            for (std::int64_t b = -R; b <= R; ++b)
                if (static_cast<std::uint64_t>(a * a + b * b) <= guess) pts.push_back(GaussInt{a, b});
        if (pts.size() >= n_classes) break;
        guess *= 2;
    }
    std::sort(pts.begin(), pts.end(), disc_order);
    pts.resize(n_classes);

    DiscEmbedding disc;
    disc.n_classes = n_classes;
    disc.radius_sq = gauss_norm(pts.back());
    disc.points = std::move(pts);
    return disc;
}

std::vector<GaussInt> select_gauss_moduli(std::uint64_t n_classes, unsigned k, double epsilon, std::size_t count) {
    if (count < 1) raise(errc::bad_parameters, "count must be >= 1");
    if (k < 1) raise(errc::bad_parameters, "k must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0)) raise(errc::bad_parameters, "epsilon must be in (0,1)");

    DiscEmbedding disc = build_disc_embedding(n_classes);
    double two_t = 2.0 * std::sqrt(static_cast<double>(disc.radius_sq));
    double lo = std::pow(two_t, 2.0 / static_cast<double>(k));
    double hi = std::pow(two_t, 2.0 / (static_cast<double>(k) - epsilon));
    std::uint64_t lo_norm = static_cast<std::uint64_t>(std::ceil(lo));
    if (lo_norm < 2) lo_norm = 2;
    std::uint64_t hi_norm = static_cast<std::uint64_t>(std::ceil(hi)); // exclusive

    // first-quadrant candidates (re > 0, im >= 0) by (norm, angle)
    std::vector<GaussInt> cands;
    std::int64_t R = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(hi_norm)))) + 1;
    for (std::int64_t a = 1; a <= R; ++a)
        for (std::int64_t b = 0; b <= R; ++b) {
            std::uint64_t n = static_cast<std::uint64_t>(a * a + b * b);
            if (n >= lo_norm && n < hi_norm) cands.push_back(GaussInt{a, b});
        }
    std::sort(cands.begin(), cands.end(), disc_order);

    std::vector<GaussInt> kept;
    for (GaussInt c : cands) {
        if (kept.size() == count) break;
        bool ok = true;
        for (GaussInt m : kept)
            if (!gauss_is_unit(gauss_gcd(c, m))) { ok = false; break; }
        if (ok) kept.push_back(c);
    }
    if (kept.size() < count)
        raise(errc::insufficient_moduli, "annulus norms [" + std::to_string(lo_norm) + ", " + std::to_string(hi_norm) +
                                             ") yields only " + std::to_string(kept.size()) + " coprime moduli");
    return kept;
}

std::string gauss_to_string(GaussInt z) {
    std::string s = std::to_string(z.re);
    s += z.im < 0 ? "-" : "+";
    s += std::to_string(z.im < 0 ? -z.im : z.im);
    s += "i";
    return s;
}

GaussInt gauss_from_string(const std::string& s) {
    const char* c = s.c_str();
    char* end = nullptr;
    long long re = std::strtoll(c, &end, 10);
    if (end == c || (*end != '+' && *end != '-')) raise(errc::parse_error, "bad Gaussian integer: " + s);
    const char* imStart = end;
    long long im = std::strtoll(imStart, &end, 10);
    if (end == imStart || *end != 'i' || *(end + 1) != '\0')
        raise(errc::parse_error, "bad Gaussian integer: " + s);
    if (std::llabs(re) > (1ll << 31) || std::llabs(im) > (1ll << 31))
        raise(errc::out_of_range, "Gaussian coordinates exceed 2^31: " + s);
    return GaussInt{re, im};
}

} // namespace catcode

#include "catcode/codebook.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <unordered_set>

#include "catcode/errors.hpp"

namespace catcode {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::polynomial: return "polynomial";
        case Scheme::remainder: return "remainder";
        case Scheme::gauss: return "gauss";
        case Scheme::coo: return "coo";
        case Scheme::rmp: return "rmp";
        case Scheme::ecoc: return "ecoc";
    }
    return "?";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "polynomial") return Scheme::polynomial;
    if (name == "remainder") return Scheme::remainder;
    if (name == "gauss") return Scheme::gauss;
    if (name == "coo") return Scheme::coo;
    if (name == "rmp") return Scheme::rmp;
    if (name == "ecoc") return Scheme::ecoc;
    raise(errc::parse_error, "unknown scheme: " + name);
}

std::uint64_t Codebook::total_bits() const {
    std::uint64_t b = 0;
    for (std::uint32_t s : site_sizes) b += s;
    return b;
}

namespace {

void check_n_classes(std::uint64_t n) {
    if (n < 2 || n > kMaxClasses) raise(errc::bad_parameters, "n_classes must be in [2, 2^40]");
}

} // namespace

Codebook build_polynomial_cc(std::uint64_t n_classes, unsigned k, std::optional<std::uint64_t> p, unsigned r,
                             std::optional<std::vector<std::uint32_t>> eval_points) {
    check_n_classes(n_classes);
    if (k < 1 || r < 1) raise(errc::bad_parameters, "k and r must be >= 1");

    std::uint64_t prime = p ? *p : select_primes(make_prime_window(n_classes, k), 1).front();
    if (!is_prime(prime)) raise(errc::bad_parameters, std::to_string(prime) + " is not prime");
    if (prime > 0xFFFFFFFFull) raise(errc::bad_parameters, "p must fit 32 bits");
    if (pow_clamped(prime, k) < n_classes)
        raise(errc::bad_parameters, "N > p^k, p-adic map cannot be injective");
    if (r > prime) raise(errc::bad_parameters, "r must be <= p (evaluation points are distinct in F_p)");

    std::vector<std::uint32_t> points;
    if (eval_points) {
        points = *eval_points;
    } else {
        points.resize(r);
        std::iota(points.begin(), points.end(), 0u);
    }
    if (points.size() != r) raise(errc::bad_parameters, "need exactly r evaluation points");
    std::vector<std::uint32_t> sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        raise(errc::bad_parameters, "evaluation points must be distinct");
    if (!sorted.empty() && sorted.back() >= prime)
        raise(errc::bad_parameters, "evaluation points must lie in [0, p)");

    Codebook cb;
    cb.scheme = Scheme::polynomial;
    cb.n_classes = n_classes;
    cb.site_sizes.assign(r, static_cast<std::uint32_t>(prime));
    cb.params = PolynomialParams{prime, k, std::move(points)};
    return cb;
}

Codebook build_remainder_cc(std::uint64_t n_classes, unsigned k, std::optional<std::vector<std::uint64_t>> moduli,
                            unsigned r) {
    check_n_classes(n_classes);
    if (k < 1 || r < 1) raise(errc::bad_parameters, "k and r must be >= 1");
    if (k > r) raise(errc::bad_parameters, "k must be <= r");

    std::vector<std::uint64_t> mods = moduli ? *moduli : select_primes(make_prime_window(n_classes, k), r);
    if (mods.size() != r) raise(errc::bad_parameters, "need exactly r moduli");
    for (std::uint64_t m : mods)
        if (m < 2 || m > 0xFFFFFFFFull) raise(errc::bad_parameters, "moduli must be in [2, 2^32)");
    if (!validate_pairwise_coprime(mods)) raise(errc::not_coprime, "moduli are not pairwise coprime");

    std::vector<std::uint64_t> sorted = mods;
    std::sort(sorted.begin(), sorted.end());
    __uint128_t prod = 1;
    for (unsigned i = 0; i < k; ++i) prod *= sorted[i];
    if (prod < n_classes)
        raise(errc::modulus_too_small, "product of the k smallest moduli is below N");

    Codebook cb;
    cb.scheme = Scheme::remainder;
    cb.n_classes = n_classes;
    cb.site_sizes.reserve(mods.size());
    for (std::uint64_t m : mods) cb.site_sizes.push_back(static_cast<std::uint32_t>(m));
    cb.params = RemainderParams{std::move(mods)};
    return cb;
}

Codebook build_gauss_cc(std::uint64_t n_classes, unsigned k, std::optional<std::vector<GaussInt>> moduli, unsigned r) {
    check_n_classes(n_classes);
    if (k < 1 || r < 1) raise(errc::bad_parameters, "k and r must be >= 1");
    if (k > r) raise(errc::bad_parameters, "k must be <= r");

    GaussParams gp;
    gp.moduli = moduli ? *moduli : select_gauss_moduli(n_classes, k, 0.5, r);
    if (gp.moduli.size() != r) raise(errc::bad_parameters, "need exactly r moduli");
    for (std::size_t i = 0; i < gp.moduli.size(); ++i) {
        if (gauss_norm(gp.moduli[i]) < 2) raise(errc::not_a_modulus, "Gaussian modulus must have norm >= 2");
        for (std::size_t j = i + 1; j < gp.moduli.size(); ++j)
            if (!gauss_is_unit(gauss_gcd(gp.moduli[i], gp.moduli[j])))
                raise(errc::not_coprime, "Gaussian moduli are not pairwise coprime");
    }

    gp.disc = build_disc_embedding(n_classes);

    // need |p_1|*...*|p_k| > 2t over the k smallest norms, squared to stay exact:
    // prod(norms) > 4 * radius_sq
    std::vector<std::uint64_t> norms;
    norms.reserve(gp.moduli.size());
    for (GaussInt m : gp.moduli) norms.push_back(gauss_norm(m));
    std::vector<std::uint64_t> sorted = norms;
    std::sort(sorted.begin(), sorted.end());
    __uint128_t prod = 1;
    for (unsigned i = 0; i < k; ++i) prod *= sorted[i];
    if (prod <= static_cast<__uint128_t>(4) * gp.disc.radius_sq)
        raise(errc::modulus_too_small, "product of the k smallest |p_i| is <= 2t");

    gp.residue_systems.reserve(gp.moduli.size());
    for (GaussInt m : gp.moduli) gp.residue_systems.push_back(build_modulus(m));

    Codebook cb;
    cb.scheme = Scheme::gauss;
    cb.n_classes = n_classes;
    cb.site_sizes.reserve(norms.size());
    for (std::uint64_t n : norms) cb.site_sizes.push_back(static_cast<std::uint32_t>(n));
    cb.params = std::move(gp);
    return cb;
}

Codebook build_coo(std::uint64_t n_classes, std::uint32_t total_bits,
                   std::optional<std::vector<std::uint32_t>> frequency_order) {
    check_n_classes(n_classes);
    if (total_bits < 2 || total_bits > n_classes)
        raise(errc::bad_parameters, "coo needs 2 <= bits <= N");

    CooParams cp;
    cp.total_bits = total_bits;
    if (frequency_order) {
        if (frequency_order->size() != n_classes)
            raise(errc::bad_parameters, "frequency order must list every id once");
        cp.rank_of.assign(n_classes, 0xFFFFFFFFu);
        for (std::uint32_t rank = 0; rank < frequency_order->size(); ++rank) {
            std::uint32_t id = (*frequency_order)[rank];
            if (id >= n_classes || cp.rank_of[id] != 0xFFFFFFFFu)
                raise(errc::bad_parameters, "frequency order is not a permutation of [0, N)");
            cp.rank_of[id] = rank;
        }
        cp.frequency_order = std::move(*frequency_order);
    }

    Codebook cb;
    cb.scheme = Scheme::coo;
    cb.n_classes = n_classes;
    cb.site_sizes = {total_bits};
    cb.params = std::move(cp);
    return cb;
}

Codebook build_rmp(std::uint64_t n_classes, unsigned m, std::uint32_t kept_bits, std::uint64_t seed) {
    check_n_classes(n_classes);
    if (m < 1 || m > 30) raise(errc::bad_parameters, "m must be in [1, 30]");
    std::uint64_t n_points = 1ull << m;
    if ((1ull << (m + 1)) < n_classes)
        raise(errc::bad_parameters, "RM(m,1) has only 2^(m+1) codewords, too few for N");
    if (kept_bits < 1 || kept_bits > n_points)
        raise(errc::bad_parameters, "kept_bits must be in [1, 2^m]");

    // Seeded uniform puncture: shuffle all coordinates, remove the first
    // 2^m - kept_bits, keep the rest in ascending order.
    std::vector<std::uint32_t> coords(n_points);
    std::iota(coords.begin(), coords.end(), 0u);
    std::mt19937_64 rng(seed);
    for (std::size_t i = coords.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(coords[i - 1], coords[j]);
    }
    std::vector<std::uint32_t> kept(coords.begin() + static_cast<std::ptrdiff_t>(n_points - kept_bits), coords.end());
    std::sort(kept.begin(), kept.end());

    Codebook cb;
    cb.scheme = Scheme::rmp;
    cb.n_classes = n_classes;
    cb.site_sizes.assign(kept_bits, 2u);
    cb.params = RmpParams{m, std::move(kept), seed};
    return cb;
}

Codebook build_ecoc(std::uint64_t n_classes, unsigned bits, bool random_codewords, std::uint64_t seed) {
    check_n_classes(n_classes);
    if (bits < 1 || bits > 31) raise(errc::bad_parameters, "bits must be in [1, 31]");
    if ((1ull << bits) < n_classes) raise(errc::bad_parameters, "2^bits must be >= N");

    EcocParams ep;
    ep.bits = bits;
    ep.random_codewords = random_codewords;
    ep.seed = seed;
    if (random_codewords) {
        // distinct random codewords, rejection-sampled with the given seed
        std::mt19937_64 rng(seed);
        std::unordered_set<std::uint32_t> used;
        ep.codewords.reserve(n_classes);
        while (ep.codewords.size() < n_classes) {
            std::uint32_t w = static_cast<std::uint32_t>(rng() & ((1ull << bits) - 1));
            if (used.insert(w).second) ep.codewords.push_back(w);
        }
    }

    Codebook cb;
    cb.scheme = Scheme::ecoc;
    cb.n_classes = n_classes;
    cb.site_sizes.assign(bits, 2u);
    cb.params = std::move(ep);
    return cb;
}

SiteTuple encode(const Codebook& cb, std::uint64_t x) {
    if (x >= cb.n_classes) raise(errc::out_of_range, "id " + std::to_string(x) + " >= N");
    SiteTuple t;
    t.values.reserve(cb.sites());
    switch (cb.scheme) {
        case Scheme::polynomial: {
            const auto& pp = std::get<PolynomialParams>(cb.params);
            PAdicDigits d = p_adic_digits(x, pp.p, pp.k);
            for (std::uint32_t pt : pp.eval_points) t.values.push_back(poly_eval_mod_p(d, pt));
            break;
        }
        case Scheme::remainder: {
            const auto& rp = std::get<RemainderParams>(cb.params);
            for (std::uint64_t m : rp.moduli) t.values.push_back(static_cast<std::uint32_t>(x % m));
            break;
        }
        case Scheme::gauss: {
            const auto& gp = std::get<GaussParams>(cb.params);
            GaussInt z = gp.disc.points[x];
            for (const auto& rs : gp.residue_systems) t.values.push_back(residue_index(rs, z));
            break;
        }
        case Scheme::coo: {
            const auto& cp = std::get<CooParams>(cb.params);
            std::uint64_t rank = cp.rank_of.empty() ? x : cp.rank_of[x];
            std::uint64_t shared = cp.total_bits - 1;
            t.values.push_back(static_cast<std::uint32_t>(rank < shared ? rank : shared));
            break;
        }
        case Scheme::rmp: {
            const auto& rp = std::get<RmpParams>(cb.params);
            std::uint32_t a0 = static_cast<std::uint32_t>(x & 1);
            std::uint32_t lin = static_cast<std::uint32_t>(x >> 1);
            for (std::uint32_t c : rp.kept_coords)
                t.values.push_back((a0 ^ static_cast<std::uint32_t>(std::popcount(lin & c))) & 1u);
            break;
        }
        case Scheme::ecoc: {
            const auto& ep = std::get<EcocParams>(cb.params);
            std::uint32_t w = ep.random_codewords ? ep.codewords[x] : static_cast<std::uint32_t>(x);
            for (unsigned b = 0; b < ep.bits; ++b) t.values.push_back((w >> b) & 1u);
            break;
        }
    }
    return t;
}

RHotVector to_rhot(const Codebook& cb, std::uint64_t x) {
    SiteTuple t = encode(cb, x);
    RHotVector v;
    v.block_offsets.reserve(cb.sites());
    std::uint64_t off = 0;
    for (std::uint32_t s : cb.site_sizes) {
        v.block_offsets.push_back(off);
        off += s;
    }
    v.total_bits = off;
    if (!cb.anti) {
        v.set_bits.reserve(cb.sites());
        for (unsigned i = 0; i < cb.sites(); ++i) v.set_bits.push_back(v.block_offsets[i] + t.values[i]);
    } else {
        v.set_bits.reserve(v.total_bits - cb.sites());
        for (unsigned i = 0; i < cb.sites(); ++i) {
            std::uint64_t hot = v.block_offsets[i] + t.values[i];
            for (std::uint64_t b = v.block_offsets[i]; b < v.block_offsets[i] + cb.site_sizes[i]; ++b)
                if (b != hot) v.set_bits.push_back(b);
        }
    }
    return v;
}

unsigned theoretical_min_collision(std::uint64_t n_classes, std::vector<std::uint32_t> site_sizes) {
    if (site_sizes.empty()) raise(errc::bad_parameters, "no sites");
    std::sort(site_sizes.begin(), site_sizes.end());
    __uint128_t prod = 1;
    for (std::size_t i = 0; i < site_sizes.size(); ++i) {
        prod *= site_sizes[i];
        if (prod >= n_classes) return static_cast<unsigned>(i);
    }
    raise(errc::unreachable, "product of all site sizes is below N, no injective code exists");
}

SiteTable build_site_table(const Codebook& cb) {
    SiteTable t;
    t.n = cb.n_classes;
    t.r = cb.sites();
    t.values.resize(t.n * t.r);
    for (std::uint64_t x = 0; x < t.n; ++x) {
        SiteTuple s = encode(cb, x);
        std::copy(s.values.begin(), s.values.end(), t.values.begin() + static_cast<std::ptrdiff_t>(x * t.r));
    }
    return t;
}

} // namespace catcode

#include "catcode/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "catcode/errors.hpp"
#include "catcode/parallel.hpp"

namespace catcode {

unsigned row_agreements(const SiteTable& t, std::uint64_t x, std::uint64_t y) {
    const std::uint32_t* a = t.row(x);
    const std::uint32_t* b = t.row(y);
    unsigned c = 0;
    for (unsigned s = 0; s < t.r; ++s) c += (a[s] == b[s]);
    return c;
}

namespace {

unsigned bound_or_zero(const Codebook& cb, bool& reachable) {
    try {
        reachable = true;
        return theoretical_min_collision(cb.n_classes, cb.site_sizes);
    } catch (const CodingError& e) {
        if (e.code() != errc::unreachable) throw;
        reachable = false;
        return 0;
    }
}

struct PairMax {
    unsigned count = 0;
    std::uint64_t x = 0, y = 0;
    bool seen = false;

    void update(unsigned c, std::uint64_t i, std::uint64_t j) {
        if (!seen || c > count || (c == count && (i < x || (i == x && j < y)))) {
            count = c;
            x = i;
            y = j;
            seen = true;
        }
    }
};

} // namespace

CollisionReport collision_number(const SiteTable& table, const Codebook& cb, const CollisionMode& mode) {
    CollisionReport rep;
    rep.theoretical_bound = bound_or_zero(cb, rep.bound_reachable);
    rep.exhaustive = mode.exhaustive;
    rep.samples = mode.samples;
    rep.seed = mode.seed;

    const std::uint64_t n = table.n;
    if (n < 2) raise(errc::bad_parameters, "collision number needs N >= 2");

    if (mode.exhaustive) {
        if (n > mode.cap)
            raise(errc::cap_exceeded,
                  "exhaustive pair scan capped at N <= " + std::to_string(mode.cap) + " (use sampled mode)");
        unsigned workers = worker_threads();
        std::vector<PairMax> best(workers);
        run_workers([&](unsigned tid, unsigned nthreads) {
            PairMax local;
            for (std::uint64_t i = tid; i + 1 < n; i += nthreads) {
                const std::uint32_t* a = table.row(i);
                for (std::uint64_t j = i + 1; j < n; ++j) {
                    const std::uint32_t* b = table.row(j);
                    unsigned c = 0;
                    for (unsigned s = 0; s < table.r; ++s) c += (a[s] == b[s]);
                    if (c >= local.count || !local.seen) local.update(c, i, j);
                }
            }
            best[tid] = local;
        });
        PairMax merged;
        for (const PairMax& p : best)
            if (p.seen) merged.update(p.count, p.x, p.y);
        rep.max_collisions = merged.count;
        if (merged.seen) rep.witness_pair = {merged.x, merged.y};
    } else {
        std::mt19937_64 rng(mode.seed);
        PairMax local;
        for (std::uint64_t s = 0; s < mode.samples; ++s) {
            std::uint64_t i = rng() % n;
            std::uint64_t j = rng() % (n - 1);
            if (j >= i) ++j;
            if (i > j) std::swap(i, j);
            local.update(row_agreements(table, i, j), i, j);
        }
        rep.max_collisions = local.seen ? local.count : 0;
        if (local.seen) rep.witness_pair = {local.x, local.y};
    }
    return rep;
}

CollisionReport collision_number(const Codebook& cb, const CollisionMode& mode) {
    SiteTable table = build_site_table(cb);
    return collision_number(table, cb, mode);
}

double mutual_information_columns(const std::vector<std::uint32_t>& col_i, const std::vector<std::uint32_t>& col_j,
                                  std::uint32_t size_i, std::uint32_t size_j) {
    if (col_i.size() != col_j.size() || col_i.empty()) raise(errc::shape_mismatch, "column sizes differ");
    const std::uint64_t n = col_i.size();
    std::vector<std::uint64_t> joint(static_cast<std::size_t>(size_i) * size_j, 0);
    std::vector<std::uint64_t> ci(size_i, 0), cj(size_j, 0);
    for (std::uint64_t x = 0; x < n; ++x) {
        joint[static_cast<std::size_t>(col_i[x]) * size_j + col_j[x]]++;
        ci[col_i[x]]++;
        cj[col_j[x]]++;
    }
    double info = 0.0;
    for (std::uint32_t a = 0; a < size_i; ++a) {
        if (ci[a] == 0) continue;
        const std::uint64_t* row = joint.data() + static_cast<std::size_t>(a) * size_j;
        for (std::uint32_t b = 0; b < size_j; ++b) {
            std::uint64_t c = row[b];
            if (c == 0) continue;
            // all arguments are exact integers; c*n and ci*cj stay below 2^106
            double ratio = (static_cast<double>(c) * static_cast<double>(n)) /
                           (static_cast<double>(ci[a]) * static_cast<double>(cj[b]));
            info += (static_cast<double>(c) / static_cast<double>(n)) * std::log(ratio);
        }
    }
    return info;
}

double mutual_information(const Codebook& cb, unsigned site_i, unsigned site_j, std::uint64_t cap) {
    if (site_i == site_j) raise(errc::bad_parameters, "sites must differ");
    if (site_i >= cb.sites() || site_j >= cb.sites()) raise(errc::out_of_range, "site index out of range");
    if (cb.n_classes > cap) raise(errc::cap_exceeded, "exact MI capped at N <= " + std::to_string(cap));
    std::uint64_t cells = static_cast<std::uint64_t>(cb.site_sizes[site_i]) * cb.site_sizes[site_j];
    if (cells > 200'000'000ull) raise(errc::cap_exceeded, "joint table too large");

    std::vector<std::uint32_t> ci(cb.n_classes), cj(cb.n_classes);
    for (std::uint64_t x = 0; x < cb.n_classes; ++x) {
        SiteTuple t = encode(cb, x);
        ci[x] = t.values[site_i];
        cj[x] = t.values[site_j];
    }
    return mutual_information_columns(ci, cj, cb.site_sizes[site_i], cb.site_sizes[site_j]);
}

ExtendedKL reduced_kl(const RHotVector& a, const RHotVector& b) {
    if (a.total_bits != b.total_bits || a.set_bits.size() != b.set_bits.size())
        raise(errc::shape_mismatch, "reduced distributions have different shapes");
    std::int64_t r = static_cast<std::int64_t>(a.set_bits.size());
    if (r == 0) raise(errc::shape_mismatch, "empty support");
    // both sorted: count common bits by merge
    std::int64_t common = 0;
    std::size_t i = 0, j = 0;
    while (i < a.set_bits.size() && j < b.set_bits.size()) {
        if (a.set_bits[i] == b.set_bits[j]) { ++common; ++i; ++j; }
        else if (a.set_bits[i] < b.set_bits[j]) ++i;
        else ++j;
    }
    ExtendedKL kl;
    kl.infinite_coefficient = Rational{r - common, r};
    kl.finite_part = 0.0; // uniform masses agree wherever supports overlap
    return kl;
}

namespace {

// tau_i = max over j != i of the agreement count, computed for every id by a
// full pair scan. Parallel over rows, deterministic result.
std::vector<std::uint32_t> tau_by_scan(const SiteTable& t) {
    std::vector<std::uint32_t> tau(t.n, 0);
    run_workers([&](unsigned tid, unsigned nthreads) {
        for (std::uint64_t i = tid; i < t.n; i += nthreads) {
            const std::uint32_t* a = t.row(i);
            unsigned best = 0;
            for (std::uint64_t j = 0; j < t.n; ++j) {
                if (j == i) continue;
                const std::uint32_t* b = t.row(j);
                unsigned c = 0;
                for (unsigned s = 0; s < t.r; ++s) c += (a[s] == b[s]);
                if (c > best) {
                    best = c;
                    if (best == t.r) break; // duplicate support, cannot grow
                }
            }
            tau[i] = best;
        }
    });
    return tau;
}

// tau_i for a sample of ids, used to validate the lemma shortcut.
bool sampled_tau_equals(const SiteTable& t, unsigned expected, std::uint64_t seed, unsigned sample_count) {
    std::mt19937_64 rng(seed);
    unsigned n_checks = static_cast<unsigned>(std::min<std::uint64_t>(sample_count, t.n));
    for (unsigned s = 0; s < n_checks; ++s) {
        std::uint64_t i = rng() % t.n;
        const std::uint32_t* a = t.row(i);
        unsigned best = 0;
        for (std::uint64_t j = 0; j < t.n && best < expected; ++j) {
            if (j == i) continue;
            const std::uint32_t* b = t.row(j);
            unsigned c = 0;
            for (unsigned q = 0; q < t.r; ++q) c += (a[q] == b[q]);
            if (c > best) best = c;
        }
        if (best != expected) return false;
    }
    return true;
}

AmklReport report_from_tau(const Codebook& cb, const std::vector<std::uint32_t>& tau,
                           const std::vector<double>* weights, const char* method) {
    const std::int64_t r = cb.sites();
    const std::int64_t B = static_cast<std::int64_t>(cb.total_bits());
    // per-id coefficient (r - tau_i) / r, or (r - tau_i) / (B - r) after the
    // anti transform (supports have B - r bits and overlap B - 2r + tau_i)
    const std::int64_t den = cb.anti ? (B - r) : r;
    if (den <= 0) raise(errc::bad_parameters, "degenerate code for AMKL");

    AmklReport rep;
    rep.method = method;
    std::uint64_t dup = 0;
    if (!weights) {
        std::int64_t total = 0;
        for (std::uint32_t t : tau) {
            total += (r - t);
            if (t == static_cast<std::uint32_t>(r)) ++dup;
        }
        rep.coefficient = Rational{total, static_cast<std::int64_t>(tau.size()) * den};
        rep.value = rep.coefficient.value();
        rep.exact = true;
    } else {
        if (weights->size() != tau.size()) raise(errc::shape_mismatch, "weight vector length != N");
        double sum = 0.0, acc = 0.0;
        for (std::size_t i = 0; i < tau.size(); ++i) {
            if ((*weights)[i] < 0) raise(errc::bad_parameters, "negative weight");
            sum += (*weights)[i];
            acc += (*weights)[i] * (static_cast<double>(r - tau[i]) / static_cast<double>(den));
            if (tau[i] == static_cast<std::uint32_t>(r)) ++dup;
        }
        if (std::abs(sum - 1.0) > 1e-9) raise(errc::bad_parameters, "weights must sum to 1");
        rep.value = acc;
        rep.exact = false;
        rep.coefficient = Rational{0, 1};
    }
    rep.duplicate_support_ids = dup;
    return rep;
}

} // namespace

AmklReport amkl_coefficient(const Codebook& cb, const std::vector<double>* weights, AmklMode mode,
                            std::uint64_t brute_cap) {
    const bool cc_scheme =
        cb.scheme == Scheme::remainder || cb.scheme == Scheme::polynomial || cb.scheme == Scheme::gauss;

    if (mode == AmklMode::automatic) mode = cc_scheme ? AmklMode::lemma_shortcut : AmklMode::brute_force;

    if (mode == AmklMode::lemma_shortcut) {
        if (!cc_scheme) raise(errc::bad_parameters, "lemma shortcut applies to the minimal-collision schemes only");
        unsigned bound = theoretical_min_collision(cb.n_classes, cb.site_sizes);
        SiteTable t = build_site_table(cb);

        bool proven = false;
        if (cb.scheme == Scheme::remainder && bound >= 1) {
            // constructive witness: the product of the bound smallest moduli
            // is < N, so id +- stride agrees at exactly `bound` sites
            std::vector<std::uint64_t> mods = std::get<RemainderParams>(cb.params).moduli;
            std::sort(mods.begin(), mods.end());
            __uint128_t stride = 1;
            for (unsigned i = 0; i < bound; ++i) stride *= mods[i];
            proven = stride < cb.n_classes;
        } else if (bound == 0) {
            proven = cb.n_classes > 1; // any distinct pair realizes tau = 0
        }
        if (!proven && !sampled_tau_equals(t, bound, 0x5eed5eedu, 64)) {
            // some sampled id missed the bound; fall back to the full scan
            if (cb.n_classes > brute_cap)
                raise(errc::cap_exceeded, "shortcut not validated and N exceeds the brute-force cap");
            std::vector<std::uint32_t> tau = tau_by_scan(t);
            return report_from_tau(cb, tau, weights, "brute-force");
        }
        std::vector<std::uint32_t> tau(cb.n_classes, bound);
        return report_from_tau(cb, tau, weights, "lemma-shortcut");
    }

    if (cb.n_classes > brute_cap)
        raise(errc::cap_exceeded, "brute-force AMKL capped at N <= " + std::to_string(brute_cap));
    SiteTable t = build_site_table(cb);
    std::vector<std::uint32_t> tau = tau_by_scan(t);
    return report_from_tau(cb, tau, weights, "brute-force");
}

std::uint64_t hamming_distance(const RHotVector& a, const RHotVector& b) {
    if (a.total_bits != b.total_bits) raise(errc::shape_mismatch, "bit lengths differ");
    std::uint64_t common = 0;
    std::size_t i = 0, j = 0;
    while (i < a.set_bits.size() && j < b.set_bits.size()) {
        if (a.set_bits[i] == b.set_bits[j]) { ++common; ++i; ++j; }
        else if (a.set_bits[i] < b.set_bits[j]) ++i;
        else ++j;
    }
    return a.set_bits.size() + b.set_bits.size() - 2 * common;
}

HammingStats hamming_stats(const Codebook& cb, std::uint64_t samples, std::uint64_t seed) {
    if (samples < 1) raise(errc::bad_parameters, "need at least one sample");
    if (cb.n_classes < 2) raise(errc::bad_parameters, "need N >= 2");

    std::mt19937_64 rng(seed);
    HammingStats st;
    st.samples = samples;
    st.seed = seed;
    st.min = ~0ull;
    double total = 0.0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        std::uint64_t i = rng() % cb.n_classes;
        std::uint64_t j = rng() % (cb.n_classes - 1);
        if (j >= i) ++j;
        std::uint64_t d = hamming_distance(to_rhot(cb, i), to_rhot(cb, j));
        st.min = std::min(st.min, d);
        st.max = std::max(st.max, d);
        total += static_cast<double>(d);
    }
    st.mean = total / static_cast<double>(samples);
    return st;
}

} // namespace catcode

#include "catcode/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "catcode/errors.hpp"
#include "catcode/parallel.hpp"

namespace catcode {

NoiseModel NoiseModel::symmetric(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) raise(errc::bad_parameters, "eta must be in [0,1]");
    NoiseModel n;
    n.kind = Kind::symmetric;
    n.eta = eta;
    return n;
}

NoiseModel NoiseModel::dirichlet(double alpha, std::uint64_t seed) {
    if (!(alpha > 0.0)) raise(errc::bad_parameters, "alpha must be > 0");
    NoiseModel n;
    n.kind = Kind::dirichlet;
    n.alpha = alpha;
    n.seed = seed;
    return n;
}

Decoder::Decoder(const Codebook& cb, double floor) : cb_(&cb), table_(build_site_table(cb)), floor_(floor) {
    if (!(floor > 0.0)) raise(errc::bad_parameters, "probability floor must be positive");
}

namespace {

void check_shapes(const Codebook& cb, const EnsembleOutput& out) {
    if (out.dists.size() != cb.sites()) raise(errc::shape_mismatch, "ensemble site count != codebook");
    for (unsigned i = 0; i < cb.sites(); ++i)
        if (out.dists[i].size() != cb.site_sizes[i])
            raise(errc::shape_mismatch, "site " + std::to_string(i) + " distribution length != site size");
}

// log max(P, floor) tables, one per site
std::vector<std::vector<double>> log_tables(const EnsembleOutput& out, double floor) {
    std::vector<std::vector<double>> logs(out.dists.size());
    for (std::size_t i = 0; i < out.dists.size(); ++i) {
        logs[i].resize(out.dists[i].size());
        for (std::size_t v = 0; v < out.dists[i].size(); ++v)
            logs[i][v] = std::log(std::max(out.dists[i][v], floor));
    }
    return logs;
}

} // namespace

std::uint64_t Decoder::decode(const EnsembleOutput& out) const {
    check_shapes(*cb_, out);
    auto logs = log_tables(out, floor_);
    std::uint64_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::uint64_t x = 0; x < table_.n; ++x) {
        const std::uint32_t* row = table_.row(x);
        double s = 0.0;
        for (unsigned i = 0; i < table_.r; ++i) s += logs[i][row[i]];
        if (s > best_score) { // ties keep the smallest label
            best_score = s;
            best = x;
        }
    }
    return best;
}

double Decoder::score(const EnsembleOutput& out, std::uint64_t x) const {
    check_shapes(*cb_, out);
    if (x >= table_.n) raise(errc::out_of_range, "label out of range");
    const std::uint32_t* row = table_.row(x);
    double s = 0.0;
    for (unsigned i = 0; i < table_.r; ++i) s += std::log(std::max(out.dists[i][row[i]], floor_));
    return s;
}

std::uint64_t decode(const Codebook& cb, const EnsembleOutput& out, double floor) {
    return Decoder(cb, floor).decode(out);
}

double decode_kl_view(const Codebook& cb, const EnsembleOutput& out, std::uint64_t x, double floor) {
    check_shapes(cb, out);
    if (x >= cb.n_classes) raise(errc::out_of_range, "label out of range");
    SiteTuple t = encode(cb, x);

    double log_score = 0.0;
    for (unsigned i = 0; i < cb.sites(); ++i) log_score += std::log(std::max(out.dists[i][t.values[i]], floor));

    // KL(delta_a || P) over each site alphabet: only v = a contributes,
    // with value log(1 / P(a)).
    double kl_sum = 0.0;
    for (unsigned i = 0; i < cb.sites(); ++i)
        kl_sum += std::log(1.0 / std::max(out.dists[i][t.values[i]], floor));

    if (std::abs(log_score - (-kl_sum)) > 1e-9) raise(errc::unreachable, "decoder/KL identity violated");
    return log_score;
}

namespace {

// Marsaglia-Tsang gamma sampler on our own normal/uniform draws so that a
// seed pins the output independent of the standard library used.
double uniform01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

double normal01(std::mt19937_64& rng) {
    double u1 = uniform01(rng), u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

double gamma_sample(std::mt19937_64& rng, double alpha) {
    if (alpha < 1.0) {
        double u = uniform01(rng);
        return gamma_sample(rng, alpha + 1.0) * std::pow(u, 1.0 / alpha);
    }
    double d = alpha - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = normal01(rng);
        double v = 1.0 + c * x;
        if (v <= 0) continue;
        v = v * v * v;
        double u = uniform01(rng);
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

} // namespace

EnsembleOutput simulate_base_learners(const Codebook& cb, std::uint64_t true_label, const NoiseModel& noise) {
    SiteTuple t = encode(cb, true_label);
    EnsembleOutput out;
    out.dists.resize(cb.sites());
    std::mt19937_64 rng(noise.seed);

    for (unsigned i = 0; i < cb.sites(); ++i) {
        std::uint32_t n_i = cb.site_sizes[i];
        SiteDistribution& d = out.dists[i];
        d.assign(n_i, 0.0);
        switch (noise.kind) {
            case NoiseModel::Kind::delta:
                d[t.values[i]] = 1.0;
                break;
            case NoiseModel::Kind::symmetric: {
                double off = n_i > 1 ? noise.eta / (n_i - 1) : 0.0;
                for (std::uint32_t v = 0; v < n_i; ++v) d[v] = off;
                d[t.values[i]] = 1.0 - noise.eta;
                break;
            }
            case NoiseModel::Kind::dirichlet: {
                double sum = 0.0;
                for (std::uint32_t v = 0; v < n_i; ++v) {
                    d[v] = gamma_sample(rng, noise.alpha);
                    sum += d[v];
                }
                for (std::uint32_t v = 0; v < n_i; ++v) d[v] /= sum;
                // recenter: move the peak onto the true site value
                std::uint32_t peak = static_cast<std::uint32_t>(std::max_element(d.begin(), d.end()) - d.begin());
                std::swap(d[peak], d[t.values[i]]);
                break;
            }
        }
    }
    return out;
}

void binomial_ci95(std::uint64_t correct, std::uint64_t trials, double& low, double& high) {
    const double z = 1.959963984540054;
    double n = static_cast<double>(trials);
    double p = static_cast<double>(correct) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    low = std::max(0.0, center - half);
    high = std::min(1.0, center + half);
}

TrialReport run_trials(const Codebook& cb, const NoiseModel& noise, std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) raise(errc::bad_parameters, "trials must be >= 1");
    Decoder dec(cb);

    std::vector<std::uint8_t> ok(trials, 0);
    run_workers([&](unsigned tid, unsigned nthreads) {
        for (std::uint64_t t = tid; t < trials; t += nthreads) {
            // counter-based split: the trial index alone fixes the streams
            std::uint64_t s = splitmix64(seed ^ splitmix64(t));
            std::mt19937_64 label_rng(s);
            std::uint64_t label = label_rng() % cb.n_classes;
            NoiseModel local = noise;
            local.seed = splitmix64(s);
            EnsembleOutput out = simulate_base_learners(cb, label, local);
            ok[t] = dec.decode(out) == label ? 1 : 0;
        }
    });

    TrialReport rep;
    rep.trials = trials;
    rep.seed = seed;
    for (std::uint8_t v : ok) rep.correct += v;
    rep.accuracy = static_cast<double>(rep.correct) / static_cast<double>(trials);
    binomial_ci95(rep.correct, trials, rep.ci95_low, rep.ci95_high);
    return rep;
}

} // namespace catcode

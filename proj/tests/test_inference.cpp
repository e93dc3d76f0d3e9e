#include <doctest.h>

#include <cstdlib>

#include <cmath>
#include <random>

#include "catcode/codebook.hpp"
#include "catcode/errors.hpp"
#include "catcode/inference.hpp"
#include "catcode/presets.hpp"

using namespace catcode;

namespace {

EnsembleOutput delta_output(const Codebook& cb, std::uint64_t y) {
    return simulate_base_learners(cb, y, NoiseModel::delta());
}

} // namespace

TEST_CASE("decode hand-computed example") {
    Codebook cb = build_remainder_cc(6, 2, std::vector<std::uint64_t>{2, 3}, 2);
    EnsembleOutput out;
    out.dists = {{0.9, 0.1}, {0.1, 0.8, 0.1}};

    // independent check over all six labels
    double best = -1e300;
    std::uint64_t best_x = 0;
    for (std::uint64_t x = 0; x < 6; ++x) {
        double s = std::log(out.dists[0][x % 2]) + std::log(out.dists[1][x % 3]);
        if (s > best) { best = s; best_x = x; }
    }
    CHECK(best_x == 4);
    CHECK(decode(cb, out) == 4);
}

TEST_CASE("decode recovers noiseless labels") {
    Codebook cb = build_remainder_cc(35, 2, std::vector<std::uint64_t>{5, 7}, 2);
    for (std::uint64_t y = 0; y < 35; ++y) CHECK(decode(cb, delta_output(cb, y)) == y);

    Codebook big = build_preset("method4-item");
    Decoder dec(big);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        std::uint64_t y = rng() % big.n_classes;
        CHECK(dec.decode(delta_output(big, y)) == y);
    }
}

TEST_CASE("noiseless exactness across preset families") {
    // one preset of each family exhaustively
    for (const char* name :
         {"method1-user", "method2-item", "method3-item", "method4-user", "method5-user", "method6-item"}) {
        Codebook cb = build_preset(name);
        Decoder dec(cb);
        std::uint64_t wrong = 0;
        for (std::uint64_t y = 0; y < cb.n_classes; ++y)
            if (dec.decode(delta_output(cb, y)) != y) ++wrong;
        INFO(name);
        CHECK(wrong == 0);
    }
    // wide binary baselines and large gauss codes on seeded label samples
    std::mt19937_64 rng(19);
    for (const char* name : {"ml-rmp-item", "cjk-ecoc-15", "cjk-gauss-6", "cjk-poly-2"}) {
        Codebook cb = build_preset(name);
        Decoder dec(cb);
        std::uint64_t wrong = 0;
        for (int i = 0; i < 300; ++i) {
            std::uint64_t y = rng() % cb.n_classes;
            if (dec.decode(delta_output(cb, y)) != y) ++wrong;
        }
        INFO(name);
        CHECK(wrong == 0);
    }
}

TEST_CASE("uniform distributions tie-break to the smallest label") {
    Codebook cb = build_remainder_cc(35, 2, std::vector<std::uint64_t>{5, 7}, 2);
    EnsembleOutput out;
    out.dists = {SiteDistribution(5, 0.2), SiteDistribution(7, 1.0 / 7)};
    CHECK(decode(cb, out) == 0);
}

TEST_CASE("decode rejects mismatched shapes") {
    Codebook cb = build_remainder_cc(35, 2, std::vector<std::uint64_t>{5, 7}, 2);
    EnsembleOutput bad;
    bad.dists = {SiteDistribution(5, 0.2)};
    CHECK_THROWS_AS(decode(cb, bad), CodingError);
    bad.dists = {SiteDistribution(5, 0.2), SiteDistribution(6, 1.0 / 6)};
    CHECK_THROWS_AS(decode(cb, bad), CodingError);
}

TEST_CASE("decode_kl_view identity") {
    Codebook cb = build_remainder_cc(6, 2, std::vector<std::uint64_t>{2, 3}, 2);
    EnsembleOutput out;
    out.dists = {{0.9, 0.1}, {0.1, 0.8, 0.1}};
    CHECK(decode_kl_view(cb, out, 4) == doctest::Approx(std::log(0.72)).epsilon(1e-12));

    // delta at the true label scores zero
    CHECK(decode_kl_view(cb, delta_output(cb, 3), 3) == doctest::Approx(0.0));

    // a zero-probability site uses the floor and sinks the score
    EnsembleOutput zeroed;
    zeroed.dists = {{1.0, 0.0}, {0.1, 0.8, 0.1}};
    double s = decode_kl_view(cb, zeroed, 1); // sites (1,1): P_1(1) = 0
    CHECK(s == doctest::Approx(std::log(1e-12) + std::log(0.8)));
    CHECK(s < decode_kl_view(cb, zeroed, 4));
}

TEST_CASE("score shift invariance") {
    // scaling one site's distribution shifts every label's log-score equally
    Codebook cb = build_preset("method2-item");
    Decoder dec(cb);
    std::mt19937_64 rng(5);
    for (int round = 0; round < 10; ++round) {
        std::uint64_t y = rng() % cb.n_classes;
        EnsembleOutput out = simulate_base_learners(cb, y, NoiseModel::dirichlet(0.5, rng()));
        EnsembleOutput scaled = out;
        for (double& v : scaled.dists[1]) v *= 0.25;
        CHECK(dec.decode(out) == dec.decode(scaled));
    }
}

TEST_CASE("symmetric noise model shapes") {
    Codebook cb = build_remainder_cc(35, 2, std::vector<std::uint64_t>{5, 7}, 2);

    EnsembleOutput zero_eta = simulate_base_learners(cb, 4, NoiseModel::symmetric(0.0));
    CHECK(zero_eta.dists == delta_output(cb, 4).dists);

    EnsembleOutput noisy = simulate_base_learners(cb, 4, NoiseModel::symmetric(0.3));
    CHECK(noisy.dists[0][4] == doctest::Approx(0.7));
    CHECK(noisy.dists[0][0] == doctest::Approx(0.3 / 4));
    CHECK(noisy.dists[1][4] == doctest::Approx(0.7));
    CHECK(noisy.dists[1][0] == doctest::Approx(0.3 / 6));

    // eta = 1 - 1/N_i flattens a site with equal alphabet sizes
    Codebook poly = build_polynomial_cc(25, 2, 5, 2);
    EnsembleOutput flat = simulate_base_learners(poly, 7, NoiseModel::symmetric(1.0 - 1.0 / 5));
    for (double v : flat.dists[0]) CHECK(v == doctest::Approx(0.2));

    CHECK_THROWS_AS(NoiseModel::symmetric(1.5), CodingError);
}

TEST_CASE("dirichlet noise peaks at the true site value and is seed-stable") {
    Codebook cb = build_preset("method1-item");
    NoiseModel noise = NoiseModel::dirichlet(0.7, 99);
    EnsembleOutput a = simulate_base_learners(cb, 123, noise);
    EnsembleOutput b = simulate_base_learners(cb, 123, noise);
    CHECK(a.dists == b.dists);
    SiteTuple t = encode(cb, 123);
    for (unsigned i = 0; i < cb.sites(); ++i) {
        double peak = *std::max_element(a.dists[i].begin(), a.dists[i].end());
        CHECK(a.dists[i][t.values[i]] == doctest::Approx(peak));
        double sum = 0;
        for (double v : a.dists[i]) sum += v;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("trials: delta noise is always decoded") {
    Codebook cb = build_preset("method1-item");
    TrialReport rep = run_trials(cb, NoiseModel::delta(), 500, 1);
    CHECK(rep.accuracy == 1.0);
    CHECK(rep.ci95_high == 1.0);
    CHECK(rep.ci95_low > 0.99);
}

TEST_CASE("trials: single trial gives a degenerate interval") {
    Codebook cb = build_remainder_cc(35, 2, std::vector<std::uint64_t>{5, 7}, 2);
    TrialReport rep = run_trials(cb, NoiseModel::delta(), 1, 7);
    CHECK(rep.trials == 1);
    CHECK(rep.correct == 1);
    CHECK(rep.ci95_low < 1.0);
    CHECK(rep.ci95_high == 1.0);
}

TEST_CASE("trials are reproducible and thread-count independent") {
    Codebook cb = build_preset("method2-item");
    NoiseModel noise = NoiseModel::dirichlet(0.02, 0);
    TrialReport a = run_trials(cb, noise, 400, 42);
    TrialReport b = run_trials(cb, noise, 400, 42);
    CHECK(a.correct == b.correct);

    // worker count must not change any result (CC_THREADS caps the pool)
    ::setenv("CC_THREADS", "1", 1);
    TrialReport single = run_trials(cb, noise, 400, 42);
    ::unsetenv("CC_THREADS");
    CHECK(single.correct == a.correct);
}

TEST_CASE("flat sites decode to chance level") {
    // binary sites make eta = 1 - 1/N_i exactly representable, so the
    // distributions are exactly uniform and every label ties
    Codebook cb = build_ecoc(16, 4);
    NoiseModel flat = NoiseModel::symmetric(0.5);
    TrialReport rep = run_trials(cb, flat, 4000, 11);
    CHECK(rep.accuracy > 0.03); // chance level is 1/16
    CHECK(rep.accuracy < 0.10);
}

TEST_CASE("redundancy keeps symmetric-noise decoding exact") {
    Codebook r2 = build_preset("method1-item");
    Codebook r6 = build_preset("method4-item");
    for (double eta : {0.1, 0.3, 0.5}) {
        TrialReport a2 = run_trials(r2, NoiseModel::symmetric(eta), 2000, 5);
        TrialReport a6 = run_trials(r6, NoiseModel::symmetric(eta), 2000, 5);
        CHECK(a6.accuracy >= a2.accuracy);
        CHECK(a2.accuracy > 1.0 - eta);
    }
}

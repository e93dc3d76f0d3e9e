#include <doctest.h>

#include <cmath>
#include <random>

#include "catcode/codebook.hpp"
#include "catcode/errors.hpp"
#include "catcode/metrics.hpp"
#include "catcode/presets.hpp"

using namespace catcode;

TEST_CASE("exhaustive collision number on small codes") {
    Codebook cb = build_remainder_cc(35, 2, std::vector<std::uint64_t>{5, 7}, 2);
    CollisionReport rep = collision_number(cb, CollisionMode{});
    CHECK(rep.max_collisions == 1);
    CHECK(rep.theoretical_bound == 1);
    REQUIRE(rep.witness_pair.has_value());
    // witness realizes the count
    SiteTable t = build_site_table(cb);
    CHECK(row_agreements(t, rep.witness_pair->first, rep.witness_pair->second) == 1);

    Codebook onehot = build_coo(50, 50); // injective single site
    CHECK(collision_number(onehot, CollisionMode{}).max_collisions == 0);
}

TEST_CASE("sampled collision scan is a lower bound that reaches 1 here") {
    Codebook cb = build_preset("cjk-poly-6");
    CollisionMode mode;
    mode.exhaustive = false;
    mode.samples = 200'000;
    mode.seed = 9;
    CollisionReport rep = collision_number(cb, mode);
    CHECK(rep.max_collisions == 1); // minimal collision forbids 2, sampling finds 1
    CHECK(rep.theoretical_bound == 1);
}

TEST_CASE("exhaustive scan cap") {
    Codebook cb = build_preset("cjk-remainder-2");
    CollisionMode mode;
    mode.cap = 10'000;
    CHECK_THROWS_AS(collision_number(cb, mode), CodingError);
}

TEST_CASE("collision equals bound on scaled-down minimal-collision codes") {
    // remainder, polynomial and gauss analogs small enough for a fast scan
    std::vector<Codebook> books;
    books.push_back(build_remainder_cc(2000, 2, std::nullopt, 4));
    books.push_back(build_polynomial_cc(2000, 2, 47, 6));
    books.push_back(build_gauss_cc(2000, 2, std::nullopt, 4));
    for (const Codebook& cb : books) {
        CollisionReport rep = collision_number(cb, CollisionMode{});
        INFO(scheme_name(cb.scheme), " N=", cb.n_classes);
        CHECK(rep.max_collisions == rep.theoretical_bound);
    }
}

TEST_CASE("collision equals bound on every minimal-collision preset") {
    // exhaustive certification of the three code families at full preset scale
    for (const auto& info : preset_list()) {
        if (info.scheme != Scheme::remainder && info.scheme != Scheme::polynomial && info.scheme != Scheme::gauss)
            continue;
        Codebook cb = build_preset(info.name);
        CollisionReport rep = collision_number(cb, CollisionMode{});
        INFO(info.name);
        CHECK(rep.max_collisions == rep.theoretical_bound);
    }
}

TEST_CASE("baselines respect the counting bound") {
    Codebook ecoc = build_ecoc(3952, 12);
    CollisionReport rep = collision_number(ecoc, CollisionMode{});
    CHECK(rep.theoretical_bound == 11);
    CHECK(rep.max_collisions >= rep.theoretical_bound);

    Codebook rmp = build_rmp(120, 6, 64, 3); // full RM(6,1)
    CollisionReport r2 = collision_number(rmp, CollisionMode{});
    CHECK(r2.max_collisions >= r2.theoretical_bound);
}

TEST_CASE("mutual information: CRT bijection gives exactly zero") {
    Codebook cb = build_remainder_cc(35, 2, std::vector<std::uint64_t>{5, 7}, 2);
    double mi = mutual_information(cb, 0, 1);
    CHECK(std::abs(mi) <= 1e-12);
}

TEST_CASE("mutual information of identical columns is the entropy") {
    std::vector<std::uint32_t> col(1000);
    for (std::size_t i = 0; i < col.size(); ++i) col[i] = static_cast<std::uint32_t>(i % 10);
    double mi = mutual_information_columns(col, col, 10, 10);
    CHECK(mi == doctest::Approx(std::log(10.0)).epsilon(1e-12));
}

TEST_CASE("mutual information agrees with a direct double loop") {
    Codebook cb = build_remainder_cc(1000, 2, std::vector<std::uint64_t>{37, 41}, 2);
    double mi = mutual_information(cb, 0, 1);

    // independent oracle over the raw definition
    std::vector<std::vector<double>> joint(37, std::vector<double>(41, 0.0));
    std::vector<double> pi(37, 0.0), pj(41, 0.0);
    for (std::uint64_t x = 0; x < 1000; ++x) {
        joint[x % 37][x % 41] += 1.0 / 1000.0;
        pi[x % 37] += 1.0 / 1000.0;
        pj[x % 41] += 1.0 / 1000.0;
    }
    double want = 0.0;
    for (int a = 0; a < 37; ++a)
        for (int b = 0; b < 41; ++b)
            if (joint[a][b] > 0) want += joint[a][b] * std::log(joint[a][b] / (pi[a] * pj[b]));
    CHECK(mi == doctest::Approx(want).epsilon(1e-9));
    CHECK(mi == doctest::Approx(0.416517491).epsilon(1e-6)); // frozen from the oracle
}

TEST_CASE("mutual information symmetry and non-negativity") {
    std::mt19937_64 rng(31);
    for (int round = 0; round < 20; ++round) {
        std::uint64_t n = 200 + rng() % 800;
        std::uint64_t p1 = 7 + rng() % 30, p2 = p1 + 1 + rng() % 30;
        while (std::gcd(p1, p2) != 1) ++p2;
        if (p1 * p2 < n) continue;
        Codebook cb = build_remainder_cc(n, 2, std::vector<std::uint64_t>{p1, p2}, 2);
        double a = mutual_information(cb, 0, 1);
        double b = mutual_information(cb, 1, 0);
        CHECK(a >= -1e-12);
        CHECK(std::abs(a - b) <= 1e-12);
    }
}

TEST_CASE("mutual information large-N decay sample") {
    Codebook cb = build_remainder_cc(1'000'000, 2, std::vector<std::uint64_t>{997, 1009}, 2);
    double mi = mutual_information(cb, 0, 1);
    CHECK(mi < 0.01);
    CHECK(mi > 0.0);
}

TEST_CASE("reduced KL coefficients") {
    Codebook cb = build_preset("method4-user");
    RHotVector a = to_rhot(cb, 100);
    CHECK(reduced_kl(a, a).infinite_coefficient == Rational{0, 1});
    CHECK(reduced_kl(a, a).finite_part == 0.0);

    // stride by the smallest modulus: exactly one common site
    RHotVector b = to_rhot(cb, 100 + 83);
    CHECK(reduced_kl(a, b).infinite_coefficient == Rational{5, 6});

    // disjoint supports
    Codebook pair = build_remainder_cc(6, 2, std::vector<std::uint64_t>{2, 3}, 2);
    RHotVector u = to_rhot(pair, 0); // sites (0,0)
    RHotVector v = to_rhot(pair, 5); // sites (1,2)
    CHECK(reduced_kl(u, v).infinite_coefficient == Rational{1, 1});

    RHotVector w = to_rhot(cb, 0);
    Codebook other = build_preset("method4-item");
    CHECK_THROWS_AS(reduced_kl(w, to_rhot(other, 0)), CodingError);
}

TEST_CASE("reduced KL is zero iff supports are equal") {
    Codebook cb = build_preset("method2-user");
    std::mt19937_64 rng(37);
    for (int i = 0; i < 300; ++i) {
        std::uint64_t x = rng() % cb.n_classes, y = rng() % cb.n_classes;
        ExtendedKL kl = reduced_kl(to_rhot(cb, x), to_rhot(cb, y));
        bool zero = kl.infinite_coefficient == Rational{0, 1};
        CHECK(zero == (to_rhot(cb, x).set_bits == to_rhot(cb, y).set_bits));
    }
}

TEST_CASE("reduced KL can be asymmetric for unequal-size blocks") {
    // same bit length, same set-bit count, different block structure
    RHotVector a;
    a.total_bits = 6;
    a.set_bits = {0, 3};
    RHotVector b;
    b.total_bits = 6;
    b.set_bits = {0, 4};
    CHECK(reduced_kl(a, b).infinite_coefficient == Rational{1, 2});
    CHECK(reduced_kl(b, a).infinite_coefficient == Rational{1, 2});
    RHotVector c;
    c.total_bits = 6;
    c.set_bits = {1, 2};
    CHECK(reduced_kl(a, c).infinite_coefficient == Rational{1, 1});
}

TEST_CASE("amkl coefficients match the table of methods") {
    struct Row { const char* preset; Rational want; };
    const Row rows[] = {
        {"method1-user", Rational{1, 2}},  {"method1-item", Rational{1, 2}},
        {"method2-user", Rational{2, 3}},  {"method2-item", Rational{2, 3}},
        {"method3-user", Rational{5, 6}},  {"method3-item", Rational{5, 6}},
        {"method4-user", Rational{5, 6}},  {"method4-item", Rational{5, 6}},
        {"method5-user", Rational{5, 6}},  {"method5-item", Rational{5, 6}},
        {"method6-user", Rational{13, 15}}, {"method6-item", Rational{6, 7}},
    };
    for (const Row& row : rows) {
        Codebook cb = build_preset(row.preset);
        AmklReport rep = amkl_coefficient(cb);
        INFO(row.preset);
        CHECK(rep.coefficient == row.want);
        CHECK(rep.exact);
    }
}

TEST_CASE("amkl brute force equals the lemma shortcut") {
    for (const char* name : {"method1-user", "method2-item", "method4-user", "method5-user", "method6-item"}) {
        Codebook cb = build_preset(name);
        AmklReport brute = amkl_coefficient(cb, nullptr, AmklMode::brute_force);
        AmklReport fast = amkl_coefficient(cb, nullptr, AmklMode::lemma_shortcut);
        INFO(name);
        CHECK(brute.coefficient == fast.coefficient);
    }
}

TEST_CASE("amkl of a plain one-hot code is 1") {
    Codebook cb = build_coo(200, 200);
    AmklReport rep = amkl_coefficient(cb);
    CHECK(rep.coefficient == Rational{1, 1});
    CHECK(rep.method == "brute-force");
}

TEST_CASE("amkl flags duplicate supports in bucketed codes") {
    Codebook cb = build_coo(100, 10);
    AmklReport rep = amkl_coefficient(cb);
    // 91 ids share the bucket codeword, their min KL is 0
    CHECK(rep.duplicate_support_ids == 91);
    CHECK(rep.coefficient == Rational{9, 100});
}

TEST_CASE("amkl weighted average") {
    Codebook cb = build_coo(4, 4); // all distinct one-hots, per-id coefficient 1
    std::vector<double> w{0.7, 0.1, 0.1, 0.1};
    AmklReport rep = amkl_coefficient(cb, &w);
    CHECK(rep.value == doctest::Approx(1.0));
    std::vector<double> bad{0.5, 0.5, 0.5, 0.5};
    CHECK_THROWS_AS(amkl_coefficient(cb, &bad), CodingError);
}

TEST_CASE("anti transform changes amkl but not hamming distances") {
    Codebook cb = build_preset("method4-user");
    Codebook anti = cb;
    anti.anti = true;

    AmklReport plain = amkl_coefficient(cb);
    AmklReport flipped = amkl_coefficient(anti);
    CHECK(plain.coefficient == Rational{5, 6});
    CHECK(flipped.coefficient == Rational{5, 576}); // (r - tau) / (B - r)
    CHECK(plain.coefficient != flipped.coefficient);

    // the complement pair with one agreeing site realizes that coefficient
    ExtendedKL anti_kl = reduced_kl(to_rhot(anti, 100), to_rhot(anti, 100 + 83));
    CHECK(anti_kl.infinite_coefficient == Rational{5, 576});

    std::mt19937_64 rng(41);
    for (int i = 0; i < 500; ++i) {
        std::uint64_t x = rng() % cb.n_classes, y = rng() % cb.n_classes;
        CHECK(hamming_distance(to_rhot(cb, x), to_rhot(cb, y)) ==
              hamming_distance(to_rhot(anti, x), to_rhot(anti, y)));
    }

    HammingStats hs = hamming_stats(cb, 2000, 77);
    HammingStats ha = hamming_stats(anti, 2000, 77);
    CHECK(hs.min == ha.min);
    CHECK(hs.mean == ha.mean);
    CHECK(hs.max == ha.max);
}

TEST_CASE("hamming stats see the shared coo bucket") {
    Codebook cb = build_coo(60, 4);
    HammingStats st = hamming_stats(cb, 5000, 1);
    CHECK(st.min == 0); // bucket ids share a codeword
    CHECK(st.max == 2);
}

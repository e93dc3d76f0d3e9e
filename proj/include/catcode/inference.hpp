#pragma once

#include <cstdint>
#include <string>

#include "catcode/codebook.hpp"
#include "catcode/inference_types.hpp"

namespace catcode {

struct NoiseModel {
    enum class Kind { delta, symmetric, dirichlet };
    Kind kind = Kind::delta;
    double eta = 0.0;    // symmetric: mass moved off the true value
    double alpha = 1.0;  // dirichlet concentration
    std::uint64_t seed = 0;

    static NoiseModel delta() { return {}; }
    static NoiseModel symmetric(double eta);
    static NoiseModel dirichlet(double alpha, std::uint64_t seed);
};

// Soft maximum-likelihood decoder over the precomputed site table: returns
// the smallest id maximizing sum_i log max(P_i(f_i(x)), floor). Pure and
// thread-safe once constructed.
class Decoder {
  public:
    explicit Decoder(const Codebook& cb, double floor = 1e-12);

    std::uint64_t decode(const EnsembleOutput& out) const;
    double score(const EnsembleOutput& out, std::uint64_t x) const;
    const Codebook& codebook() const { return *cb_; }
    double floor() const { return floor_; }

  private:
    const Codebook* cb_;
    SiteTable table_;
    double floor_;
};

// One-shot wrappers around a freshly built Decoder.
std::uint64_t decode(const Codebook& cb, const EnsembleOutput& out, double floor = 1e-12);

// Returns sum_i log P_i(f_i(x)) and checks it equals the negative sum of
// KL(pushforward delta at x || P_i), the identity behind the decoder.
double decode_kl_view(const Codebook& cb, const EnsembleOutput& out, std::uint64_t x, double floor = 1e-12);

// Stand-in for trained per-site base learners. symmetric(eta) puts 1-eta on
// the true site value and spreads eta uniformly over the rest; dirichlet
// draws a seeded Dirichlet vector and moves its peak onto the true value;
// delta is the exact one-hot.
EnsembleOutput simulate_base_learners(const Codebook& cb, std::uint64_t true_label, const NoiseModel& noise);

struct TrialReport {
    std::uint64_t trials = 0;
    std::uint64_t correct = 0;
    double accuracy = 0.0;
    double ci95_low = 0.0;
    double ci95_high = 1.0;
    std::uint64_t seed = 0;
};

// Uniform labels -> simulate -> decode, fully determined by the seed; trial
// streams are split by counter so thread count does not affect results.
TrialReport run_trials(const Codebook& cb, const NoiseModel& noise, std::uint64_t trials, std::uint64_t seed);

// Wilson score interval at 95%.
void binomial_ci95(std::uint64_t correct, std::uint64_t trials, double& low, double& high);

} // namespace catcode

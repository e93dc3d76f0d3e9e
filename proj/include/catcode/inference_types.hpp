#pragma once

#include <cstdint>
#include <vector>

namespace catcode {

// One base learner's output: a distribution over its site alphabet.
using SiteDistribution = std::vector<double>;

struct EnsembleOutput {
    std::vector<SiteDistribution> dists;
};

} // namespace catcode

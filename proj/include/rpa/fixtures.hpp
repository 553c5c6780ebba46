#pragma once

// Seeded random objects and the fixed joint set used by the verification
// suites. Draws depend only on the seed, never on the platform.

#include <string>
#include <vector>

#include "rpa/hashfam.hpp"
#include "rpa/prob.hpp"

namespace rpa {

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double unit_uniform(Rng& rng);

/// Flat Dirichlet weights; each entry is zeroed with probability
/// zero_prob (at least one entry stays positive).
std::vector<double> random_weights(Rng& rng, std::size_t n, double zero_prob = 0.0);
Dist random_dist(Rng& rng, std::size_t n, double zero_prob = 0.0);
JointDist random_joint(Rng& rng, std::size_t na, std::size_t ne, double zero_prob = 0.0);
Channel random_channel(Rng& rng, std::size_t nx, std::size_t ny, double zero_prob = 0.0);

struct Fixture {
  std::string name;
  JointDist joint;
  bool structured;
};

/// Structured joints followed by seeded random ones; |A| in {4, 8} and
/// |E| in {2, 3, 4}.
std::vector<Fixture> fixture_joints();

}  // namespace rpa

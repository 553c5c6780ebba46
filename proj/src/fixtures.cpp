#include "rpa/fixtures.hpp"

#include <bit>
#include <cmath>

#include "rpa/prob.hpp"

namespace rpa {

double unit_uniform(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<double> random_weights(Rng& rng, std::size_t n, double zero_prob) {
  std::vector<double> w(n);
  bool any = false;
  for (auto& x : w) {
    const bool zero = unit_uniform(rng) < zero_prob;
    const double e = -std::log1p(-unit_uniform(rng));
    x = zero ? 0.0 : e;
    any = any || x > 0.0;
  }
  if (!any) w[0] = 1.0;
  double total = 0.0;
  for (double x : w) total += x;
  for (auto& x : w) x /= total;
  return w;
}

Dist random_dist(Rng& rng, std::size_t n, double zero_prob) { return Dist(Alphabet(n), random_weights(rng, n, zero_prob)); }

JointDist random_joint(Rng& rng, std::size_t na, std::size_t ne, double zero_prob) {
  return JointDist(Alphabet(na), Alphabet(ne), random_weights(rng, na * ne, zero_prob));
}

Channel random_channel(Rng& rng, std::size_t nx, std::size_t ny, double zero_prob) {
  std::vector<double> m;
  m.reserve(nx * ny);
  for (std::size_t x = 0; x < nx; ++x) {
    const auto r = random_weights(rng, ny, zero_prob);
    m.insert(m.end(), r.begin(), r.end());
  }
  return Channel(Alphabet(nx), Alphabet(ny), std::move(m));
}

namespace {

// E = f(A) for a deterministic labeling f.
JointDist deterministic(const Dist& pa, std::size_t ne, std::size_t (*f)(std::size_t)) {
  std::vector<double> t(pa.size() * ne, 0.0);
  for (std::size_t a = 0; a < pa.size(); ++a) t[a * ne + f(a)] = pa[a];
  return JointDist(Alphabet(pa.size()), Alphabet(ne), std::move(t));
}

Dist geometric(std::size_t n, double r) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = std::pow(r, static_cast<double>(i));
  return make_dist(w);
}

}  // namespace

std::vector<Fixture> fixture_joints() {
  std::vector<Fixture> out;
  auto add = [&](std::string name, JointDist j, bool structured) {
    out.push_back({std::move(name), std::move(j), structured});
  };

  add("product-uniform4-bern0.3", product_joint(Dist::uniform(4), Dist::bernoulli(0.3)), true);
  add("identity4", join(Dist::uniform(4), Channel::identity(4)), true);
  add("bsc0.2-squared", join(Dist::uniform(4), iid_power(Channel::bsc(0.2), 2)), true);
  add("bsc0.05-squared-skewed", join(geometric(4, 0.5), iid_power(Channel::bsc(0.05), 2)), true);
  add("uniform4-parity", deterministic(Dist::uniform(4), 2, [](std::size_t a) { return a % 2; }), true);
  add("point-mass4", product_joint(Dist::point_mass(4, 1), Dist::uniform(3)), true);
  add("uniform8-low-bit", deterministic(Dist::uniform(8), 2, [](std::size_t a) { return a & 1; }), true);
  add("uniform8-low-two-bits", deterministic(Dist::uniform(8), 4, [](std::size_t a) { return a & 3; }), true);
  add("geometric8-mod3", deterministic(geometric(8, 0.7), 3, [](std::size_t a) { return a % 3; }), true);
  {
    // A = three bits, E = first bit through BSC(0.1) and weight class.
    std::vector<double> t(8 * 4, 0.0);
    for (std::size_t a = 0; a < 8; ++a) {
      const std::size_t bit = a & 1;
      const std::size_t heavy = std::popcount(a) >= 2 ? 1 : 0;
      for (std::size_t flip = 0; flip < 2; ++flip) t[a * 4 + ((bit ^ flip) + 2 * heavy)] += 0.125 * (flip ? 0.1 : 0.9);
    }
    add("uniform8-noisy-bit-and-weight", JointDist(Alphabet(8), Alphabet(4), std::move(t)), true);
  }

  Rng rng(20240601);
  for (std::size_t na : {4u, 8u}) {
    for (std::size_t ne : {2u, 3u, 4u}) {
      for (double zero : {0.0, 0.25}) {
        add("random-" + std::to_string(na) + "x" + std::to_string(ne) + (zero > 0 ? "-sparse" : ""),
            random_joint(rng, na, ne, zero), false);
      }
    }
  }
  return out;
}

}  // namespace rpa

#pragma once

#include "brute_force.hpp"
#include "toricq/variety.hpp"

#include <random>
#include <string>
#include <vector>

namespace fixtures {

using toricq::Fan;

inline Fan p1() { return Fan{1, {{1}, {-1}}, {{0}, {1}}}; }
inline Fan p2() { return Fan{2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}}}; }
inline Fan p1xp1() { return Fan{2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}}; }
inline Fan threefold() {
  return Fan{3,
             {{0, 0, -1}, {0, 0, 1}, {1, 0, 1}, {0, 1, -1}, {-1, 0, 0}, {0, -1, 0}},
             {{0, 2, 3}, {0, 2, 5}, {0, 3, 4}, {0, 4, 5}, {1, 2, 3}, {1, 2, 5}, {1, 3, 4}, {1, 4, 5}}};
}

struct Named {
  std::string name;
  Fan fan;
};

inline std::vector<Named> all() { return {{"p1", p1()}, {"p2", p2()}, {"p1xp1", p1xp1()}, {"threefold", threefold()}}; }

inline brute::FanData to_brute(const Fan& f) {
  brute::FanData d;
  d.n = f.lattice_rank;
  d.rays = f.rays;
  d.max_cones = f.max_cones;
  return d;
}

inline std::vector<std::int64_t> random_coeffs(std::mt19937& rng, std::size_t r, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<std::int64_t> a(r);
  for (auto& x : a) x = d(rng);
  return a;
}

}  // namespace fixtures

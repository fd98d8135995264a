#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ptscatter/core.hpp"

namespace testing_support {

inline double rel_diff(double got, double want, double floor = 1e-300) {
  return std::abs(got - want) / std::max(std::abs(want), floor);
}

// Seeded generators for property tests. Every draw is reproducible from the
// seed printed by the failing test.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int sign() { return std::uniform_int_distribution<int>(0, 2)(rng_) - 1; }

  ptscat::PotentialSpec spec(ptscat::Model m, double v1_lo = 0.5, double v1_hi = 8.0, double v2_hi = 8.0) {
    ptscat::PotentialSpec s;
    s.model = m;
    s.v1 = uniform(v1_lo, v1_hi);
    s.v2 = uniform(0.0, v2_hi);
    s.a = uniform(0.5, 2.0);
    if (m == ptscat::Model::rect) {
      s.s1 = sign();
      s.s2 = sign();
    }
    return s;
  }

  /// n sorted energies drawn from [lo, hi].
  std::vector<double> energies(int n, double lo, double hi) {
    std::vector<double> e(static_cast<size_t>(n));
    for (auto& v : e) v = uniform(lo, hi);
    std::sort(e.begin(), e.end());
    return e;
  }

 private:
  std::mt19937_64 rng_;
};

inline constexpr ptscat::Model kAllModels[] = {ptscat::Model::rect, ptscat::Model::scarf,
                                               ptscat::Model::rational_odd, ptscat::Model::exp_linear};

inline ptscat::PotentialSpec make(ptscat::Model m, double v1, double v2, double a = 1.0, int s1 = -1,
                                  int s2 = +1) {
  ptscat::PotentialSpec s;
  s.model = m;
  s.v1 = v1;
  s.v2 = v2;
  s.a = a;
  s.s1 = s1;
  s.s2 = s2;
  return s;
}

}  // namespace testing_support

#pragma once

#include <random>
#include <utility>
#include <vector>

#include "hrnr/linalg.hpp"
#include "hrnr/spectral_measure.hpp"

namespace hrnr::testing {

inline SpectralMeasureModel atoms_model(std::vector<std::pair<Point, Multiplicity>> as, double radius = 5.0) {
  std::vector<Atom> atoms;
  for (auto [p, m] : as) atoms.push_back({p, m});
  return SpectralMeasureModel(std::move(atoms), {}, {}, radius);
}

/// n eigenvalues uniform in the disk of radius r.
inline std::vector<Point> random_disk_points(std::mt19937_64& rng, int n, double r) {
  std::uniform_real_distribution<double> u(0, 1), ang(0, kTwoPi);
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) out.push_back(std::polar(r * std::sqrt(u(rng)), ang(rng)));
  return out;
}

inline CMatrix random_normal(std::mt19937_64& rng, int n, double r) {
  return random_normal_with(rng, random_disk_points(rng, n, r));
}

inline CMatrix random_hermitian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Point(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

}  // namespace hrnr::testing

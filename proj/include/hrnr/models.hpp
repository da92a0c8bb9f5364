#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hrnr/spectral_measure.hpp"

namespace hrnr::models {

/// Upper unit semicircle (continuous) plus the atom 0 with multiplicity k.
inline SpectralMeasureModel durszt(std::uint64_t k) {
  return SpectralMeasureModel({{0.0, Multiplicity::finite(k)}}, {ArcPiece{0.0, 1.0, 0.0, kPi}}, {}, 2.0);
}

/// Spectral measure of the bilateral shift: arclength on the unit circle.
inline SpectralMeasureModel bilateral_shift() {
  return SpectralMeasureModel({}, {ArcPiece{0.0, 1.0, 0.0, kTwoPi}}, {}, 2.0);
}

/// T = (+)_{n>=2} diag(-1/n, e^{i pi/n}/n).
inline SpectralMeasureModel infinity_empty(std::size_t prefix_len = 6) {
  SequenceFamily neg, rot;
  for (std::size_t j = 0; j < prefix_len; ++j) {
    const double n = double(j + 2);
    neg.prefix.push_back({Point(-1.0 / n, 0.0), 1});
    rot.prefix.push_back({std::polar(1.0 / n, kPi / n), 1});
  }
  neg.limit = rot.limit = 0.0;
  neg.approach_angle = kPi;
  neg.side = ApproachSide::On;
  neg.term = [](std::size_t j) { return Point(-1.0 / double(j + 2), 0.0); };
  rot.approach_angle = 0.0;
  rot.side = ApproachSide::Above;
  rot.term = [](std::size_t j) {
    const double n = double(j + 2);
    return std::polar(1.0 / n, kPi / n);
  };
  return SpectralMeasureModel({}, {}, {neg, rot}, 2.0);
}

/// Real atoms {1, 0.5, 0, -0.2, -1}.
inline SpectralMeasureModel hermitian() {
  std::vector<Atom> atoms;
  for (double x : {1.0, 0.5, 0.0, -0.2, -1.0}) atoms.push_back({x, Multiplicity::finite(1)});
  return SpectralMeasureModel(std::move(atoms), {}, {}, 2.0);
}

/// Area measure on [-1/2, 1/2]^2 plus atoms 1/2 + i/4 (mult k-1) and 1/2 - i/4.
inline SpectralMeasureModel square_region(std::uint64_t k) {
  ConvexPolygon sq{{Point(-0.5, -0.5), Point(0.5, -0.5), Point(0.5, 0.5), Point(-0.5, 0.5)}};
  std::vector<Atom> atoms;
  if (k > 1) atoms.push_back({Point(0.5, 0.25), Multiplicity::finite(k - 1)});
  atoms.push_back({Point(0.5, -0.25), Multiplicity::finite(1)});
  return SpectralMeasureModel(std::move(atoms), {RegionPiece{sq}}, {}, 1.0);
}

}  // namespace hrnr::models

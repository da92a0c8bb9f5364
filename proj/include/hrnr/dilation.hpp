#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hrnr/error.hpp"
#include "hrnr/geometry.hpp"
#include "hrnr/linalg.hpp"
#include "hrnr/numerical_range.hpp"
#include "hrnr/spectral_measure.hpp"

namespace hrnr {

struct DilationArtifact {
  CMatrix matrix;
  double alpha = 0.0;
  double unitarity_residual = 0.0;
  double compression_residual = 0.0;
  std::size_t defect_rank = 0;

  bool accepted(const Tolerance& tol = {}) const {
    return unitarity_residual <= tol.unitary && compression_residual <= tol.unitary;
  }
};

inline void verify_dilation(DilationArtifact& art, const CMatrix& t, const Tolerance& tol) {
  const auto n = t.rows();
  const auto& u = art.matrix;
  art.unitarity_residual = (u.adjoint() * u - CMatrix::Identity(2 * n, 2 * n)).norm();
  art.compression_residual = (u.topLeftCorner(n, n) - t).norm();
  art.defect_rank = numerical_rank_psd(CMatrix::Identity(n, n) - t.adjoint() * t, tol.eig);
}

inline void require_contraction(const CMatrix& t, const Tolerance& tol) {
  require_square(t, "dilation");
  if (op_norm(t) > 1.0 + tol.eig) fail(ErrorKind::NotContraction, "operator norm exceeds 1");
}

/// [[T, -e^{-ia} D_{T*}], [e^{-ia} D_T, e^{-2ia} T*]]
inline DilationArtifact halmos(const CMatrix& t, double alpha, const Tolerance& tol = {}) {
  tol.validate();
  require_contraction(t, tol);
  const auto n = t.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix dt = psd_sqrt(id - t.adjoint() * t);
  const CMatrix dts = psd_sqrt(id - t * t.adjoint());
  const Point w = unit(-alpha);
  DilationArtifact art;
  art.alpha = alpha;
  art.matrix.resize(2 * n, 2 * n);
  art.matrix << t, -w * dts, w * dt, (w * w) * t.adjoint();
  verify_dilation(art, t, tol);
  return art;
}

/// Q diag(xi, eta) Q* with Q's first column (sqrt t, sqrt(1-t)); its (0,0)
/// entry is d.
inline Eigen::Matrix2cd scalar_dilation(Point d, Point xi, Point eta, const Tolerance& tol = {}) {
  if (std::abs(std::abs(xi) - 1.0) > tol.geom || std::abs(std::abs(eta) - 1.0) > tol.geom)
    fail(ErrorKind::InvalidModel, "scalar dilation endpoints must be unimodular");
  if (std::abs(xi - eta) <= tol.geom) fail(ErrorKind::CoincidentEndpoints, "xi and eta coincide");
  if (distance_to_segment(d, xi, eta) > tol.geom) fail(ErrorKind::NotOnSegment, "d is not on [xi, eta]");
  const double t = std::clamp(std::abs(d - eta) / std::abs(xi - eta), 0.0, 1.0);
  const double a = std::sqrt(t), b = std::sqrt(1.0 - t);
  Eigen::Matrix2cd q;
  q << a, -b, b, a;
  Eigen::Matrix2cd dg = Eigen::Matrix2cd::Zero();
  dg(0, 0) = xi;
  dg(1, 1) = eta;
  return q * dg * q.adjoint();
}

/// Second intersection with the unit circle of the line from eta through d.
inline Point chord_extension(Point eta, Point d) {
  const Point v = d - eta;
  const double len2 = std::norm(v);
  if (len2 == 0.0) return eta;
  const double s = -2.0 * dot(eta, v) / len2;
  const Point xi = eta + s * v;
  return xi / std::abs(xi);
}

/// Dilation of a normal contraction built blockwise in its eigenbasis: the
/// eigenvalues d with Re(e^{ia} d) strictly above lambda_k(Re(e^{ia} T)) get a
/// scalar dilation with eta = -e^{-ia}, the others a rotated Halmos block.
/// Then lambda_k(Re(e^{ia} U)) <= lambda_k(Re(e^{ia} T)).
inline DilationArtifact k_adapted_dilation(const CMatrix& t, std::size_t k, double alpha, const Tolerance& tol = {}) {
  require_contraction(t, tol);
  if (!is_normal(t, tol.eig)) fail(ErrorKind::NotNormal, "k-adapted dilation needs a normal matrix");
  const auto n = t.rows();
  Eigen::ComplexSchur<CMatrix> schur(t);
  if (schur.info() != Eigen::Success) fail(ErrorKind::EigFailure, "Schur decomposition did not converge");
  const CMatrix q = schur.matrixU();
  const double threshold = matrix_lambda_k(t, k, alpha);
  const Point w = unit(alpha);
  const Point eta = -std::conj(w);

  CMatrix blocks = CMatrix::Zero(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Point d = schur.matrixT()(j, j);
    Eigen::Matrix2cd v;
    if ((w * d).real() > threshold + tol.geom) {
      v = scalar_dilation(d, chord_extension(eta, d), eta, tol);
    } else {
      const double s = std::sqrt(std::max(0.0, 1.0 - std::norm(d)));
      const Point c = std::conj(w);
      v << d, -c * s, c * s, c * c * std::conj(d);
    }
    blocks(j, j) = v(0, 0);
    blocks(j, n + j) = v(0, 1);
    blocks(n + j, j) = v(1, 0);
    blocks(n + j, n + j) = v(1, 1);
  }
  CMatrix qq = CMatrix::Zero(2 * n, 2 * n);
  qq.topLeftCorner(n, n) = q;
  qq.bottomRightCorner(n, n) = q;
  DilationArtifact art;
  art.alpha = alpha;
  art.matrix = qq * blocks * qq.adjoint();
  verify_dilation(art, t, tol);
  return art;
}

inline constexpr int kExclusionAlphaGrid = 720;

/// Dilation U of T with lambda outside Lambda_k(U).
inline DilationArtifact excluding_dilation_matrix(const CMatrix& t, std::size_t k, Point lambda,
                                                  const Tolerance& tol = {}) {
  tol.validate();
  require_contraction(t, tol);
  if (!is_normal(t, tol.eig)) fail(ErrorKind::NotNormal, "excluding dilation needs a normal matrix");
  double best = -std::numeric_limits<double>::infinity(), best_alpha = 0.0;
  for (int i = 0; i < kExclusionAlphaGrid; ++i) {
    const double a = kTwoPi * i / kExclusionAlphaGrid;
    const double margin = (unit(a) * lambda).real() - matrix_lambda_k(t, k, a);
    if (margin > best) {
      best = margin;
      best_alpha = a;
    }
  }
  if (!(best > tol.geom)) fail(ErrorKind::NoSeparatingAngle, "no grid angle separates the point from Lambda_k");
  return k_adapted_dilation(t, k, best_alpha, tol);
}

// ---------------------------------------------------------------------------
// Exclusion certificates

struct ScalarDilationEntry {
  Point d, xi, eta;
  double t;
};

struct ExclusionCertificate {
  Point lambda;
  ClosedHalfPlane h;
  std::vector<ScalarDilationEntry> scalar_dilations;
  double beta = 0.0;
  double mu = 0.0;
  std::uint64_t certified_dim = 0;
};

/// Directions worth testing for closed half planes through lambda.
inline std::vector<double> closed_plane_directions(const SpectralMeasureModel& m, Point lambda,
                                                   const Tolerance& tol, std::optional<double> extra = {}) {
  std::vector<double> dirs = candidate_directions(m, lambda, tol);
  if (extra) dirs.push_back(wrap_line_angle(*extra));
  return dirs;
}

/// Closed half plane through lambda with dim ran E < k, if the sweep finds one.
/// `uncertain` is set when some tested plane could not be classified.
inline std::optional<ClosedHalfPlane> find_wu_witness(const SpectralMeasureModel& m, Rank k, Point lambda,
                                                      const Tolerance& tol, bool* uncertain = nullptr,
                                                      std::optional<double> extra = {}) {
  lambda = snap_to_features(m, lambda, tol);
  std::optional<ClosedHalfPlane> best;
  Dim best_dim = Dim::infinite();
  for (double psi : closed_plane_directions(m, lambda, tol, extra)) {
    for (double phi : {psi + 0.5 * kPi, psi - 0.5 * kPi}) {
      const ClosedHalfPlane p{lambda, wrap_angle(phi)};
      try {
        const Dim d = dim_ran_closed(m, p, tol);
        if (!k.reached_by(d) && (!best || d < best_dim)) {
          best = p;
          best_dim = d;
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::UncertainGeometry) throw;
        if (uncertain) *uncertain = true;
      }
    }
  }
  return best;
}

inline ExclusionCertificate excluding_certificate(const SpectralMeasureModel& m, Rank k, Point lambda,
                                                  const Tolerance& tol = {},
                                                  std::optional<ClosedHalfPlane> witness = {}) {
  tol.validate();
  if (k.is_infinite()) fail(ErrorKind::RankExceedsDimension, "certificate needs a finite rank");
  if (witness) {
    if (std::abs(witness->signed_distance(lambda)) > tol.geom)
      fail(ErrorKind::InvalidModel, "witness line must pass through lambda");
    if (k.reached_by(dim_ran_closed(m, *witness, tol))) fail(ErrorKind::NoWuWitness, "given plane has dim >= k");
  } else {
    witness = find_wu_witness(m, k, lambda, tol);
    if (!witness) fail(ErrorKind::NoWuWitness, "every tested closed half plane through lambda has dim >= k");
  }
  const ClosedHalfPlane h{lambda, witness->normal_angle};
  const Point n = h.normal();
  const Point eta = -n;

  ExclusionCertificate cert;
  cert.lambda = lambda;
  cert.h = h;
  cert.beta = wrap_angle(-std::arg(n));
  cert.mu = (unit(cert.beta) * lambda).real();

  const detail::LineQuery q{lambda, n, detail::Mode::Closed, 1, false};
  std::vector<std::pair<Point, std::uint64_t>> inside;
  for (const auto& a : m.atoms())
    if (detail::classify(q, a.location, tol) == Verdict::In) inside.emplace_back(a.location, a.mult.value());
  for (const auto& f : m.families())
    for (const auto& t : f.prefix)
      if (detail::classify(q, t.point, tol) == Verdict::In) inside.emplace_back(t.point, t.mult);
  std::uint64_t counted = 0;
  for (const auto& [z, mult] : inside) counted += mult;
  if (Dim::finite(counted) != dim_ran_closed(m, h, tol))
    fail(ErrorKind::UncertainGeometry, "witness half plane holds tail terms that cannot be enumerated");

  for (const auto& [d, mult] : inside) {
    if (std::abs(d) >= 1.0 - tol.geom) fail(ErrorKind::AtomNotStrictContraction, "atom in the witness plane has |d| >= 1");
    const Point xi = chord_extension(eta, d);
    const double t = std::abs(d - eta) / std::abs(xi - eta);
    for (std::uint64_t r = 0; r < mult; ++r) cert.scalar_dilations.push_back({d, xi, eta, t});
  }
  cert.certified_dim = counted;
  return cert;
}

// ---------------------------------------------------------------------------
// Wu equality check

enum class WuVerdict { EqualityPredicted, StrictContainmentPredicted, Inconclusive };

constexpr const char* to_string(WuVerdict v) {
  switch (v) {
    case WuVerdict::EqualityPredicted: return "EqualityPredicted";
    case WuVerdict::StrictContainmentPredicted: return "StrictContainmentPredicted";
    case WuVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

struct WuEvidence {
  Point point;
  std::optional<ClosedHalfPlane> witness;
  std::string failure_note;  // nonempty when no witness exists among the tested planes
  bool inconclusive = false;
};

struct WuReport {
  WuVerdict verdict = WuVerdict::Inconclusive;
  std::vector<WuEvidence> evidence;
  bool strict_contraction = false;
};

inline WuReport wu_check(const SpectralMeasureModel& m, Rank k, const RegionEstimate& reg, const Tolerance& tol = {},
                         int samples_per_edge = 7) {
  tol.validate();
  const double radius = m.max_modulus();
  if (radius > 1.0 + tol.geom) fail(ErrorKind::NotContraction, "model support leaves the closed unit disk");
  WuReport rep;
  rep.strict_contraction = radius < 1.0 - tol.geom;

  struct Sample {
    Point p;
    std::optional<double> edge_dir;
  };
  std::vector<Sample> samples;
  const auto& v = reg.polygon.vertices;
  const std::size_t edges = v.size() < 2 ? 0 : (v.size() == 2 ? 1 : v.size());
  for (Point p : v) samples.push_back({p, {}});
  for (std::size_t i = 0; i < edges; ++i) {
    const Point a = v[i], b = v[(i + 1) % v.size()];
    for (int j = 1; j <= samples_per_edge; ++j)
      samples.push_back({a + (b - a) * (double(j) / (samples_per_edge + 1)), std::arg(b - a)});
  }

  bool failure = false, inconclusive = false;
  for (const auto& s : samples) {
    Verdict mv = Verdict::Uncertain;
    try {
      mv = member(m, k, s.p, tol).value;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UncertainGeometry) throw;
    }
    if (mv == Verdict::In) continue;
    WuEvidence ev{s.p, {}, {}, false};
    if (mv == Verdict::Uncertain) {
      ev.inconclusive = true;
      inconclusive = true;
      rep.evidence.push_back(ev);
      continue;
    }
    bool unc = false;
    ev.witness = find_wu_witness(m, k, s.p, tol, &unc, s.edge_dir);
    if (!ev.witness) {
      if (unc) {
        ev.inconclusive = true;
        inconclusive = true;
      } else {
        ev.failure_note = "every critical closed half plane through the point has dim >= " + k.str();
        failure = true;
      }
    }
    rep.evidence.push_back(ev);
  }
  rep.verdict = failure ? WuVerdict::StrictContainmentPredicted
                        : (inconclusive ? WuVerdict::Inconclusive : WuVerdict::EqualityPredicted);
  return rep;
}

// ---------------------------------------------------------------------------
// Conjecture explorer

struct ConjectureResult {
  bool holds = false;
  double theta = 0.0;  // first grid angle satisfying the condition
};

/// Scans theta for fewer than k eigenvalues >= 0 of Re(e^{i theta} T - lambda).
inline ConjectureResult conjecture_check(const CMatrix& t, std::size_t k, Point lambda, int n_theta,
                                         const Tolerance& tol = {}) {
  tol.validate();
  require_square(t, "conjecture_check");
  if (!(op_norm(t) < 1.0)) fail(ErrorKind::NotStrictContraction, "conjecture needs a strict contraction");
  if (n_theta < 1) fail(ErrorKind::InvalidModel, "n_theta must be >= 1");
  const auto n = t.rows();
  for (int i = 0; i < n_theta; ++i) {
    const double theta = kTwoPi * i / n_theta;
    const CMatrix s = real_part(t, theta) - lambda.real() * CMatrix::Identity(n, n);
    const RVector ev = hermitian_eigenvalues(s);
    std::size_t nonneg = 0;
    for (Eigen::Index j = 0; j < ev.size(); ++j)
      if (ev(j) >= -tol.eig) ++nonneg;
    if (nonneg < k) return {true, theta};
  }
  return {false, 0.0};
}

// ---------------------------------------------------------------------------
// Intersection of Lambda_k over sampled dilations

struct IntersectionResult {
  ConvexPolygon polygon;
  std::size_t used = 0;
  std::size_t rejected = 0;
};

inline IntersectionResult dilation_intersection(const CMatrix& t, std::size_t k, int n_samples, int n_alpha,
                                                std::uint64_t seed, const Tolerance& tol = {}) {
  tol.validate();
  require_contraction(t, tol);
  const auto n = t.rows();
  if (k < 1 || k > static_cast<std::size_t>(2 * n)) fail(ErrorKind::RankExceedsDimension, "k out of range");
  const bool adapted = k >= 2 && is_normal(t, tol.eig);
  IntersectionResult out;
  bool first = true;
  auto absorb = [&](const DilationArtifact& art) {
    if (!art.accepted(tol)) {
      ++out.rejected;
      return;
    }
    ++out.used;
    const ConvexPolygon p = matrix_region(art.matrix, k, 64, tol);
    out.polygon = first ? p : intersect(out.polygon, p, tol);
    first = false;
  };
  for (int i = 0; i < n_alpha; ++i) {
    const double a = kTwoPi * i / n_alpha;
    absorb(adapted ? k_adapted_dilation(t, k, a, tol) : halmos(t, a, tol));
  }
  std::mt19937_64 rng(seed);
  const DilationArtifact base = halmos(t, 0.0, tol);
  for (int s = 0; s < n_samples; ++s) {
    CMatrix left = CMatrix::Identity(2 * n, 2 * n), right = CMatrix::Identity(2 * n, 2 * n);
    left.bottomRightCorner(n, n) = random_unitary(rng, n);
    right.bottomRightCorner(n, n) = random_unitary(rng, n);
    DilationArtifact art;
    art.matrix = left * base.matrix * right;
    verify_dilation(art, t, tol);
    absorb(art);
  }
  return out;
}

}  // namespace hrnr

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "hrnr/dim.hpp"
#include "hrnr/error.hpp"
#include "hrnr/geometry.hpp"
#include "hrnr/linalg.hpp"
#include "hrnr/spectral_measure.hpp"

namespace hrnr {

struct MembershipVerdict {
  Verdict value = Verdict::Uncertain;
  std::optional<HalfClosedHalfPlane> witness;  // set for Out
  Dim witness_dim;
};

inline void check_rank(const SpectralMeasureModel& m, Rank k) {
  const Dim total = m.total_dimension();
  if (k.is_infinite() && total.is_finite())
    fail(ErrorKind::RankExceedsDimension, "rank inf needs an infinite-dimensional model");
  if (!k.reached_by(total))
    fail(ErrorKind::RankExceedsDimension, "rank " + k.str() + " exceeds total dimension " + total.str());
}

/// A query point within tol.geom of a discrete spectral point is moved onto it.
inline Point snap_to_features(const SpectralMeasureModel& m, Point lambda, const Tolerance& tol) {
  Point best = lambda;
  double d = tol.geom;
  auto consider = [&](Point z) {
    const double e = std::abs(z - lambda);
    if (e <= d) {
      d = e;
      best = z;
    }
  };
  for (const auto& a : m.atoms()) consider(a.location);
  for (const auto& f : m.families())
    for (const auto& t : f.prefix) consider(t.point);
  return best;
}

/// Line directions in [0, pi) at which dim ran E(H), H anchored at lambda,
/// can jump.
inline std::vector<double> critical_directions(const SpectralMeasureModel& m, Point lambda,
                                               const Tolerance& tol = {}) {
  std::vector<double> dirs;
  for (Point p : feature_points(m))
    if (p != lambda) dirs.push_back(wrap_line_angle(std::arg(p - lambda)));
  for (const auto& piece : m.pieces()) {
    const auto* arc = std::get_if<ArcPiece>(&piece);
    if (!arc) continue;
    const double dist = std::abs(arc->center - lambda);
    const double base = std::arg(arc->center - lambda);
    if (dist > arc->radius + tol.geom) {
      const double half = std::asin(arc->radius / dist);
      dirs.push_back(wrap_line_angle(base + half));
      dirs.push_back(wrap_line_angle(base - half));
    } else if (dist >= arc->radius - tol.geom && dist > 0.0) {
      dirs.push_back(wrap_line_angle(base + 0.5 * kPi));
    }
  }
  for (const auto& f : m.families()) dirs.push_back(wrap_line_angle(f.approach_angle));
  std::sort(dirs.begin(), dirs.end());
  dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
  return dirs;
}

/// Critical directions, midpoints between consecutive ones, and a fixed grid.
inline std::vector<double> candidate_directions(const SpectralMeasureModel& m, Point lambda,
                                                const Tolerance& tol = {}, int grid = 64) {
  std::vector<double> crit = critical_directions(m, lambda, tol);
  std::vector<double> out = crit;
  for (std::size_t i = 0; i < crit.size(); ++i) {
    const double a = crit[i];
    const double b = i + 1 < crit.size() ? crit[i + 1] : crit[0] + kPi;
    out.push_back(wrap_line_angle(0.5 * (a + b)));
  }
  for (int i = 0; i < grid; ++i) out.push_back(kPi * i / grid);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// The four half closed-half planes at lambda whose boundary has direction psi.
inline std::array<HalfClosedHalfPlane, 4> hchp_variants(Point lambda, double psi) {
  const double phi = psi + 0.5 * kPi;
  return {hchp_at(lambda, phi, 1), hchp_at(lambda, phi, -1), hchp_at(lambda, phi + kPi, 1),
          hchp_at(lambda, phi + kPi, -1)};
}

/// Minimum of dim ran E(H) over the given directions (4 variants each).
/// Uncertain H are skipped and flagged.
struct HchpSweep {
  std::optional<HalfClosedHalfPlane> argmin;
  Dim min_dim = Dim::infinite();
  bool any_uncertain = false;
};

inline HchpSweep sweep_hchp(const SpectralMeasureModel& m, Point lambda, const std::vector<double>& dirs,
                            const Tolerance& tol = {}, bool finite_only = false) {
  HchpSweep out;
  for (double psi : dirs) {
    for (const auto& h : hchp_variants(lambda, psi)) {
      try {
        const Dim d = dim_ran_hchp(m, h, tol, finite_only);
        if (!out.argmin || d < out.min_dim) {
          out.min_dim = d;
          out.argmin = h;
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::UncertainGeometry) throw;
        out.any_uncertain = true;
      }
    }
  }
  return out;
}

inline MembershipVerdict member(const SpectralMeasureModel& m, Rank k, Point lambda, const Tolerance& tol = {}) {
  tol.validate();
  check_rank(m, k);
  if (!finite(lambda)) fail(ErrorKind::InvalidModel, "query point not finite");
  lambda = snap_to_features(m, lambda, tol);
  const auto sweep = sweep_hchp(m, lambda, candidate_directions(m, lambda, tol), tol, k.is_infinite());
  MembershipVerdict v;
  if (sweep.argmin && !k.reached_by(sweep.min_dim)) {
    v.value = Verdict::Out;
    v.witness = sweep.argmin;
    v.witness_dim = sweep.min_dim;
  } else if (sweep.any_uncertain || !sweep.argmin) {
    v.value = Verdict::Uncertain;
  } else {
    v.value = Verdict::In;
  }
  return v;
}

inline MembershipVerdict member_infinity(const SpectralMeasureModel& m, Point lambda, const Tolerance& tol = {}) {
  return member(m, Rank::infinity(), lambda, tol);
}

enum class BoundaryClass { BoundaryIn, Interior, NotMember };

constexpr const char* to_string(BoundaryClass b) {
  switch (b) {
    case BoundaryClass::BoundaryIn: return "boundary-in";
    case BoundaryClass::Interior: return "interior";
    case BoundaryClass::NotMember: return "not-member";
  }
  return "not-member";
}

inline BoundaryClass is_boundary(const SpectralMeasureModel& m, Rank k, Point lambda, const Tolerance& tol = {}) {
  const auto v = member(m, k, lambda, tol);
  if (v.value == Verdict::Out) return BoundaryClass::NotMember;
  if (v.value == Verdict::Uncertain) fail(ErrorKind::UncertainGeometry, "membership undecided at query point");
  lambda = snap_to_features(m, lambda, tol);
  for (double psi : candidate_directions(m, lambda, tol)) {
    for (double phi : {psi + 0.5 * kPi, psi - 0.5 * kPi}) {
      if (!k.reached_by(dim_ran_open(m, OpenHalfPlane{lambda, phi}, tol))) return BoundaryClass::BoundaryIn;
    }
  }
  return BoundaryClass::Interior;
}

// ---------------------------------------------------------------------------
// Region reconstruction

struct SupportSample {
  double xi;
  double h;
};

struct BoundarySample {
  Point point;
  Verdict verdict;
};

struct RegionEstimate {
  Rank k = Rank::finite(1);
  std::vector<SupportSample> support_samples;
  ConvexPolygon polygon;
  std::vector<BoundarySample> boundary_report;
};

/// {mu : Re(e^{i xi} mu) <= h}
inline ClosedHalfPlane support_plane(double xi, double h) {
  return ClosedHalfPlane{h * unit(-xi), kPi - xi};
}

/// Uniform grid of n angles plus the support directions normal to every pair
/// of features (edges of the region can only lie on such lines).
inline std::vector<double> support_angles(const std::vector<Point>& features, int n_angles,
                                          std::size_t max_features = 48) {
  std::vector<double> xs;
  for (int i = 0; i < n_angles; ++i) xs.push_back(kTwoPi * i / n_angles);
  if (features.size() <= max_features) {
    for (std::size_t i = 0; i < features.size(); ++i)
      for (std::size_t j = i + 1; j < features.size(); ++j) {
        const Point d = features[j] - features[i];
        if (std::abs(d) == 0.0) continue;
        const Point nrm = Point(0.0, 1.0) * d;
        xs.push_back(wrap_angle(-std::arg(nrm)));
        xs.push_back(wrap_angle(-std::arg(-nrm)));
      }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

inline std::vector<BoundarySample> classify_boundary(const SpectralMeasureModel& m, Rank k,
                                                     const ConvexPolygon& poly, const Tolerance& tol) {
  std::vector<Point> pts;
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    pts.push_back(v[i]);
    if (v.size() == 2 && i == 1) break;
    if (v.size() >= 2) pts.push_back(0.5 * (v[i] + v[(i + 1) % v.size()]));
  }
  std::vector<BoundarySample> out;
  for (Point p : pts) {
    Verdict verdict = Verdict::Uncertain;
    try {
      verdict = member(m, k, p, tol).value;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UncertainGeometry) throw;
    }
    out.push_back({p, verdict});
  }
  return out;
}

/// Support samples and polygon only (no boundary classification).
inline RegionEstimate region_polygon(const SpectralMeasureModel& m, Rank k, int n_angles, const Tolerance& tol = {}) {
  tol.validate();
  if (k.is_infinite()) fail(ErrorKind::RankExceedsDimension, "region() needs a finite rank");
  if (n_angles < 8) fail(ErrorKind::InvalidModel, "n_angles must be >= 8");
  if (!k.reached_by(m.total_dimension()))
    fail(ErrorKind::InsufficientDimension, "rank " + k.str() + " exceeds total dimension");
  RegionEstimate est;
  est.k = k;
  std::vector<ClosedHalfPlane> planes;
  for (double xi : support_angles(feature_points(m), n_angles)) {
    const double h = lambda_k_sup(pushforward(m, xi, tol), k, tol);
    est.support_samples.push_back({xi, h});
    planes.push_back(support_plane(xi, h));
  }
  est.polygon = halfplane_intersection(planes, m.support_radius(), tol);
  return est;
}

inline RegionEstimate region(const SpectralMeasureModel& m, Rank k, int n_angles, const Tolerance& tol = {}) {
  RegionEstimate est = region_polygon(m, k, n_angles, tol);
  est.boundary_report = classify_boundary(m, k, est.polygon, tol);
  return est;
}

struct SelfAdjointInterval {
  bool empty = false;
  double a = 0.0, b = 0.0;
  bool a_included = false, b_included = false;
};

inline SelfAdjointInterval selfadjoint_interval(const SpectralMeasureModel& m, Rank k, const Tolerance& tol = {}) {
  tol.validate();
  auto real_point = [&](Point z) { return std::abs(z.imag()) <= tol.geom; };
  for (const auto& a : m.atoms())
    if (!real_point(a.location)) fail(ErrorKind::NotSelfAdjoint, "atom off the real axis");
  for (const auto& p : m.pieces()) {
    const auto* s = std::get_if<SegmentPiece>(&p);
    if (!s || !real_point(s->a) || !real_point(s->b)) fail(ErrorKind::NotSelfAdjoint, "piece off the real axis");
  }
  for (const auto& f : m.families()) {
    bool ok = real_point(f.limit) && f.side == ApproachSide::On && std::abs(std::sin(f.approach_angle)) <= tol.geom;
    for (const auto& t : f.prefix) ok = ok && real_point(t.point);
    if (!ok) fail(ErrorKind::NotSelfAdjoint, "sequence family off the real axis");
  }
  if (k.is_infinite() && m.total_dimension().is_finite())
    fail(ErrorKind::InsufficientDimension, "rank inf on a finite model");
  SelfAdjointInterval out;
  out.b = lambda_k_sup(pushforward(m, 0.0, tol), k, tol);
  out.a = -lambda_k_sup(pushforward(m, kPi, tol), k, tol);
  if (out.a > out.b + tol.geom) {
    out.empty = true;
    return out;
  }
  auto included = [&](double x) {
    return k.reached_by(dim_ran_closed(m, ClosedHalfPlane{x, 0.0}, tol)) &&
           k.reached_by(dim_ran_closed(m, ClosedHalfPlane{x, kPi}, tol));
  };
  out.a_included = included(out.a);
  out.b_included = included(out.b);
  return out;
}

struct Decomposition {
  HalfClosedHalfPlane h;
  std::uint64_t r;  // dim of the part living over h, < k
};

inline std::optional<Decomposition> decompose_excluding(const SpectralMeasureModel& m, Rank k, Point lambda,
                                                        const Tolerance& tol = {}) {
  const auto v = member(m, k, lambda, tol);
  if (v.value == Verdict::In) return std::nullopt;
  if (v.value == Verdict::Uncertain) fail(ErrorKind::UncertainGeometry, "membership undecided at query point");
  return Decomposition{*v.witness, v.witness_dim.value()};
}

// ---------------------------------------------------------------------------
// Finite matrices

/// Eigenvalues (with repetition) of a normal matrix.
inline std::vector<Point> normal_eigenvalues(const CMatrix& m, const Tolerance& tol = {}) {
  require_square(m, "normal_eigenvalues");
  if (!is_normal(m, tol.eig)) fail(ErrorKind::NotNormal, "matrix is not normal");
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  if (es.info() != Eigen::Success) fail(ErrorKind::EigFailure, "eigensolver did not converge");
  std::vector<Point> ev;
  for (Eigen::Index i = 0; i < m.rows(); ++i) ev.push_back(es.eigenvalues()(i));
  return ev;
}

/// k-th largest eigenvalue of Re(e^{i xi} M).
inline double matrix_lambda_k(const CMatrix& m, std::size_t k, double xi) {
  require_square(m, "matrix_lambda_k");
  const auto n = static_cast<std::size_t>(m.rows());
  if (k < 1 || k > n) fail(ErrorKind::RankExceedsDimension, "k must satisfy 1 <= k <= n");
  const RVector ev = hermitian_eigenvalues(real_part(m, xi));
  return ev(static_cast<Eigen::Index>(n - k));
}

/// Closed sweep region from matrix_lambda_k; works for any square matrix.
inline ConvexPolygon matrix_region(const CMatrix& m, std::size_t k, int n_angles, const Tolerance& tol = {}) {
  std::vector<Point> features;
  if (is_normal(m, tol.eig)) features = normal_eigenvalues(m, tol);
  std::vector<ClosedHalfPlane> planes;
  for (double xi : support_angles(features, n_angles)) planes.push_back(support_plane(xi, matrix_lambda_k(m, k, xi)));
  return halfplane_intersection(planes, op_norm(m) + 1.0, tol);
}

template <class F>
void for_each_subset(std::size_t n, std::size_t r, F&& f) {
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  if (r > n) return;
  while (true) {
    f(idx);
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Hulls of all (n-k+1)-subsets of the eigenvalues.
inline std::vector<ConvexPolygon> ckz_hulls(const std::vector<Point>& ev, std::size_t k, const Tolerance& tol = {}) {
  const std::size_t n = ev.size();
  if (k < 1 || k > n) fail(ErrorKind::RankExceedsDimension, "k must satisfy 1 <= k <= n");
  std::vector<ConvexPolygon> hulls;
  for_each_subset(n, n - k + 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<Point> pts;
    for (std::size_t i : idx) pts.push_back(ev[i]);
    hulls.push_back(convex_hull(pts, tol));
  });
  return hulls;
}

inline Verdict ckz_member(const CMatrix& m, std::size_t k, Point lambda, const Tolerance& tol = {}) {
  bool uncertain = false;
  for (const auto& hull : ckz_hulls(normal_eigenvalues(m, tol), k, tol)) {
    const double d = signed_depth(hull, lambda);
    if (d < -tol.geom) return Verdict::Out;
    if (d != 0.0 && std::abs(d) <= tol.geom) uncertain = true;
  }
  return uncertain ? Verdict::Uncertain : Verdict::In;
}

/// Intersection of all subset hulls.
inline ConvexPolygon ckz_polygon(const CMatrix& m, std::size_t k, const Tolerance& tol = {}) {
  const auto hulls = ckz_hulls(normal_eigenvalues(m, tol), k, tol);
  ConvexPolygon out = hulls.front();
  for (std::size_t i = 1; i < hulls.size() && !out.empty(); ++i) out = intersect(out, hulls[i], tol);
  return out;
}

}  // namespace hrnr

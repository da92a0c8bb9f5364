#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hrnr/dim.hpp"
#include "hrnr/error.hpp"
#include "hrnr/geometry.hpp"
#include "hrnr/linalg.hpp"

namespace hrnr {

struct Atom {
  Point location;
  Multiplicity mult = Multiplicity::finite(1);
};

struct SegmentPiece {
  Point a, b;
};

/// center + radius * e^{it}, t in [theta0, theta1].
struct ArcPiece {
  Point center;
  double radius = 1.0;
  double theta0 = 0.0, theta1 = kTwoPi;
};

struct RegionPiece {
  ConvexPolygon poly;
};

using ContinuousPiece = std::variant<SegmentPiece, ArcPiece, RegionPiece>;

enum class ApproachSide { Above, Below, On };

constexpr const char* to_string(ApproachSide s) {
  switch (s) {
    case ApproachSide::Above: return "above";
    case ApproachSide::Below: return "below";
    case ApproachSide::On: return "on";
  }
  return "on";
}

struct FamilyTerm {
  Point point;
  std::uint64_t mult = 1;
};

/// Terms accumulating at `limit` along direction approach_angle. The explicit
/// prefix is followed by infinitely many tail terms of multiplicity tail_mult,
/// all within the last prefix distance of the limit. `term(j)` (optional)
/// returns the j-th term of the whole sequence for j >= prefix.size().
struct SequenceFamily {
  std::vector<FamilyTerm> prefix;
  Point limit;
  double approach_angle = 0.0;
  ApproachSide side = ApproachSide::On;
  std::uint64_t tail_mult = 1;
  std::function<Point(std::size_t)> term;

  double tail_radius() const { return std::abs(prefix.back().point - limit); }
};

inline constexpr std::size_t kTailCutoff = 10000;

class SpectralMeasureModel {
 public:
  SpectralMeasureModel() = default;
  SpectralMeasureModel(std::vector<Atom> atoms, std::vector<ContinuousPiece> pieces,
                       std::vector<SequenceFamily> families, double support_radius,
                       const Tolerance& tol = {})
      : atoms_(std::move(atoms)), pieces_(std::move(pieces)), families_(std::move(families)),
        support_radius_(support_radius) {
    validate(tol);
  }

  /// support_radius = max modulus + 1
  static SpectralMeasureModel with_auto_radius(std::vector<Atom> atoms, std::vector<ContinuousPiece> pieces,
                                               std::vector<SequenceFamily> families, const Tolerance& tol = {}) {
    SpectralMeasureModel m;
    m.atoms_ = std::move(atoms);
    m.pieces_ = std::move(pieces);
    m.families_ = std::move(families);
    m.support_radius_ = 1.0;
    m.support_radius_ = m.max_modulus() + 1.0;
    m.validate(tol);
    return m;
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<ContinuousPiece>& pieces() const { return pieces_; }
  const std::vector<SequenceFamily>& families() const { return families_; }
  double support_radius() const { return support_radius_; }
  bool atoms_only() const { return pieces_.empty() && families_.empty(); }

  Dim total_dimension() const {
    if (!pieces_.empty() || !families_.empty()) return Dim::infinite();
    Dim d = Dim::finite(0);
    for (const auto& a : atoms_) d += a.mult;
    return d;
  }

  /// Upper bound on |z| over the support (exact for atoms, pieces, prefixes).
  double max_modulus() const {
    double m = 0.0;
    for (const auto& a : atoms_) m = std::max(m, std::abs(a.location));
    for (const auto& p : pieces_) {
      if (auto s = std::get_if<SegmentPiece>(&p)) {
        m = std::max({m, std::abs(s->a), std::abs(s->b)});
      } else if (auto c = std::get_if<ArcPiece>(&p)) {
        const double phi = std::arg(c->center);
        const double best = std::abs(c->center) + c->radius * max_cos_on(c->theta0, c->theta1, phi);
        m = std::max({m, best, std::abs(c->center + std::polar(c->radius, c->theta0)),
                      std::abs(c->center + std::polar(c->radius, c->theta1))});
      } else {
        for (Point v : std::get<RegionPiece>(p).poly.vertices) m = std::max(m, std::abs(v));
      }
    }
    for (const auto& f : families_) {
      m = std::max(m, std::abs(f.limit));
      for (const auto& t : f.prefix) m = std::max(m, std::abs(t.point));
    }
    return m;
  }

  /// Image under z -> a z + b.
  SpectralMeasureModel affine_image(Point a, Point b, const Tolerance& tol = {}) const {
    if (a == Point(0.0)) fail(ErrorKind::InvalidModel, "affine map needs a != 0");
    auto f = [=](Point z) { return a * z + b; };
    const double rot = std::arg(a);
    std::vector<Atom> atoms;
    for (const auto& at : atoms_) atoms.push_back({f(at.location), at.mult});
    std::vector<ContinuousPiece> pieces;
    for (const auto& p : pieces_) {
      if (auto s = std::get_if<SegmentPiece>(&p)) {
        pieces.emplace_back(SegmentPiece{f(s->a), f(s->b)});
      } else if (auto c = std::get_if<ArcPiece>(&p)) {
        pieces.emplace_back(ArcPiece{f(c->center), std::abs(a) * c->radius, c->theta0 + rot, c->theta1 + rot});
      } else {
        ConvexPolygon poly;
        for (Point v : std::get<RegionPiece>(p).poly.vertices) poly.vertices.push_back(f(v));
        pieces.emplace_back(RegionPiece{poly});
      }
    }
    std::vector<SequenceFamily> fams;
    for (const auto& fam : families_) {
      SequenceFamily g;
      for (const auto& t : fam.prefix) g.prefix.push_back({f(t.point), t.mult});
      g.limit = f(fam.limit);
      g.approach_angle = fam.approach_angle + rot;
      g.side = fam.side;
      g.tail_mult = fam.tail_mult;
      if (fam.term) g.term = [f, t = fam.term](std::size_t j) { return f(t(j)); };
      fams.push_back(std::move(g));
    }
    return SpectralMeasureModel(std::move(atoms), std::move(pieces), std::move(fams),
                                std::abs(a) * support_radius_ + std::abs(b), tol);
  }

 private:
  void validate(const Tolerance& tol) const {
    tol.validate();
    if (!(support_radius_ > 0.0) || !std::isfinite(support_radius_))
      fail(ErrorKind::InvalidModel, "support_radius must be positive");
    for (const auto& a : atoms_) {
      if (!finite(a.location)) fail(ErrorKind::InvalidModel, "atom location not finite");
      if (a.mult.is_finite() && a.mult.value() == 0) fail(ErrorKind::InvalidModel, "atom multiplicity must be >= 1");
    }
    for (const auto& p : pieces_) {
      if (auto s = std::get_if<SegmentPiece>(&p)) {
        if (!finite(s->a) || !finite(s->b) || !(std::abs(s->a - s->b) > tol.geom))
          fail(ErrorKind::InvalidModel, "segment must have positive length");
      } else if (auto c = std::get_if<ArcPiece>(&p)) {
        if (!finite(c->center) || !(c->radius > 0.0) || !(c->theta1 > c->theta0) ||
            c->theta1 - c->theta0 > kTwoPi + 1e-12)
          fail(ErrorKind::InvalidModel, "arc needs radius > 0 and theta0 < theta1 <= theta0 + 2pi");
      } else {
        const auto& poly = std::get<RegionPiece>(p).poly;
        if (poly.size() < 3 || !(poly.area() > tol.geom))
          fail(ErrorKind::InvalidModel, "region must be a ccw convex polygon with positive area");
        for (std::size_t i = 0; i < poly.size(); ++i) {
          const Point a = poly.vertices[i], b = poly.vertices[(i + 1) % poly.size()],
                      c = poly.vertices[(i + 2) % poly.size()];
          if (cross(b - a, c - b) < -tol.geom) fail(ErrorKind::InvalidModel, "region polygon is not convex");
        }
      }
    }
    for (const auto& f : families_) {
      if (f.prefix.empty()) fail(ErrorKind::InvalidModel, "sequence family needs a nonempty prefix");
      if (!finite(f.limit) || !std::isfinite(f.approach_angle)) fail(ErrorKind::InvalidModel, "family limit not finite");
      if (f.tail_mult == 0) fail(ErrorKind::InvalidModel, "tail multiplicity must be >= 1");
      double prev = std::numeric_limits<double>::infinity();
      const Point v = unit(f.approach_angle + 0.5 * kPi);
      for (const auto& t : f.prefix) {
        const double r = std::abs(t.point - f.limit);
        if (t.mult == 0) fail(ErrorKind::InvalidModel, "prefix multiplicity must be >= 1");
        if (!(r > 0.0)) fail(ErrorKind::InvalidModel, "prefix point equals the limit");
        if (!(r < prev)) fail(ErrorKind::InvalidModel, "prefix distances must strictly decrease");
        prev = r;
        const double tr = dot(t.point - f.limit, v);
        const bool ok = f.side == ApproachSide::Above   ? tr > -tol.geom
                        : f.side == ApproachSide::Below ? tr < tol.geom
                                                        : std::abs(tr) <= tol.geom * std::max(1.0, r);
        if (!ok) fail(ErrorKind::InvalidModel, "prefix point contradicts approach_side");
      }
    }
    const double m = max_modulus();
    if (m > support_radius_ + tol.geom) fail(ErrorKind::InvalidModel, "support exceeds support_radius");
  }

  std::vector<Atom> atoms_;
  std::vector<ContinuousPiece> pieces_;
  std::vector<SequenceFamily> families_;
  double support_radius_ = 1.0;
};

/// Points where dim ran E(H) can change as H turns about a fixed anchor.
inline std::vector<Point> feature_points(const SpectralMeasureModel& m) {
  std::vector<Point> pts;
  for (const auto& a : m.atoms()) pts.push_back(a.location);
  for (const auto& p : m.pieces()) {
    if (auto s = std::get_if<SegmentPiece>(&p)) {
      pts.push_back(s->a);
      pts.push_back(s->b);
    } else if (auto c = std::get_if<ArcPiece>(&p)) {
      if (c->theta1 - c->theta0 < kTwoPi - 1e-12) {
        pts.push_back(c->center + std::polar(c->radius, c->theta0));
        pts.push_back(c->center + std::polar(c->radius, c->theta1));
      }
    } else {
      for (Point v : std::get<RegionPiece>(p).poly.vertices) pts.push_back(v);
    }
  }
  for (const auto& f : m.families()) {
    pts.push_back(f.limit);
    for (const auto& t : f.prefix) pts.push_back(t.point);
  }
  return pts;
}

// ---------------------------------------------------------------------------
// dim ran E(S) for half planes

namespace detail {

enum class Mode { Open, Closed, Ray };

struct LineQuery {
  Point anchor;
  Point n;
  Mode mode = Mode::Closed;
  int ray_sign = 1;
  bool finite_only = false;  // only finite vs infinite matters; tails need not be counted

  Point d() const { return double(ray_sign) * Point(0.0, -1.0) * n; }
  double s(Point z) const { return dot(z - anchor, n); }
  double t(Point z) const { return dot(z - anchor, d()); }
};

inline Verdict classify(const LineQuery& q, Point z, const Tolerance& tol) {
  const double s = q.s(z);
  if (s > tol.geom) return Verdict::In;
  if (s < -tol.geom) return Verdict::Out;
  switch (q.mode) {
    case Mode::Open: return Verdict::Out;
    case Mode::Closed: return Verdict::In;
    case Mode::Ray: break;
  }
  if (z == q.anchor) return Verdict::In;
  const double t = q.t(z);
  if (t > tol.geom) return Verdict::In;
  if (t < -tol.geom) return Verdict::Out;
  return Verdict::Uncertain;
}

inline Dim point_dim(const LineQuery& q, Point z, Dim mult, const Tolerance& tol) {
  switch (classify(q, z, tol)) {
    case Verdict::In: return mult;
    case Verdict::Out: return Dim::finite(0);
    case Verdict::Uncertain: break;
  }
  fail(ErrorKind::UncertainGeometry, "spectral point within tolerance of a half-plane boundary");
}

inline Dim piece_dim(const LineQuery& q, const ContinuousPiece& piece, const Tolerance& tol) {
  const double eps = tol.geom;
  if (auto seg = std::get_if<SegmentPiece>(&piece)) {
    const double sa = q.s(seg->a), sb = q.s(seg->b);
    if (std::max(sa, sb) > eps) return Dim::infinite();
    if (std::abs(sa) > eps || std::abs(sb) > eps) return Dim::finite(0);
    if (q.mode == Mode::Closed) return Dim::infinite();
    if (q.mode == Mode::Open) return Dim::finite(0);
    return std::max(q.t(seg->a), q.t(seg->b)) > eps ? Dim::infinite() : Dim::finite(0);
  }
  if (auto arc = std::get_if<ArcPiece>(&piece)) {
    const double phi = std::arg(q.n);
    const double smax = q.s(arc->center) + arc->radius * max_cos_on(arc->theta0, arc->theta1, phi);
    return smax > eps ? Dim::infinite() : Dim::finite(0);
  }
  for (Point v : std::get<RegionPiece>(piece).poly.vertices)
    if (q.s(v) > eps) return Dim::infinite();
  return Dim::finite(0);
}

/// Counts generated tail terms until they come within `radius` of the limit.
inline Dim count_tail(const SequenceFamily& f, const LineQuery& q, double radius, const Tolerance& tol) {
  if (q.finite_only) return Dim::finite(0);
  if (!f.term) fail(ErrorKind::UncertainGeometry, "sequence tail undecidable without a term generator");
  Dim total = Dim::finite(0);
  for (std::size_t j = f.prefix.size(); j < f.prefix.size() + kTailCutoff; ++j) {
    const Point z = f.term(j);
    if (std::abs(z - f.limit) < radius) return total;
    total += point_dim(q, z, Dim::finite(f.tail_mult), tol);
  }
  fail(ErrorKind::UncertainGeometry, "sequence tail not resolved within the term cutoff");
}

inline Dim family_dim(const SequenceFamily& f, const LineQuery& q, const Tolerance& tol) {
  const double eps = tol.geom;
  Dim total = Dim::finite(0);
  for (const auto& t : f.prefix) total += point_dim(q, t.point, Dim::finite(t.mult), tol);

  const double sl = q.s(f.limit);
  const double r = f.tail_radius();
  if (sl > eps) return Dim::infinite();
  if (sl < -eps) {
    if (sl + r < -eps) return total;
    return total + count_tail(f, q, -sl - eps, tol);
  }

  const Point u = unit(f.approach_angle);
  const double c = dot(u, q.n);
  if (std::abs(c) > eps) return c > 0.0 ? Dim::infinite() : total;
  if (f.side != ApproachSide::On) {
    double w = dot(unit(f.approach_angle + 0.5 * kPi), q.n);
    if (f.side == ApproachSide::Below) w = -w;
    return w > 0.0 ? Dim::infinite() : total;
  }
  // tail lies on the boundary line
  if (q.mode == Mode::Open) return total;
  if (q.mode == Mode::Closed) return Dim::infinite();
  const double tl = q.t(f.limit);
  if (std::abs(tl) <= eps) return dot(u, q.d()) > 0.0 ? Dim::infinite() : total;
  if (tl > eps) return Dim::infinite();
  if (tl + r < -eps) return total;
  return total + count_tail(f, q, -tl - eps, tol);
}

inline Dim dim_ran(const SpectralMeasureModel& m, const LineQuery& q, const Tolerance& tol) {
  Dim total = Dim::finite(0);
  for (const auto& a : m.atoms()) total += point_dim(q, a.location, a.mult, tol);
  for (const auto& p : m.pieces()) {
    total += piece_dim(q, p, tol);
    if (total.is_infinite()) return total;
  }
  for (const auto& f : m.families()) {
    total += family_dim(f, q, tol);
    if (total.is_infinite()) return total;
  }
  return total;
}

}  // namespace detail

/// With finite_only set, a tail that cannot be counted but is known to be
/// finite contributes 0, so a finite result is only a lower bound.
inline Dim dim_ran_hchp(const SpectralMeasureModel& m, const HalfClosedHalfPlane& h, const Tolerance& tol = {},
                        bool finite_only = false) {
  return detail::dim_ran(m, {h.anchor, h.normal(), detail::Mode::Ray, h.ray_sign, finite_only}, tol);
}

inline Dim dim_ran_closed(const SpectralMeasureModel& m, const ClosedHalfPlane& p, const Tolerance& tol = {}) {
  return detail::dim_ran(m, {p.anchor, p.normal(), detail::Mode::Closed, 1, false}, tol);
}

inline Dim dim_ran_open(const SpectralMeasureModel& m, const OpenHalfPlane& p, const Tolerance& tol = {}) {
  return detail::dim_ran(m, {p.anchor, p.normal(), detail::Mode::Open, 1, false}, tol);
}

// ---------------------------------------------------------------------------
// Pushforward under z -> Re(e^{i theta} z)

struct RealAtom {
  double x;
  Multiplicity mult;
};

/// Image of a continuous piece; infinite-dimensional on [lo, hi].
struct RealInterval {
  double lo, hi;
};

/// Above: tail terms lie in (limit, limit + tail_radius]. Below: they
/// increase to the limit. At: they all project onto the limit.
enum class RealSide { Above, Below, At };

struct RealFamily {
  std::vector<RealAtom> prefix;
  double limit = 0.0;
  RealSide side = RealSide::At;
  double tail_radius = 0.0;
  std::uint64_t tail_mult = 1;
  /// (projected value, planar distance to the limit) of term j.
  std::function<std::pair<double, double>(std::size_t)> term;
  std::size_t first_tail_index = 0;
};

struct RealSpectralModel {
  std::vector<RealAtom> atoms;
  std::vector<RealInterval> intervals;
  std::vector<RealFamily> families;

  Dim total_dimension() const {
    if (!intervals.empty() || !families.empty()) return Dim::infinite();
    Dim d = Dim::finite(0);
    for (const auto& a : atoms) d += a.mult;
    return d;
  }
};

inline RealSpectralModel pushforward(const SpectralMeasureModel& m, double theta, const Tolerance& tol = {}) {
  const Point w = unit(theta);
  auto proj = [w](Point z) { return (w * z).real(); };
  RealSpectralModel rm;
  for (const auto& a : m.atoms()) rm.atoms.push_back({proj(a.location), a.mult});
  for (const auto& p : m.pieces()) {
    if (auto s = std::get_if<SegmentPiece>(&p)) {
      const double x = proj(s->a), y = proj(s->b);
      rm.intervals.push_back({std::min(x, y), std::max(x, y)});
    } else if (auto c = std::get_if<ArcPiece>(&p)) {
      // Re(e^{i theta}(c + r e^{it})) = Re(e^{i theta} c) + r cos(t + theta)
      const double x0 = proj(c->center);
      rm.intervals.push_back({x0 + c->radius * min_cos_on(c->theta0, c->theta1, -theta),
                              x0 + c->radius * max_cos_on(c->theta0, c->theta1, -theta)});
    } else {
      const auto& vs = std::get<RegionPiece>(p).poly.vertices;
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (Point v : vs) {
        lo = std::min(lo, proj(v));
        hi = std::max(hi, proj(v));
      }
      rm.intervals.push_back({lo, hi});
    }
  }
  const Point mdir = std::conj(w);  // Re(w z) = <z, conj(w)>
  for (const auto& f : m.families()) {
    RealFamily rf;
    for (const auto& t : f.prefix) rf.prefix.push_back({proj(t.point), Multiplicity::finite(t.mult)});
    rf.limit = proj(f.limit);
    rf.tail_radius = f.tail_radius();
    rf.tail_mult = f.tail_mult;
    rf.first_tail_index = f.prefix.size();
    const double c = dot(unit(f.approach_angle), mdir);
    if (c > tol.geom) {
      rf.side = RealSide::Above;
    } else if (c < -tol.geom) {
      rf.side = RealSide::Below;
    } else if (f.side == ApproachSide::On) {
      rf.side = RealSide::At;
    } else {
      double tv = dot(unit(f.approach_angle + 0.5 * kPi), mdir);
      if (f.side == ApproachSide::Below) tv = -tv;
      rf.side = tv > 0.0 ? RealSide::Above : RealSide::Below;
    }
    if (f.term) {
      rf.term = [proj, t = f.term, lim = f.limit](std::size_t j) {
        const Point z = t(j);
        return std::pair{proj(z), std::abs(z - lim)};
      };
    }
    rm.families.push_back(std::move(rf));
  }
  return rm;
}

/// sup{ b : dim ran E[b, inf) >= k }.
inline double lambda_k_sup(const RealSpectralModel& rm, Rank k, const Tolerance& tol = {}) {
  if (!k.reached_by(rm.total_dimension()))
    fail(ErrorKind::InsufficientDimension, "rank " + k.str() + " exceeds total dimension " + rm.total_dimension().str());

  struct Tail {
    double limit;
    RealSide side;
    double radius;  // Above tails: unresolved terms in (limit, limit + radius]
  };
  std::vector<RealAtom> atoms = rm.atoms;
  std::vector<Tail> tails;
  for (const auto& f : rm.families) {
    for (const auto& a : f.prefix) atoms.push_back(a);
    double radius = f.tail_radius;
    if (f.side == RealSide::Above && f.term) {
      // resolve the tail into atoms as far as the cutoff allows
      for (std::size_t j = f.first_tail_index; j < f.first_tail_index + kTailCutoff; ++j) {
        const auto [x, dist] = f.term(j);
        radius = dist;
        if (dist <= tol.geom) break;
        atoms.push_back({x, Multiplicity::finite(f.tail_mult)});
      }
    }
    if (f.side == RealSide::Above && radius <= tol.geom) tails.push_back({f.limit, RealSide::At, 0.0});
    else tails.push_back({f.limit, f.side, radius});
  }

  std::vector<double> cand;
  for (const auto& a : atoms) cand.push_back(a.x);
  for (const auto& iv : rm.intervals) cand.push_back(iv.hi);
  for (const auto& t : tails) {
    cand.push_back(t.limit);
    if (t.side == RealSide::Above) cand.push_back(t.limit + t.radius);
  }
  std::sort(cand.begin(), cand.end(), std::greater<>());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  // lim_{b -> v-} dim ran E[b, inf), excluding unresolved Above tails above their limit
  auto left_dim = [&](double v) {
    Dim d = Dim::finite(0);
    for (const auto& a : atoms)
      if (a.x >= v) d += a.mult;
    for (const auto& iv : rm.intervals)
      if (iv.hi >= v) return Dim::infinite();
    for (const auto& t : tails)
      if (t.limit >= v) return Dim::infinite();
    return d;
  };

  for (double v : cand) {
    const bool reached = k.reached_by(left_dim(v));
    // an unresolved tail adds finitely many terms above v, which only matters for finite k
    for (const auto& t : tails) {
      if (!k.is_infinite() && t.side == RealSide::Above && v > t.limit && v < t.limit + t.radius)
        fail(ErrorKind::UncertainGeometry, "accumulating tail prevents resolving the k-th eigenvalue");
    }
    if (reached) return v;
  }
  fail(ErrorKind::InsufficientDimension, "no spectral value reaches rank " + k.str());
}

// ---------------------------------------------------------------------------
// Matrices

/// Atoms of a normal matrix, eigenvalues clustered within tol.eig.
inline SpectralMeasureModel from_normal_matrix(const CMatrix& m, const Tolerance& tol = {}) {
  tol.validate();
  require_square(m, "from_normal_matrix");
  if (!is_normal(m, tol.eig)) fail(ErrorKind::NotNormal, "matrix is not normal");
  Eigen::ComplexSchur<CMatrix> schur(m);
  if (schur.info() != Eigen::Success) fail(ErrorKind::EigFailure, "Schur decomposition did not converge");
  const CMatrix& t = schur.matrixT();
  const CMatrix& u = schur.matrixU();
  const double mnorm = std::max(1.0, m.norm());
  const auto n = m.rows();
  std::vector<Point> ev(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    ev[static_cast<std::size_t>(i)] = t(i, i);
    const double res = (m * u.col(i) - t(i, i) * u.col(i)).norm();
    if (res > 10.0 * tol.eig * mnorm) fail(ErrorKind::EigFailure, "eigenpair residual too large");
  }

  // single-linkage clustering
  std::vector<std::size_t> parent(ev.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t i) {
    return parent[i] == i ? i : parent[i] = root(parent[i]);
  };
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (std::size_t j = i + 1; j < ev.size(); ++j)
      if (std::abs(ev[i] - ev[j]) <= tol.eig) parent[root(i)] = root(j);
  std::vector<Atom> atoms;
  std::vector<std::size_t> rep_index(ev.size(), SIZE_MAX);
  std::vector<Point> sums;
  std::vector<std::uint64_t> counts;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const std::size_t r = root(i);
    if (rep_index[r] == SIZE_MAX) {
      rep_index[r] = sums.size();
      sums.push_back(0.0);
      counts.push_back(0);
    }
    sums[rep_index[r]] += ev[i];
    counts[rep_index[r]] += 1;
  }
  for (std::size_t c = 0; c < sums.size(); ++c)
    atoms.push_back({sums[c] / double(counts[c]), Multiplicity::finite(counts[c])});
  return SpectralMeasureModel::with_auto_radius(std::move(atoms), {}, {}, tol);
}

}  // namespace hrnr

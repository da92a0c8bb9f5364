#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "hrnr/error.hpp"

namespace hrnr {

using Point = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Absolute tolerances used throughout. All three must be strictly positive.
struct Tolerance {
  double geom = 1e-9;     // sign tests
  double eig = 1e-8;      // eigenvalue clustering, normality
  double unitary = 1e-10; // dilation residuals

  void validate() const {
    if (!(geom > 0.0) || !(eig > 0.0) || !(unitary > 0.0))
      fail(ErrorKind::InvalidModel, "tolerances must be strictly positive");
  }
};

enum class Verdict { In, Out, Uncertain };

constexpr const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::In: return "in";
    case Verdict::Out: return "out";
    case Verdict::Uncertain: return "uncertain";
  }
  return "uncertain";
}

inline double dot(Point a, Point b) { return a.real() * b.real() + a.imag() * b.imag(); }
inline double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }
inline Point unit(double angle) { return std::polar(1.0, angle); }
inline bool finite(Point z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Maps an angle to [0, 2pi).
inline double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Maps a line direction to [0, pi).
inline double wrap_line_angle(double a) {
  double r = std::fmod(a, kPi);
  if (r < 0.0) r += kPi;
  if (r >= kPi) r = 0.0;
  return r;
}

/// max of cos(t - phi) over t in [t0, t1] (t1 - t0 <= 2pi).
inline double max_cos_on(double t0, double t1, double phi) {
  if (wrap_angle(phi - t0) <= t1 - t0) return 1.0;
  return std::max(std::cos(t0 - phi), std::cos(t1 - phi));
}

/// min of cos(t - phi) over t in [t0, t1].
inline double min_cos_on(double t0, double t1, double phi) {
  if (wrap_angle(phi + kPi - t0) <= t1 - t0) return -1.0;
  return std::min(std::cos(t0 - phi), std::cos(t1 - phi));
}

// ---------------------------------------------------------------------------
// Half planes

/// Open half plane {<z - anchor, n> > 0} together with one closed boundary ray
/// starting at the anchor. The ray points along ray_sign * d where d is the
/// normal n rotated clockwise by 90 degrees, so hchp_at(0, pi/2, +1) is
/// {Im > 0} u [0, inf).
struct HalfClosedHalfPlane {
  Point anchor{};
  double normal_angle = 0.0;
  int ray_sign = 1;

  Point normal() const { return unit(normal_angle); }
  Point ray_direction() const { return double(ray_sign) * Point(0.0, -1.0) * normal(); }
  double signed_distance(Point z) const { return dot(z - anchor, normal()); }
};

inline HalfClosedHalfPlane hchp_at(Point anchor, double normal_angle, int ray_sign) {
  return HalfClosedHalfPlane{anchor, wrap_angle(normal_angle), ray_sign >= 0 ? 1 : -1};
}

/// {<z - anchor, n> >= 0}
struct ClosedHalfPlane {
  Point anchor{};
  double normal_angle = 0.0;

  Point normal() const { return unit(normal_angle); }
  double signed_distance(Point z) const { return dot(z - anchor, normal()); }
};

/// {<z - anchor, n> > 0}
struct OpenHalfPlane {
  Point anchor{};
  double normal_angle = 0.0;

  Point normal() const { return unit(normal_angle); }
  double signed_distance(Point z) const { return dot(z - anchor, normal()); }
};

/// Classifies z against a half closed-half plane. Signed quantities within
/// tol.geom of zero are treated as zero; a point that is then within tol.geom
/// of the anchor along the line (but not the anchor itself) is Uncertain.
inline Verdict hchp_member(const HalfClosedHalfPlane& h, Point z, const Tolerance& tol) {
  if (z == h.anchor) return Verdict::In;
  const double s = h.signed_distance(z);
  if (s > tol.geom) return Verdict::In;
  if (s < -tol.geom) return Verdict::Out;
  const double t = dot(z - h.anchor, h.ray_direction());
  if (t > tol.geom) return Verdict::In;
  if (t < -tol.geom) return Verdict::Out;
  return Verdict::Uncertain;
}

// ---------------------------------------------------------------------------
// Convex polygons

/// Counterclockwise vertex list. Zero vertices is the empty set, one a point,
/// two a segment.
struct ConvexPolygon {
  std::vector<Point> vertices;

  bool empty() const { return vertices.empty(); }
  std::size_t size() const { return vertices.size(); }
  bool is_point() const { return vertices.size() == 1; }
  bool is_segment() const { return vertices.size() == 2; }

  double area() const {
    double a = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      a += cross(vertices[i], vertices[(i + 1) % vertices.size()]);
    return 0.5 * a;
  }

  Point centroid() const {
    if (vertices.empty()) return {};
    if (vertices.size() < 3 || area() <= 0.0) {
      Point s{};
      for (Point v : vertices) s += v;
      return s / double(vertices.size());
    }
    Point c{};
    double a2 = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const Point p = vertices[i], q = vertices[(i + 1) % vertices.size()];
      const double w = cross(p, q);
      a2 += w;
      c += (p + q) * w;
    }
    return c / (3.0 * a2);
  }

  double diameter() const {
    double d = 0.0;
    for (Point p : vertices)
      for (Point q : vertices) d = std::max(d, std::abs(p - q));
    return d;
  }
};

inline double distance_to_segment(Point z, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(z - a);
  const double t = std::clamp(dot(z - a, ab) / len2, 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

/// Distance from z to the boundary of the polygon. For degenerate polygons the
/// whole set is boundary.
inline double distance_to_boundary(const ConvexPolygon& poly, Point z) {
  const auto& v = poly.vertices;
  if (v.empty()) return std::numeric_limits<double>::infinity();
  if (v.size() == 1) return std::abs(z - v[0]);
  double d = std::numeric_limits<double>::infinity();
  const std::size_t n = v.size();
  const std::size_t edges = n == 2 ? 1 : n;
  for (std::size_t i = 0; i < edges; ++i) d = std::min(d, distance_to_segment(z, v[i], v[(i + 1) % n]));
  return d;
}

/// Positive depth inside, negative distance outside (0 on the boundary).
inline double signed_depth(const ConvexPolygon& poly, Point z) {
  const auto& v = poly.vertices;
  if (v.empty()) return -std::numeric_limits<double>::infinity();
  if (v.size() < 3) return -distance_to_boundary(poly, z);
  bool inside = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point a = v[i], b = v[(i + 1) % v.size()];
    if (cross(b - a, z - a) < 0.0) {
      inside = false;
      break;
    }
  }
  const double d = distance_to_boundary(poly, z);
  return inside ? d : -d;
}

/// Distance from z to the (closed) polygon; 0 inside.
inline double distance_to_polygon(const ConvexPolygon& poly, Point z) {
  return std::max(0.0, -signed_depth(poly, z));
}

inline bool polygon_contains(const ConvexPolygon& poly, Point z, double slack) {
  return signed_depth(poly, z) >= -slack;
}

/// Andrew monotone chain. Points closer than tol.geom are merged and vertices
/// within tol.geom of the line through their neighbours are dropped.
inline ConvexPolygon convex_hull(std::span<const Point> points, const Tolerance& tol = {}) {
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  std::vector<Point> uniq;
  for (Point p : pts) {
    bool dup = false;
    for (auto it = uniq.rbegin(); it != uniq.rend(); ++it) {
      if (p.real() - it->real() > tol.geom) break;
      if (std::abs(p - *it) <= tol.geom) {
        dup = true;
        break;
      }
    }
    if (!dup) uniq.push_back(p);
  }
  if (uniq.size() <= 1) return ConvexPolygon{uniq};

  auto turns_left = [&](Point o, Point a, Point b) {
    const double len = std::abs(a - o);
    return cross(a - o, b - o) > tol.geom * std::max(len, 1.0);
  };
  std::vector<Point> hull(2 * uniq.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    while (k >= 2 && !turns_left(hull[k - 2], hull[k - 1], uniq[i])) --k;
    hull[k++] = uniq[i];
  }
  for (std::size_t i = uniq.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && !turns_left(hull[k - 2], hull[k - 1], uniq[i])) --k;
    hull[k++] = uniq[i];
  }
  hull.resize(k - 1);
  if (hull.size() == 2 && std::abs(hull[0] - hull[1]) <= tol.geom) hull.resize(1);
  return ConvexPolygon{hull};
}

inline ConvexPolygon convex_hull(std::initializer_list<Point> points, const Tolerance& tol = {}) {
  return convex_hull(std::span<const Point>(points.begin(), points.size()), tol);
}

/// Sutherland-Hodgman step against one closed half plane. Vertices within
/// tol.geom of the line are kept.
inline ConvexPolygon clip(const ConvexPolygon& poly, const ClosedHalfPlane& plane, const Tolerance& tol) {
  const auto& v = poly.vertices;
  if (v.empty()) return poly;
  if (v.size() == 1) return plane.signed_distance(v[0]) >= -tol.geom ? poly : ConvexPolygon{};
  std::vector<Point> out;
  const std::size_t n = v.size();
  bool all_in = true;
  for (std::size_t i = 0; i < n; ++i) {
    const Point cur = v[i], nxt = v[(i + 1) % n];
    const double sc = plane.signed_distance(cur), sn = plane.signed_distance(nxt);
    if (sc >= -tol.geom) out.push_back(cur);
    else all_in = false;
    if ((sc > tol.geom && sn < -tol.geom) || (sc < -tol.geom && sn > tol.geom))
      out.push_back(cur + (nxt - cur) * (sc / (sc - sn)));
  }
  if (all_in) return poly;
  return convex_hull(out, tol);
}

/// box(+-bound) intersected with every plane.
inline ConvexPolygon halfplane_intersection(std::span<const ClosedHalfPlane> planes, double bound,
                                            const Tolerance& tol = {}) {
  ConvexPolygon poly{{Point(-bound, -bound), Point(bound, -bound), Point(bound, bound), Point(-bound, bound)}};
  for (const auto& p : planes) {
    poly = clip(poly, p, tol);
    if (poly.empty()) break;
  }
  return poly;
}

/// Closed half planes whose intersection is the polygon.
inline std::vector<ClosedHalfPlane> bounding_planes(const ConvexPolygon& poly) {
  const auto& v = poly.vertices;
  std::vector<ClosedHalfPlane> planes;
  if (v.size() == 1) {
    for (double a : {0.0, 0.5 * kPi, kPi, 1.5 * kPi}) planes.push_back({v[0], a});
  } else if (v.size() == 2) {
    const double dir = std::arg(v[1] - v[0]);
    planes.push_back({v[0], dir + 0.5 * kPi});
    planes.push_back({v[0], dir - 0.5 * kPi});
    planes.push_back({v[0], dir});
    planes.push_back({v[1], dir + kPi});
  } else {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point a = v[i], b = v[(i + 1) % v.size()];
      planes.push_back({a, std::arg(b - a) + 0.5 * kPi});
    }
  }
  return planes;
}

inline ConvexPolygon intersect(const ConvexPolygon& a, const ConvexPolygon& b, const Tolerance& tol = {}) {
  if (a.empty() || b.empty()) return {};
  ConvexPolygon out = a;
  for (const auto& p : bounding_planes(b)) {
    out = clip(out, p, tol);
    if (out.empty()) break;
  }
  return out;
}

/// Symmetric Hausdorff distance between two convex polygons.
inline double hausdorff(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (Point p : a.vertices) d = std::max(d, distance_to_polygon(b, p));
  for (Point p : b.vertices) d = std::max(d, distance_to_polygon(a, p));
  return d;
}

}  // namespace hrnr

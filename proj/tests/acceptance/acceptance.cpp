// One PASS/FAIL line per acceptance criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "../properties.hpp"
#include "../support.hpp"
#include "hrnr/hrnr.hpp"
#include "hrnr/models.hpp"

using namespace hrnr;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

Rank rk(std::uint64_t k) { return Rank::finite(k); }

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    o.ok = false;
    o.detail += " (over the " + std::to_string(int(limit_s)) + " s budget)";
  }
  std::printf("%s %d %s: %s [%.2f s]\n", o.ok ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.ok) ++failures;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Outcome hermitian_formula() {
  std::mt19937_64 rng(101);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const CMatrix h = hrnr::testing::random_hermitian(rng, 6);
    const RVector ev = hermitian_eigenvalues(h);  // ascending
    const auto m = from_normal_matrix(h);
    for (std::size_t k = 1; k <= 3; ++k) {
      const double lo = ev(Eigen::Index(k - 1)), hi = ev(Eigen::Index(6 - k));
      const auto poly = region(m, rk(k), 64).polygon;
      if (poly.empty() || poly.size() > 2) return {false, "instance " + std::to_string(i) + " k=" + std::to_string(k) + " not a segment"};
      worst = std::max(worst, hausdorff(poly, convex_hull({Point(lo), Point(hi)})));
    }
  }
  return {worst <= 1e-8, "max Hausdorff to [l_{n-k+1}, l_k] = " + num(worst)};
}

Outcome ckz_equivalence() {
  std::mt19937_64 rng(102);
  std::size_t compared = 0, disagree = 0;
  for (int i = 0; i < 30; ++i) {
    const int n = 3 + i % 5;
    const CMatrix t = hrnr::testing::random_normal(rng, n, 1.0);
    const auto m = from_normal_matrix(t);
    const std::size_t k = 1 + std::size_t(i) % std::min(3, n);
    const auto hulls = ckz_hulls(normal_eigenvalues(t), k);
    for (Point z : props::grid(1.0, 15)) {
      if (compared >= 200 * std::size_t(i + 1)) break;
      double d = 1e300;
      for (const auto& h : hulls) d = std::min(d, std::abs(signed_depth(h, z)));
      if (d <= 1e-6) continue;
      ++compared;
      if (member(m, rk(k), z).value != ckz_member(t, k, z)) ++disagree;
    }
  }
  return {disagree == 0, std::to_string(disagree) + " disagreements over " + std::to_string(compared) + " points"};
}

Outcome bilateral_shift() {
  const auto m = models::bilateral_shift();
  std::vector<Point> pts = props::grid(1.2, 41);
  for (int i = 0; i < 64; ++i) {
    pts.push_back(std::polar(1.0, kTwoPi * i / 64));
    pts.push_back(std::polar(0.995, kTwoPi * i / 64 + 0.01));
  }
  std::size_t bad = 0, checked = 0;
  for (Point z : pts) {
    const double r = std::abs(z);
    if (r > 0.995 && r < 1.0) continue;
    const Verdict want = r <= 0.995 ? Verdict::In : Verdict::Out;
    for (Rank k : {rk(1), rk(2), rk(5), Rank::infinity()}) {
      ++checked;
      if (member(m, k, z).value != want) ++bad;
    }
  }
  return {bad == 0, std::to_string(bad) + " wrong of " + std::to_string(checked) + " verdicts"};
}

Outcome durszt() {
  const std::pair<Point, Verdict> expect[] = {{0.0, Verdict::In},
                                              {0.5, Verdict::Out},
                                              {-0.5, Verdict::Out},
                                              {Point(0.3, 0.4), Verdict::In},
                                              {Point(0, 1), Verdict::Out}};
  for (std::uint64_t k = 1; k <= 3; ++k) {
    const auto m = models::durszt(k);
    for (auto [z, v] : expect)
      if (member(m, rk(k), z).value != v)
        return {false, "k=" + std::to_string(k) + " wrong verdict at " + props::fmt(z)};
    const auto rep = wu_check(m, rk(k), region(m, rk(k), 64));
    if (rep.verdict != WuVerdict::StrictContainmentPredicted)
      return {false, std::string("k=") + std::to_string(k) + " wu_check " + to_string(rep.verdict)};
    bool real_note = false;
    for (const auto& e : rep.evidence) real_note = real_note || (!e.failure_note.empty() && std::abs(e.point.imag()) < 1e-9);
    if (!real_note) return {false, "k=" + std::to_string(k) + " no failure note on the real axis"};
  }
  return {true, "verdicts exact for k=1,2,3; StrictContainmentPredicted"};
}

Outcome infinity_empty() {
  const auto m = models::infinity_empty();
  std::size_t out = 0, in1 = 0;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const Point z(-1.0 + 2.0 * i / 19, -1.0 + 2.0 * j / 19);
      out += member_infinity(m, z).value == Verdict::Out;
      in1 += member(m, rk(1), z).value == Verdict::In;
    }
  return {out == 400 && in1 > 0, std::to_string(out) + "/400 Out at k=inf, " + std::to_string(in1) + " In at k=1"};
}

Outcome exclusion_dilations() {
  std::mt19937_64 rng(106);
  std::size_t total = 0, good = 0;
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const CMatrix t = hrnr::testing::random_normal(rng, 4, 0.95);
    for (std::size_t k = 1; k <= 2; ++k) {
      const auto poly = matrix_region(t, k, 64);
      int got = 0;
      while (got < 50) {
        const Point z = props::in_disk(rng, 1.3);
        if (!poly.empty() && (polygon_contains(poly, z, 0.0) || distance_to_polygon(poly, z) < 1e-3)) continue;
        ++got;
        ++total;
        const auto art = excluding_dilation_matrix(t, k, z);
        worst = std::max({worst, art.unitarity_residual, art.compression_residual});
        if (art.accepted() && member(from_normal_matrix(art.matrix), rk(k), z).value == Verdict::Out) ++good;
      }
    }
  }
  return {good == total, std::to_string(good) + "/" + std::to_string(total) + " excluded, max residual " + num(worst)};
}

Outcome dm_closure() {
  std::mt19937_64 rng(107);
  double worst = 0;
  for (int i = 0; i < 10; ++i) {
    const CMatrix t = hrnr::testing::random_normal(rng, 4, 1.0);
    const auto reg = region(from_normal_matrix(t), rk(1), 64).polygon;
    const auto res = dilation_intersection(t, 1, 50, 720, std::uint64_t(i));
    worst = std::max(worst, hausdorff(res.polygon, reg));
  }
  return {worst <= 1e-2, "max Hausdorff " + num(worst)};
}

Outcome wu_positive() {
  const CMatrix t = diag({0.5, -0.5, Point(0, 0.3)});
  const auto m = from_normal_matrix(t);
  const auto reg = region(m, rk(1), 64);
  const auto rep = wu_check(m, rk(1), reg);
  const double h = hausdorff(dilation_intersection(t, 1, 50, 720, 0).polygon, reg.polygon);
  return {rep.verdict == WuVerdict::EqualityPredicted && h <= 1e-2,
          std::string(to_string(rep.verdict)) + ", Hausdorff " + num(h)};
}

Outcome property_suite() {
  std::mt19937_64 rng(109);
  std::size_t violations = 0;
  std::string first;
  for (int i = 0; i < 100; ++i) {
    const auto m = props::random_model(rng, {true, i % 4 != 0, true});
    const auto v = props::all(m, rng);
    if (!v.empty() && first.empty()) first = "model " + std::to_string(i) + ": " + v.front();
    violations += v.size();
  }
  return {violations == 0, std::to_string(violations) + " violations on 100 models" + (first.empty() ? "" : "; " + first)};
}

}  // namespace

int main() {
  criterion(1, "hermitian interval formula", 5, hermitian_formula);
  criterion(2, "subset-hull formula vs half-plane sweep", 30, ckz_equivalence);
  criterion(3, "bilateral shift", 5, bilateral_shift);
  criterion(4, "durszt strictness", 10, durszt);
  criterion(5, "empty infinite-rank range", 10, infinity_empty);
  criterion(6, "exclusion dilations", 60, exclusion_dilations);
  criterion(7, "dilation intersection closure", 120, dm_closure);
  criterion(8, "wu equality case", 30, wu_positive);
  criterion(9, "property suite", 120, property_suite);
  return failures == 0 ? 0 : 1;
}

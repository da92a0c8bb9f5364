#include <gtest/gtest.h>

#include <random>

#include "hrnr/models.hpp"
#include "hrnr/numerical_range.hpp"
#include "support.hpp"

using namespace hrnr;
using hrnr::testing::atoms_model;

namespace {

const Tolerance tol;
const Dim inf = Dim::infinite();
Dim fin(std::uint64_t n) { return Dim::finite(n); }
Rank rk(std::uint64_t k) { return Rank::finite(k); }

// distance from lambda to the nearest boundary of any subset hull
double ckz_boundary_distance(const CMatrix& m, std::size_t k, Point lambda) {
  double best = 1e300;
  for (const auto& h : ckz_hulls(normal_eigenvalues(m), k)) best = std::min(best, std::abs(signed_depth(h, lambda)));
  return best;
}

}  // namespace

TEST(Member, DursztK2) {
  const auto m = models::durszt(2);
  EXPECT_EQ(member(m, rk(2), 0.0).value, Verdict::In);
  const auto out = member(m, rk(2), 0.5);
  ASSERT_EQ(out.value, Verdict::Out);
  ASSERT_TRUE(out.witness);
  EXPECT_LT(out.witness_dim, fin(2));
  EXPECT_EQ(dim_ran_hchp(m, *out.witness, tol), out.witness_dim);
  EXPECT_EQ(hchp_member(*out.witness, 0.5, tol), Verdict::In);
  EXPECT_EQ(member(m, rk(2), Point(0.3, 0.4)).value, Verdict::In);
  EXPECT_EQ(member(m, rk(2), Point(0, 1)).value, Verdict::Out);
}

TEST(Member, InfiniteAtom) {
  const auto m = atoms_model({{1.0, inf}});
  for (std::uint64_t k : {1, 3, 100}) {
    EXPECT_EQ(member(m, rk(k), 1.0).value, Verdict::In);
    EXPECT_EQ(member(m, rk(k), 0.99).value, Verdict::Out);
  }
}

TEST(Member, RankAboveDimension) {
  try {
    member(models::hermitian(), rk(6), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RankExceedsDimension);
  }
  EXPECT_THROW(member_infinity(models::hermitian(), 0.0), Error);
}

TEST(Member, AgreesWithSubsetHulls5x5) {
  std::mt19937_64 rng(21);
  const CMatrix t = hrnr::testing::random_normal(rng, 5, 0.95);
  const auto m = from_normal_matrix(t);
  int compared = 0;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 10; ++j) {
      const Point z(-1.0 + 2.0 * (i + 0.5) / 20, -1.0 + 2.0 * (j + 0.5) / 10);
      if (ckz_boundary_distance(t, 2, z) <= 1e-6) continue;
      EXPECT_EQ(member(m, rk(2), z).value, ckz_member(t, 2, z)) << z;
      ++compared;
    }
  EXPECT_GT(compared, 150);
}

TEST(MemberInfinity, Examples) {
  EXPECT_EQ(member_infinity(models::bilateral_shift(), 0.3).value, Verdict::In);
  const auto m = models::infinity_empty();
  EXPECT_EQ(member_infinity(m, 0.0).value, Verdict::Out);
  EXPECT_EQ(member_infinity(m, -0.05).value, Verdict::Out);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const Point z(-1.0 + 2.0 * i / 19, -1.0 + 2.0 * j / 19);
      EXPECT_EQ(member_infinity(m, z).value, Verdict::Out) << z;
    }
  EXPECT_EQ(member_infinity(atoms_model({{0.0, inf}}), 0.0).value, Verdict::In);
}

TEST(Region, HermitianCollapsesToSegment) {
  const auto r = region(models::hermitian(), rk(2), 64);
  ASSERT_TRUE(r.polygon.is_segment());
  double lo = 1e9, hi = -1e9;
  for (Point v : r.polygon.vertices) {
    EXPECT_NEAR(v.imag(), 0.0, 1e-9);
    lo = std::min(lo, v.real());
    hi = std::max(hi, v.real());
  }
  EXPECT_NEAR(lo, -0.2, 1e-9);
  EXPECT_NEAR(hi, 0.5, 1e-9);
  for (const auto& s : r.boundary_report) EXPECT_EQ(s.verdict, Verdict::In);
}

TEST(Region, BilateralShiftIsCircumscribedPolygon) {
  for (std::uint64_t k : {1, 4}) {
    const auto r = region(models::bilateral_shift(), rk(k), 64);
    EXPECT_EQ(r.polygon.size(), 64u);
    for (Point v : r.polygon.vertices) EXPECT_NEAR(std::abs(v), 1.0 / std::cos(kPi / 64), 1e-9);
    for (const auto& s : r.boundary_report) EXPECT_EQ(s.verdict, Verdict::Out) << s.point;
  }
}

TEST(Region, InfiniteAtomIsPoint) {
  const Point c(0.25, -0.5);
  const auto r = region(atoms_model({{c, inf}}), rk(3), 32);
  ASSERT_TRUE(r.polygon.is_point());
  EXPECT_NEAR(std::abs(r.polygon.vertices[0] - c), 0.0, 1e-12);
}

TEST(Region, RejectsBadArguments) {
  EXPECT_THROW(region(models::durszt(2), Rank::infinity(), 64), Error);
  EXPECT_THROW(region(models::durszt(2), rk(2), 4), Error);
  EXPECT_THROW(region(models::hermitian(), rk(6), 64), Error);
}

TEST(Region, DursztMatchesHalfDisk) {
  // closure of the upper half disk
  const auto r = region_polygon(models::durszt(2), rk(2), 256);
  EXPECT_NEAR(r.polygon.area(), kPi / 2, 5e-3);
  for (Point v : r.polygon.vertices) EXPECT_GE(v.imag(), -1e-9);
}

TEST(SelfAdjoint, AtomScans) {
  const auto m = atoms_model({{-1.0, fin(1)}, {0.0, inf}, {2.0, fin(3)}});
  auto i2 = selfadjoint_interval(m, rk(2));
  EXPECT_FALSE(i2.empty);
  EXPECT_EQ(i2.a, 0.0);
  EXPECT_EQ(i2.b, 2.0);
  EXPECT_TRUE(i2.a_included && i2.b_included);
  auto i5 = selfadjoint_interval(m, rk(5));
  EXPECT_EQ(i5.a, 0.0);
  EXPECT_EQ(i5.b, 0.0);
  EXPECT_TRUE(i5.a_included);
}

TEST(SelfAdjoint, IntervalPiece) {
  const SpectralMeasureModel m({}, {SegmentPiece{-1.0, 1.0}}, {}, 2.0);
  for (std::uint64_t k : {1, 2, 50}) {
    const auto iv = selfadjoint_interval(m, rk(k));
    EXPECT_EQ(iv.a, -1.0);
    EXPECT_EQ(iv.b, 1.0);
    EXPECT_FALSE(iv.a_included);  // E[1, inf) has measure zero
    EXPECT_FALSE(iv.b_included);
  }
}

TEST(SelfAdjoint, EmptyForHighRank) {
  EXPECT_TRUE(selfadjoint_interval(models::hermitian(), rk(4)).empty);
  const auto iv = selfadjoint_interval(models::hermitian(), rk(3));
  EXPECT_EQ(iv.a, 0.0);
  EXPECT_EQ(iv.b, 0.0);
}

TEST(SelfAdjoint, RejectsComplexSpectrum) {
  try {
    selfadjoint_interval(models::durszt(1), rk(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSelfAdjoint);
  }
}

TEST(IsBoundary, Examples) {
  const auto m = models::durszt(2);
  EXPECT_EQ(is_boundary(m, rk(2), 0.0), BoundaryClass::BoundaryIn);
  EXPECT_EQ(is_boundary(m, rk(2), Point(0.3, 0.4)), BoundaryClass::Interior);
  EXPECT_EQ(is_boundary(m, rk(2), 0.5), BoundaryClass::NotMember);
  EXPECT_EQ(is_boundary(atoms_model({{0.0, inf}}), rk(1), 0.0), BoundaryClass::BoundaryIn);
}

TEST(Ckz, Examples) {
  const CMatrix d4 = diag({1.0, Point(0, 1), -1.0, Point(0, -1)});
  EXPECT_EQ(ckz_member(d4, 2, 0.0), Verdict::In);
  EXPECT_EQ(ckz_member(d4, 2, 0.05), Verdict::Out);
  const auto poly = ckz_polygon(d4, 2);
  ASSERT_TRUE(poly.is_point());
  EXPECT_NEAR(std::abs(poly.vertices[0]), 0.0, 1e-12);

  std::mt19937_64 rng(9);
  const CMatrix t = hrnr::testing::random_normal(rng, 4, 1.0);
  const auto hull = convex_hull(normal_eigenvalues(t));
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 200; ++i) {
    const Point z(u(rng), u(rng));
    const double d = signed_depth(hull, z);
    if (std::abs(d) < 1e-6) continue;
    EXPECT_EQ(ckz_member(t, 1, z), d > 0 ? Verdict::In : Verdict::Out);
  }
  const CMatrix distinct = diag({0.1, 0.2, Point(0, 0.3)});
  for (Point z : {Point(0.1), Point(0.15), Point(0, 0.3), Point(0.5)}) EXPECT_EQ(ckz_member(distinct, 3, z), Verdict::Out);
}

TEST(MatrixLambdaK, Examples) {
  const CMatrix d = diag({1.0, -1.0});
  EXPECT_NEAR(matrix_lambda_k(d, 1, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(matrix_lambda_k(d, 2, 0.0), -1.0, 1e-15);
  CMatrix j(2, 2);
  j << 0, 1, 0, 0;
  EXPECT_NEAR(matrix_lambda_k(j, 1, 0.0), 0.5, 1e-15);
  EXPECT_THROW(matrix_lambda_k(d, 3, 0.0), Error);
}

TEST(Decompose, Examples) {
  const auto m = models::durszt(2);
  const auto dec = decompose_excluding(m, rk(2), 0.5);
  ASSERT_TRUE(dec);
  EXPECT_EQ(dec->r, 0u);
  EXPECT_NEAR(std::abs(dec->h.anchor - 0.5), 0.0, 1e-15);

  const auto two = atoms_model({{0.0, fin(1)}, {1.0, fin(5)}});
  const auto d2 = decompose_excluding(two, rk(2), 0.0);
  ASSERT_TRUE(d2);
  EXPECT_EQ(d2->r, 1u);
  EXPECT_EQ(hchp_member(d2->h, 1.0, tol), Verdict::Out);

  EXPECT_FALSE(decompose_excluding(m, rk(2), Point(0.3, 0.4)));
  EXPECT_FALSE(decompose_excluding(two, rk(1), 0.5));
}

// hrnr: higher-rank numerical ranges of normal operators from the command line.

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iostream>
#include <string>

#include "hrnr/hrnr.hpp"
#include "hrnr/io.hpp"

using namespace hrnr;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kMalformed = 1, kPrecondition = 2, kUncertain = 3, kReproduceFail = 4 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidModel: return kMalformed;
    case ErrorKind::UncertainGeometry: return kUncertain;
    default: return kPrecondition;
  }
}

Point parse_xy(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) fail(ErrorKind::ParseError, "point must be \"x,y\"");
  double x = 0, y = 0;
  auto rx = std::from_chars(s.data(), s.data() + comma, x);
  auto ry = std::from_chars(s.data() + comma + 1, s.data() + s.size(), y);
  if (rx.ec != std::errc() || rx.ptr != s.data() + comma || ry.ec != std::errc() || ry.ptr != s.data() + s.size())
    fail(ErrorKind::ParseError, "point must be \"x,y\" with decimal numbers");
  return {x, y};
}

Rank parse_rank(const std::string& s) {
  if (s == "inf") return Rank::infinity();
  std::uint64_t k = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), k);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size() || k == 0) fail(ErrorKind::ParseError, "k must be a positive integer or inf");
  return Rank::finite(k);
}

io::Input load(const std::string& path) { return io::parse_input(io::read_file(path)); }

CMatrix need_matrix(const io::Input& in) {
  if (auto m = std::get_if<CMatrix>(&in)) return *m;
  fail(ErrorKind::ParseError, "this command needs a matrix input (\"kind\": \"matrix\")");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::ParseError, "cannot write " + path);
  out << text;
}

json hchp_json(const HalfClosedHalfPlane& h) {
  return {{"anchor", io::point_json(h.anchor)}, {"normal_angle", h.normal_angle}, {"ray_sign", h.ray_sign}};
}

// --------------------------------------------------------------------------
// reproduce

struct Checker {
  bool ok = true;
  void check(bool cond, const std::string& what) {
    std::cout << (cond ? "PASS " : "FAIL ") << what << '\n';
    ok = ok && cond;
  }
};

Verdict verdict_of(const SpectralMeasureModel& m, Rank k, Point p) {
  try {
    return member(m, k, p).value;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UncertainGeometry) return Verdict::Uncertain;
    throw;
  }
}

int reproduce(const std::string& name, std::uint64_t k) {
  Checker c;
  const Rank rk = Rank::finite(k);
  if (name == "durszt") {
    const auto m = models::durszt(k);
    c.check(verdict_of(m, rk, 0.0) == Verdict::In, "0 in Lambda_k");
    c.check(verdict_of(m, rk, 0.5) == Verdict::Out, "0.5 not in Lambda_k");
    c.check(verdict_of(m, rk, -0.5) == Verdict::Out, "-0.5 not in Lambda_k");
    c.check(verdict_of(m, rk, Point(0.3, 0.4)) == Verdict::In, "0.3+0.4i in Lambda_k");
    c.check(verdict_of(m, rk, Point(0.0, 1.0)) == Verdict::Out, "i not in Lambda_k");
    const auto rep = wu_check(m, rk, region(m, rk, 64));
    bool real_note = false;
    for (const auto& e : rep.evidence)
      if (!e.failure_note.empty() && std::abs(e.point.imag()) < 1e-9) real_note = true;
    c.check(rep.verdict == WuVerdict::StrictContainmentPredicted && real_note,
            "wu-check StrictContainmentPredicted with a real-axis failure note");
  } else if (name == "bilateral-shift") {
    const auto m = models::bilateral_shift();
    const int n = 64;
    const auto reg = region(m, rk, n);
    double rmin = 1e9, rmax = 0;
    for (Point v : reg.polygon.vertices) {
      rmin = std::min(rmin, std::abs(v));
      rmax = std::max(rmax, std::abs(v));
    }
    c.check(rmin >= 1.0 - 1e-9 && rmax <= 1.0 / std::cos(kPi / n) + 1e-9, "region polygon circumscribes the unit disk");
    bool all_out = !reg.boundary_report.empty();
    for (const auto& b : reg.boundary_report) all_out = all_out && b.verdict == Verdict::Out;
    c.check(all_out, "every boundary sample is out");
    bool same = true, shape = true;
    for (int i = 0; i < 21; ++i)
      for (int j = 0; j < 21; ++j) {
        const Point p(-1.1 + 2.2 * i / 20, -1.1 + 2.2 * j / 20);
        if (std::abs(std::abs(p) - 1.0) < 5e-3) continue;
        const Verdict v1 = verdict_of(m, Rank::finite(1), p);
        for (Rank r : {Rank::finite(2), Rank::finite(5), rk, Rank::infinity()}) same = same && verdict_of(m, r, p) == v1;
        shape = shape && v1 == (std::abs(p) < 1.0 ? Verdict::In : Verdict::Out);
      }
    c.check(shape, "grid verdicts equal the open unit disk");
    c.check(same, "verdicts identical for k in {1, 2, 5, " + rk.str() + ", inf}");
  } else if (name == "infinity-empty") {
    const auto m = models::infinity_empty();
    bool all_out = true;
    int in1 = 0;
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        const Point p(-1.0 + 2.0 * (i + 0.5) / 20, -1.0 + 2.0 * (j + 0.5) / 20);
        all_out = all_out && verdict_of(m, Rank::infinity(), p) == Verdict::Out;
        if (verdict_of(m, Rank::finite(1), p) == Verdict::In) ++in1;
      }
    c.check(all_out, "Lambda_inf grid all out");
    c.check(in1 > 0, "Lambda_1 grid nonempty (" + std::to_string(in1) + " points in)");
    c.check(verdict_of(m, Rank::infinity(), 0.0) == Verdict::Out, "0 not in Lambda_inf");
  } else if (name == "hermitian") {
    const auto m = models::hermitian();
    const auto reg = region(m, rk, 64);
    const auto iv = selfadjoint_interval(m, rk);
    // sorted descending 1, 0.5, 0, -0.2, -1
    const std::vector<double> ev{1.0, 0.5, 0.0, -0.2, -1.0};
    const bool has = k <= ev.size();
    const double lo = has ? ev[ev.size() - k] : 0, hi = has ? ev[k - 1] : 0;
    c.check(has && !iv.empty && std::abs(iv.a - lo) < 1e-9 && std::abs(iv.b - hi) < 1e-9,
            "selfadjoint interval equals [lambda_{n-k+1}, lambda_k]");
    double xmin = 1e9, xmax = -1e9, ymax = 0;
    for (Point v : reg.polygon.vertices) {
      xmin = std::min(xmin, v.real());
      xmax = std::max(xmax, v.real());
      ymax = std::max(ymax, std::abs(v.imag()));
    }
    c.check(has && lo <= hi && std::abs(xmin - lo) < 1e-8 && std::abs(xmax - hi) < 1e-8 && ymax < 1e-8,
            "region polygon degenerates to the same real segment");
  } else if (name == "square-region") {
    if (k < 2) fail(ErrorKind::RankExceedsDimension, "square-region needs k >= 2");
    const auto m = models::square_region(k);
    c.check(verdict_of(m, rk, 0.5) == Verdict::Out, "1/2 not in Lambda_k");
    c.check(verdict_of(m, rk, Point(0.49, 0.49)) == Verdict::In, "0.49+0.49i in Lambda_k");
    c.check(verdict_of(m, rk, Point(0.5, 0.1)) == Verdict::Out, "boundary point 1/2+0.1i not in Lambda_k");
    const auto rep = wu_check(m, rk, region(m, rk, 64));
    c.check(rep.verdict == WuVerdict::StrictContainmentPredicted, "wu-check StrictContainmentPredicted");
  } else {
    fail(ErrorKind::ParseError, "unknown reproduction '" + name + "'");
  }
  std::cout << (c.ok ? "PASS" : "FAIL") << ' ' << name << " k=" << k << '\n';
  return c.ok ? kOk : kReproduceFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher-rank numerical ranges of normal operators"};
  app.require_subcommand(1, 1);

  std::string input, point, k_str = "1", svg_out, json_out, name;
  int angles = 128, thetas = 360, alphas = 720, samples = 50;
  double alpha = 0.0;
  std::uint64_t seed = 0, rk = 0;
  bool check = false;

  auto* region_cmd = app.add_subcommand("region", "reconstruct Lambda_k as a polygon");
  region_cmd->add_option("--input", input)->required();
  region_cmd->add_option("-k", k_str)->required();
  region_cmd->add_option("--angles", angles);
  region_cmd->add_option("--svg", svg_out);
  region_cmd->add_option("--json", json_out);

  auto* member_cmd = app.add_subcommand("member", "decide lambda in Lambda_k");
  member_cmd->add_option("--input", input)->required();
  member_cmd->add_option("-k", k_str)->required();
  member_cmd->add_option("--point", point)->required();

  auto* sa_cmd = app.add_subcommand("selfadjoint", "interval Lambda_k of a self-adjoint model");
  sa_cmd->add_option("--input", input)->required();
  sa_cmd->add_option("-k", k_str)->required();

  auto* dilate_cmd = app.add_subcommand("dilate", "rotated Halmos dilation of a contraction");
  dilate_cmd->add_option("--input", input)->required();
  dilate_cmd->add_option("--alpha", alpha);
  dilate_cmd->add_flag("--check", check, "fail unless residuals are within tolerance");

  auto* wu_cmd = app.add_subcommand("wu-check", "Wu equality condition on sampled boundary points");
  wu_cmd->add_option("--input", input)->required();
  wu_cmd->add_option("-k", k_str)->required();
  wu_cmd->add_option("--angles", angles);

  auto* conj_cmd = app.add_subcommand("conjecture", "evaluate the conjectured dilation condition");
  conj_cmd->add_option("--input", input)->required();
  conj_cmd->add_option("-k", k_str)->required();
  conj_cmd->add_option("--point", point)->required();
  conj_cmd->add_option("--thetas", thetas);

  auto* inter_cmd = app.add_subcommand("intersect", "intersect Lambda_k over sampled unitary dilations");
  inter_cmd->add_option("--input", input)->required();
  inter_cmd->add_option("-k", k_str)->required();
  inter_cmd->add_option("--alphas", alphas);
  inter_cmd->add_option("--samples", samples);
  inter_cmd->add_option("--seed", seed);

  auto* repro_cmd = app.add_subcommand("reproduce", "run a built-in example and compare with known results");
  repro_cmd->add_option("name", name)->required()->check(
      CLI::IsMember({"durszt", "bilateral-shift", "infinity-empty", "hermitian", "square-region"}));
  repro_cmd->add_option("-k", rk);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kMalformed;
  }

  try {
    if (*region_cmd) {
      const Rank k = parse_rank(k_str);
      const auto m = io::as_model(load(input));
      const auto reg = region(m, k, angles);
      const std::string text = io::region_json(reg).dump(2);
      if (!json_out.empty()) write_file(json_out, text + "\n");
      if (!svg_out.empty()) write_file(svg_out, io::region_svg(reg, m.support_radius()));
      std::cout << text << '\n';
      bool all_uncertain = !reg.boundary_report.empty();
      for (const auto& b : reg.boundary_report) all_uncertain = all_uncertain && b.verdict == Verdict::Uncertain;
      return all_uncertain ? kUncertain : kOk;
    }
    if (*member_cmd) {
      const Rank k = parse_rank(k_str);
      const auto m = io::as_model(load(input));
      const auto v = member(m, k, parse_xy(point));
      json out{{"verdict", to_string(v.value)}};
      if (v.witness) {
        out["witness"] = hchp_json(*v.witness);
        out["witness_dim"] = v.witness_dim.str();
      }
      std::cout << out.dump(2) << '\n';
      return v.value == Verdict::Uncertain ? kUncertain : kOk;
    }
    if (*sa_cmd) {
      const auto iv = selfadjoint_interval(io::as_model(load(input)), parse_rank(k_str));
      json out = iv.empty ? json{{"empty", true}}
                          : json{{"empty", false}, {"a", iv.a}, {"b", iv.b}, {"a_included", iv.a_included},
                                 {"b_included", iv.b_included}};
      std::cout << out.dump(2) << '\n';
      return kOk;
    }
    if (*dilate_cmd) {
      const auto art = halmos(need_matrix(load(input)), alpha);
      json out = io::dilation_json(art);
      out["accepted"] = art.accepted();
      std::cout << out.dump(2) << '\n';
      return check && !art.accepted() ? kPrecondition : kOk;
    }
    if (*wu_cmd) {
      const Rank k = parse_rank(k_str);
      const auto m = io::as_model(load(input));
      const auto rep = wu_check(m, k, region(m, k, angles));
      std::cout << io::wu_json(rep).dump(2) << '\n';
      return rep.verdict == WuVerdict::Inconclusive ? kUncertain : kOk;
    }
    if (*conj_cmd) {
      const Rank k = parse_rank(k_str);
      if (k.is_infinite()) fail(ErrorKind::RankExceedsDimension, "matrix input needs a finite k");
      const auto res = conjecture_check(need_matrix(load(input)), k.value(), parse_xy(point), thetas);
      json out = res.holds ? json{{"result", "ConditionHolds"}, {"theta", res.theta}} : json{{"result", "ConditionFails"}};
      std::cout << out.dump(2) << '\n';
      return kOk;
    }
    if (*inter_cmd) {
      const Rank k = parse_rank(k_str);
      if (k.is_infinite()) fail(ErrorKind::RankExceedsDimension, "matrix input needs a finite k");
      const CMatrix t = need_matrix(load(input));
      const auto res = dilation_intersection(t, k.value(), samples, alphas, seed);
      const auto ref = matrix_region(t, k.value(), 256);
      json poly = json::array();
      for (Point v : res.polygon.vertices) poly.push_back(io::point_json(v));
      json out{{"polygon", poly}, {"dilations_used", res.used}, {"dilations_rejected", res.rejected},
               {"hausdorff_to_lambda_k", hausdorff(res.polygon, ref)}};
      std::cout << out.dump(2) << '\n';
      return kOk;
    }
    if (*repro_cmd) {
      if (rk == 0) rk = name == "bilateral-shift" ? 5 : 2;
      return reproduce(name, rk);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  }
  return kOk;
}

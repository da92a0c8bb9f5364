#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "hrnr/dilation.hpp"
#include "hrnr/numerical_range.hpp"
#include "hrnr/spectral_measure.hpp"

namespace hrnr::io {

using nlohmann::json;

using Input = std::variant<SpectralMeasureModel, CMatrix>;

inline json point_json(Point z) { return json::array({z.real(), z.imag()}); }

inline Point parse_point(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(ErrorKind::ParseError, "expected a point [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Multiplicity parse_mult(const json& j) {
  if (j.is_string() && (j == "inf" || j == "infinite")) return Multiplicity::infinite();
  if (j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() > 0)) {
    const auto v = j.get<std::uint64_t>();
    if (v == 0) fail(ErrorKind::ParseError, "multiplicity must be >= 1");
    return Multiplicity::finite(v);
  }
  fail(ErrorKind::ParseError, "multiplicity must be a positive integer or \"inf\"");
}

inline std::uint64_t parse_count(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 1) fail(ErrorKind::ParseError, std::string(what) + " must be >= 1");
  return j.get<std::uint64_t>();
}

inline double number(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_number()) fail(ErrorKind::ParseError, std::string("missing number '") + key + "'");
  return obj[key].get<double>();
}

inline SpectralMeasureModel parse_model(const json& j, const Tolerance& tol = {}) {
  std::vector<Atom> atoms;
  std::vector<ContinuousPiece> pieces;
  std::vector<SequenceFamily> families;
  for (const auto& a : j.value("atoms", json::array())) {
    if (!a.contains("point")) fail(ErrorKind::ParseError, "atom needs a point");
    atoms.push_back({parse_point(a["point"]), a.contains("mult") ? parse_mult(a["mult"]) : Multiplicity::finite(1)});
  }
  for (const auto& p : j.value("pieces", json::array())) {
    const std::string type = p.value("type", "");
    if (type == "segment") {
      pieces.emplace_back(SegmentPiece{parse_point(p.at("a")), parse_point(p.at("b"))});
    } else if (type == "arc") {
      pieces.emplace_back(ArcPiece{parse_point(p.at("center")), number(p, "radius"), number(p, "theta0"), number(p, "theta1")});
    } else if (type == "polygon") {
      std::vector<Point> vs;
      for (const auto& v : p.at("vertices")) vs.push_back(parse_point(v));
      pieces.emplace_back(RegionPiece{convex_hull(vs, tol)});
    } else {
      fail(ErrorKind::ParseError, "unknown piece type '" + type + "'");
    }
  }
  for (const auto& f : j.value("families", json::array())) {
    SequenceFamily fam;
    for (const auto& t : f.at("prefix"))
      fam.prefix.push_back({parse_point(t.at("point")), t.contains("mult") ? parse_count(t["mult"], "mult") : 1});
    fam.limit = parse_point(f.at("limit"));
    fam.approach_angle = number(f, "approach_angle");
    const std::string side = f.value("approach_side", "on");
    if (side == "above") fam.side = ApproachSide::Above;
    else if (side == "below") fam.side = ApproachSide::Below;
    else if (side == "on") fam.side = ApproachSide::On;
    else fail(ErrorKind::ParseError, "approach_side must be above, below or on");
    fam.tail_mult = f.contains("tail_mult") ? parse_count(f["tail_mult"], "tail_mult") : 1;
    families.push_back(std::move(fam));
  }
  if (j.contains("support_radius"))
    return SpectralMeasureModel(std::move(atoms), std::move(pieces), std::move(families), number(j, "support_radius"), tol);
  return SpectralMeasureModel::with_auto_radius(std::move(atoms), std::move(pieces), std::move(families), tol);
}

inline CMatrix parse_matrix(const json& j) {
  const json& data = j.at("data");
  if (!data.is_array() || data.empty()) fail(ErrorKind::ParseError, "matrix data must be a nonempty array");
  const auto n = static_cast<Eigen::Index>(data.size());
  CMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = data[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) fail(ErrorKind::ParseError, "matrix must be square");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = parse_point(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

inline Input parse_input(const std::string& text, const Tolerance& tol = {}) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
  try {
    const std::string kind = j.value("kind", "");
    if (kind == "model") return parse_model(j, tol);
    if (kind == "matrix") return parse_matrix(j);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("malformed input: ") + e.what());
  }
  fail(ErrorKind::ParseError, "\"kind\" must be \"model\" or \"matrix\"");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline SpectralMeasureModel as_model(const Input& in, const Tolerance& tol = {}) {
  if (auto m = std::get_if<SpectralMeasureModel>(&in)) return *m;
  return from_normal_matrix(std::get<CMatrix>(in), tol);
}

inline json model_json(const SpectralMeasureModel& m) {
  json j{{"kind", "model"}, {"support_radius", m.support_radius()}};
  j["atoms"] = json::array();
  for (const auto& a : m.atoms()) {
    json mult = a.mult.is_infinite() ? json("inf") : json(a.mult.value());
    j["atoms"].push_back({{"point", point_json(a.location)}, {"mult", mult}});
  }
  j["pieces"] = json::array();
  for (const auto& p : m.pieces()) {
    if (auto s = std::get_if<SegmentPiece>(&p)) {
      j["pieces"].push_back({{"type", "segment"}, {"a", point_json(s->a)}, {"b", point_json(s->b)}});
    } else if (auto c = std::get_if<ArcPiece>(&p)) {
      j["pieces"].push_back({{"type", "arc"}, {"center", point_json(c->center)}, {"radius", c->radius},
                             {"theta0", c->theta0}, {"theta1", c->theta1}});
    } else {
      json vs = json::array();
      for (Point v : std::get<RegionPiece>(p).poly.vertices) vs.push_back(point_json(v));
      j["pieces"].push_back({{"type", "polygon"}, {"vertices", vs}});
    }
  }
  j["families"] = json::array();
  for (const auto& f : m.families()) {
    json pre = json::array();
    for (const auto& t : f.prefix) pre.push_back({{"point", point_json(t.point)}, {"mult", t.mult}});
    j["families"].push_back({{"prefix", pre}, {"limit", point_json(f.limit)}, {"approach_angle", f.approach_angle},
                             {"approach_side", to_string(f.side)}, {"tail_mult", f.tail_mult}});
  }
  return j;
}

inline json matrix_json(const CMatrix& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(point_json(m(r, c)));
    data.push_back(row);
  }
  return data;
}

// ---------------------------------------------------------------------------
// Region

inline json region_json(const RegionEstimate& r) {
  json j;
  j["k"] = r.k.value();
  j["support"] = json::array();
  for (const auto& s : r.support_samples) j["support"].push_back({{"xi", s.xi}, {"h", s.h}});
  j["polygon"] = json::array();
  for (Point v : r.polygon.vertices) j["polygon"].push_back(point_json(v));
  j["boundary"] = json::array();
  for (const auto& b : r.boundary_report)
    j["boundary"].push_back({{"point", point_json(b.point)}, {"verdict", to_string(b.verdict)}});
  return j;
}

inline Verdict parse_verdict(const std::string& s) {
  if (s == "in") return Verdict::In;
  if (s == "out") return Verdict::Out;
  if (s == "uncertain") return Verdict::Uncertain;
  fail(ErrorKind::ParseError, "unknown verdict '" + s + "'");
}

inline RegionEstimate parse_region(const json& j) {
  try {
    RegionEstimate r;
    r.k = Rank::finite(j.at("k").get<std::uint64_t>());
    for (const auto& s : j.at("support")) r.support_samples.push_back({s.at("xi").get<double>(), s.at("h").get<double>()});
    for (const auto& v : j.at("polygon")) r.polygon.vertices.push_back(parse_point(v));
    for (const auto& b : j.at("boundary"))
      r.boundary_report.push_back({parse_point(b.at("point")), parse_verdict(b.at("verdict").get<std::string>())});
    return r;
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("malformed region: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Dilations

inline json dilation_json(const DilationArtifact& a) {
  return {{"alpha", a.alpha},
          {"matrix", matrix_json(a.matrix)},
          {"unitarity_residual", a.unitarity_residual},
          {"compression_residual", a.compression_residual},
          {"defect_rank", a.defect_rank}};
}

inline json certificate_json(const ExclusionCertificate& c) {
  json sd = json::array();
  for (const auto& s : c.scalar_dilations)
    sd.push_back({{"d", point_json(s.d)}, {"xi", point_json(s.xi)}, {"eta", point_json(s.eta)}, {"t", s.t}});
  return {{"lambda", point_json(c.lambda)},
          {"half_plane", {{"anchor", point_json(c.h.anchor)}, {"normal_angle", c.h.normal_angle}}},
          {"scalar_dilations", sd},
          {"beta", c.beta},
          {"mu", c.mu},
          {"certified_dim", c.certified_dim}};
}

inline json wu_json(const WuReport& r) {
  json ev = json::array();
  for (const auto& e : r.evidence) {
    json item{{"point", point_json(e.point)}};
    if (e.witness) item["witness"] = {{"anchor", point_json(e.witness->anchor)}, {"normal_angle", e.witness->normal_angle}};
    if (!e.failure_note.empty()) item["failure_note"] = e.failure_note;
    if (e.inconclusive) item["inconclusive"] = true;
    ev.push_back(item);
  }
  return {{"verdict", to_string(r.verdict)}, {"strict_contraction", r.strict_contraction}, {"evidence", ev}};
}

// ---------------------------------------------------------------------------
// SVG

/// Edges whose midpoint is In are solid, Out dashed, Uncertain dotted.
inline std::string region_svg(const RegionEstimate& r, double view_radius, int size = 480) {
  const double scale = size / (2.0 * view_radius);
  auto px = [&](Point z) {
    std::ostringstream os;
    os.precision(6);
    os << std::fixed << (z.real() + view_radius) * scale << ',' << (view_radius - z.imag()) * scale;
    return os.str();
  };
  auto verdict_at = [&](Point z) {
    Verdict best = Verdict::Uncertain;
    double d = std::numeric_limits<double>::infinity();
    for (const auto& b : r.boundary_report) {
      const double e = std::abs(b.point - z);
      if (e < d) {
        d = e;
        best = b.verdict;
      }
    }
    return best;
  };
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<line x1=\"0\" y1=\"" << size / 2 << "\" x2=\"" << size << "\" y2=\"" << size / 2
      << "\" stroke=\"#ccc\"/>\n"
      << "<line x1=\"" << size / 2 << "\" y1=\"0\" x2=\"" << size / 2 << "\" y2=\"" << size
      << "\" stroke=\"#ccc\"/>\n";
  const auto& v = r.polygon.vertices;
  if (v.size() >= 3) {
    svg << "<polygon points=\"";
    for (Point p : v) svg << px(p) << ' ';
    svg << "\" fill=\"#9ecae1\" fill-opacity=\"0.4\" stroke=\"none\"/>\n";
  }
  const std::size_t edges = v.size() < 2 ? 0 : (v.size() == 2 ? 1 : v.size());
  for (std::size_t i = 0; i < edges; ++i) {
    const Point a = v[i], b = v[(i + 1) % v.size()];
    const Verdict vd = verdict_at(0.5 * (a + b));
    const char* dash = vd == Verdict::In ? "" : (vd == Verdict::Out ? " stroke-dasharray=\"8,5\"" : " stroke-dasharray=\"2,4\"");
    const auto pa = px(a), pb = px(b);
    svg << "<line x1=\"" << pa.substr(0, pa.find(',')) << "\" y1=\"" << pa.substr(pa.find(',') + 1) << "\" x2=\""
        << pb.substr(0, pb.find(',')) << "\" y2=\"" << pb.substr(pb.find(',') + 1)
        << "\" stroke=\"#08519c\" stroke-width=\"2\" class=\"" << to_string(vd) << "\"" << dash << "/>\n";
  }
  for (const auto& b : r.boundary_report) {
    const auto p = px(b.point);
    svg << "<circle cx=\"" << p.substr(0, p.find(',')) << "\" cy=\"" << p.substr(p.find(',') + 1)
        << "\" r=\"3\" stroke=\"#08519c\" fill=\"" << (b.verdict == Verdict::In ? "#08519c" : "white")
        << "\" class=\"" << to_string(b.verdict) << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace hrnr::io

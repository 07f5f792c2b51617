#include "quasitomo/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "quasitomo/errors.hpp"

namespace quasitomo {

bool same_spec(const ModelSetSpec& a, const ModelSetSpec& b) {
  return a.order == b.order && a.star_exponents == b.star_exponents && a.window == b.window &&
         a.translation == b.translation && a.window_shift == b.window_shift && a.guard_band == b.guard_band &&
         a.closed_window == b.closed_window && a.preset == b.preset;
}

bool operator==(const PointSetDocument& a, const PointSetDocument& b) {
  return a.schema_version == b.schema_version && same_spec(a.spec, b.spec) && a.points == b.points &&
         a.radius == b.radius && a.center == b.center && a.timestamp == b.timestamp;
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const Cyclotomic& z) {
  Json j = Json::array();
  for (const auto& c : z.coeffs()) j.push_back(to_string(c));
  return j;
}

Json to_json(const RealCyclotomic& x) {
  Json j = Json::array();
  for (const auto& c : x.coeffs()) j.push_back(to_string(c));
  return j;
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InvalidArgument("expected an exact rational, got " + j.dump());
}

Cyclotomic cyclotomic_from_json(int n, const Json& j) {
  if (!j.is_array()) throw InvalidArgument("expected a coefficient array, got " + j.dump());
  const int phi = cyclotomic_field(n).degree();
  if (static_cast<int>(j.size()) != phi)
    throw InvalidArgument("coefficient vector of length " + std::to_string(j.size()) + ", expected " +
                          std::to_string(phi));
  std::vector<Rational> c;
  for (const auto& e : j) c.push_back(rational_from_json(e));
  return Cyclotomic(n, std::move(c));
}

namespace {

Json planar(const Planar& p) { return Json::array({p.real(), p.imag()}); }

Planar planar_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidArgument("expected [x, y], got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

Json integer_vector(const Cyclotomic& z) {
  Json j = Json::array();
  for (const auto& c : z.numerators()) {
    if (c.fits_slong_p())
      j.push_back(c.get_si());
    else
      j.push_back(to_string(c));
  }
  return j;
}

Cyclotomic from_integer_vector(int n, const Json& j) {
  const Cyclotomic z = cyclotomic_from_json(n, j);
  if (!z.is_integral()) throw InvalidArgument("point coordinates must be integers: " + j.dump());
  return z;
}

Json point_list(const std::vector<Cyclotomic>& pts) {
  Json j = Json::array();
  for (const auto& p : pts) j.push_back(to_json(p));
  return j;
}

}  // namespace

Json to_json(const ModelSetSpec& spec) {
  Json window = Json::array();
  for (const auto& poly : spec.window) {
    Json p = Json::array();
    for (const auto& v : poly) p.push_back(planar(v));
    window.push_back(p);
  }
  Json shift = Json::array();
  for (const auto& s : spec.window_shift) shift.push_back(planar(s));
  return Json{{"order", spec.order},           {"star_exponents", spec.star_exponents},
              {"window", window},              {"translation", to_json(spec.translation)},
              {"window_shift", shift},         {"guard_band", spec.guard_band},
              {"closed_window", spec.closed_window}, {"preset", spec.preset}};
}

ModelSetSpec spec_from_json(const Json& j) {
  ModelSetSpec s;
  s.order = j.at("order").get<int>();
  s.star_exponents = j.at("star_exponents").get<std::vector<int>>();
  for (const auto& poly : j.at("window")) {
    ConvexPolygon p;
    for (const auto& v : poly) p.push_back(planar_from(v));
    s.window.push_back(std::move(p));
  }
  s.translation = cyclotomic_from_json(s.order, j.at("translation"));
  for (const auto& v : j.at("window_shift")) s.window_shift.push_back(planar_from(v));
  s.guard_band = j.value("guard_band", 1e-9);
  s.closed_window = j.value("closed_window", false);
  s.preset = j.value("preset", std::string());
  s.validate();
  return s;
}

Json to_json(const PointSetDocument& doc) {
  Json pts = Json::array();
  for (const auto& p : doc.points.points) pts.push_back(integer_vector(p));
  Json shift = Json::array();
  for (const auto& s : doc.spec.window_shift) shift.push_back(planar(s));
  Json j{{"schema_version", doc.schema_version},
         {"order", doc.spec.order},
         {"translation", to_json(doc.points.translation)},
         {"spec", to_json(doc.spec)},
         {"points", pts},
         {"metadata",
          {{"window_shift", shift}, {"radius", doc.radius}, {"center", planar(doc.center)}, {"timestamp", doc.timestamp}}}};
  if (!doc.spec.preset.empty()) j["preset"] = doc.spec.preset;
  return j;
}

PointSetDocument document_from_json(const Json& j) {
  PointSetDocument doc;
  doc.schema_version = j.at("schema_version").get<std::string>();
  if (doc.schema_version != "1") throw InvalidArgument("unsupported schema version " + doc.schema_version);
  const int n = j.at("order").get<int>();
  if (j.contains("spec"))
    doc.spec = spec_from_json(j.at("spec"));
  else
    doc.spec = preset_spec(j.at("preset").get<std::string>());
  if (doc.spec.order != n) throw OrderMismatch(doc.spec.order, n);
  const Cyclotomic t = cyclotomic_from_json(n, j.at("translation"));
  std::vector<Cyclotomic> pts;
  for (const auto& p : j.at("points")) pts.push_back(from_integer_vector(n, p));
  doc.points = FinitePointSet(n, t, std::move(pts));
  if (j.contains("metadata")) {
    const auto& m = j.at("metadata");
    doc.radius = m.value("radius", 0.0);
    if (m.contains("center")) doc.center = planar_from(m.at("center"));
    doc.timestamp = m.value("timestamp", std::string());
  }
  return doc;
}

PointSetDocument read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return document_from_json(Json::parse(in));
  } catch (const Json::exception& e) {
    throw InvalidArgument("malformed document " + path + ": " + e.what());
  }
}

void write_json(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << j.dump(2) << '\n';
}

Json to_json(const XRaySnapshot& x) {
  Json lines = Json::array();
  for (const auto& [k, c] : x.buckets) lines.push_back({{"key", to_json(k)}, {"count", c}});
  return Json{{"direction", to_json(x.direction.rep())}, {"total", x.total()}, {"lines", lines}};
}

Json to_json(const PolygonInPlane& P) { return Json{{"order", P.order()}, {"vertices", point_list(P.vertices())}}; }

PolygonInPlane polygon_from_json(const Json& j) {
  const int n = j.at("order").get<int>();
  std::vector<Cyclotomic> v;
  for (const auto& e : j.at("vertices")) v.push_back(cyclotomic_from_json(n, e));
  return PolygonInPlane(n, std::move(v));
}

Json to_json(const DeterminationCertificate& c) {
  Json dirs = Json::array();
  for (const auto& d : c.directions) dirs.push_back(to_json(d.rep()));
  Json j{{"directions", dirs},
         {"verdict", to_string(c.verdict)},
         {"reason", to_string(c.reason)},
         {"witness", c.witness ? to_json(*c.witness) : Json(nullptr)}};
  if (!c.directions.empty()) j["order"] = c.directions.front().order();
  if (!c.deciding_quadruple.empty()) {
    Json q = Json::array();
    for (const auto& d : c.deciding_quadruple) q.push_back(to_json(d.rep()));
    j["deciding_quadruple"] = q;
  }
  if (c.cross_ratio) {
    const auto& v = *c.cross_ratio;
    j["cross_ratio"] = {{"value", to_json(v.value)},   {"value_decimal", v.value.value()},
                        {"norm", to_string(v.norm)},   {"n1_member", v.n1_member},
                        {"n2_member", v.n2_member},    {"two_prime_ok", v.two_prime_ok},
                        {"outcome", to_string(v.verdict)}};
  }
  return j;
}

Json to_json(const SecondDirectionResult& r) {
  return Json{{"epsilon", to_string(r.epsilon)},
              {"r", r.r},
              {"direction", to_json(r.direction.rep())},
              {"auxiliary", to_json(r.auxiliary)},
              {"candidates", r.candidates.size()},
              {"note", r.note}};
}

Json to_json(const HomothetyEmbedding& h) {
  return Json{{"scale", to_json(h.scale)},
              {"scale_decimal", h.scale.value()},
              {"power", h.power},
              {"offset", to_json(h.offset)},
              {"denominator_lcm", to_string(h.denominator_lcm)},
              {"image", point_list(h.image.absolute_points())}};
}

std::vector<Rational> parse_coefficients(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw InvalidArgument("empty coefficient list");
  return out;
}

Cyclotomic parse_cyclotomic(int n, const std::string& text) {
  auto c = parse_coefficients(text);
  const int phi = cyclotomic_field(n).degree();
  if (static_cast<int>(c.size()) > phi)
    throw InvalidArgument("'" + text + "' has more than " + std::to_string(phi) + " coefficients");
  c.resize(phi, Rational(0));
  return Cyclotomic(n, std::move(c));
}

namespace {

std::string fmt(double v) {
  if (std::abs(v) < 5e-7) v = 0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string render_svg(const std::vector<Cyclotomic>& points, const RenderOptions& opt) {
  std::vector<Planar> all;
  auto place = [&](const Cyclotomic& z) {
    const Planar v = z.value();
    return Planar(v.real() * opt.scale, -v.imag() * opt.scale);
  };
  for (const auto& z : points) all.push_back(place(z));
  if (opt.polygon)
    for (const auto& z : opt.polygon->vertices()) all.push_back(place(z));
  for (const auto* s : {opt.first, opt.second})
    if (s)
      for (const auto& z : *s) all.push_back(place(z));

  double x0 = 0, y0 = 0, x1 = 100, y1 = 100;
  if (!all.empty()) {
    const double pad = 10 + opt.point_radius;
    x0 = y0 = 1e300;
    x1 = y1 = -1e300;
    for (const auto& p : all) {
      x0 = std::min(x0, p.real());
      x1 = std::max(x1, p.real());
      y0 = std::min(y0, p.imag());
      y1 = std::max(y1, p.imag());
    }
    x0 -= pad, y0 -= pad, x1 += pad, y1 += pad;
  }
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(x1 - x0) << "\" height=\""
     << fmt(y1 - y0) << "\" viewBox=\"" << fmt(x0) << ' ' << fmt(y0) << ' ' << fmt(x1 - x0) << ' ' << fmt(y1 - y0)
     << "\">\n"
     << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y0) << "\" width=\"" << fmt(x1 - x0) << "\" height=\""
     << fmt(y1 - y0) << "\" fill=\"#ffffff\"/>\n";
  if (opt.polygon) {
    os << "<path d=\"";
    bool first = true;
    for (const auto& z : opt.polygon->vertices()) {
      const Planar p = place(z);
      os << (first ? "M " : " L ") << fmt(p.real()) << ' ' << fmt(p.imag());
      first = false;
    }
    os << " Z\" fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1.000000\"/>\n";
  }
  auto group = [&](const std::vector<Cyclotomic>& pts, const char* color, double r) {
    os << "<g fill=\"" << color << "\">\n";
    for (const auto& z : pts) {
      const Planar p = place(z);
      os << "<circle cx=\"" << fmt(p.real()) << "\" cy=\"" << fmt(p.imag()) << "\" r=\"" << fmt(r) << "\"/>\n";
    }
    os << "</g>\n";
  };
  group(points, "#444444", opt.point_radius);
  const std::vector<Cyclotomic> none;
  const auto& a = opt.first ? *opt.first : none;
  const auto& b = opt.second ? *opt.second : none;
  const std::set<Cyclotomic> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::vector<Cyclotomic> only_a, only_b, shared;
  for (const auto& z : a) (sb.count(z) ? shared : only_a).push_back(z);
  for (const auto& z : b)
    if (!sa.count(z)) only_b.push_back(z);
  if (!shared.empty()) group(shared, "#9467bd", opt.point_radius * 1.6);
  if (!only_a.empty()) group(only_a, "#d62728", opt.point_radius * 1.6);
  if (!only_b.empty()) group(only_b, "#1f77b4", opt.point_radius * 1.6);
  os << "</svg>\n";
  return os.str();
}

}  // namespace quasitomo

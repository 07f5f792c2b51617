#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "quasitomo/errors.hpp"
#include "quasitomo/io.hpp"
#include "quasitomo/valuation.hpp"

namespace quasitomo {

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNonGeneric = 3;
constexpr int kExitInconclusive = 4;
constexpr int kExitInternal = 5;

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw InvalidArgument("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

Planar parse_planar(const std::string& text) {
  const auto v = parse_doubles(text);
  if (v.size() != 2) throw InvalidArgument("expected x,y but got '" + text + "'");
  return {v[0], v[1]};
}

std::vector<Direction> parse_directions(int n, const std::vector<std::string>& items) {
  std::vector<Direction> out;
  for (const auto& s : items) out.emplace_back(parse_cyclotomic(n, s));
  return out;
}

void emit(const Json& j, const std::string& path, std::ostream& out) {
  if (path.empty())
    out << j.dump(2) << '\n';
  else
    write_json(j, path);
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidArgument("malformed JSON in " + path + ": " + e.what());
  }
}

std::vector<Cyclotomic> points_from_json(int n, const Json& j) {
  std::vector<Cyclotomic> out;
  for (const auto& e : j) out.push_back(cyclotomic_from_json(n, e));
  return out;
}

std::string tau_hint(const ModelSetSpec& spec) {
  std::ostringstream os;
  os << std::setprecision(9);
  for (int i = 0; i < spec.internal_planes(); ++i) {
    if (i) os << ',';
    os << 1e-3 / std::numbers::pi << ',' << 1e-3 / std::numbers::e;
  }
  return os.str();
}

struct Options {
  std::string preset, spec_file, in, out, tau, center = "0,0", family, polygon_file, switch_file;
  std::vector<std::string> dirs, points;
  double radius = 0, bounded = 0, scale = 40;
  int order = 0, extent = 1, mmax = 36;
  unsigned threads = 1;
  bool closed = false;
};

ModelSetSpec load_spec(const Options& o) {
  if (!o.preset.empty() && !o.spec_file.empty()) throw InvalidArgument("give either --preset or --spec, not both");
  if (!o.spec_file.empty()) return spec_from_json(load_json(o.spec_file));
  if (o.preset.empty()) throw InvalidArgument("a model set is required (--preset or --spec)");
  return preset_spec(o.preset);
}

int cmd_generate(const Options& o, std::ostream& out, std::ostream& err) {
  ModelSetSpec spec = load_spec(o);
  if (!o.tau.empty()) {
    const auto v = parse_doubles(o.tau);
    if (v.size() != 2 * static_cast<std::size_t>(spec.internal_planes()))
      throw InvalidArgument("--tau needs " + std::to_string(2 * spec.internal_planes()) + " numbers");
    spec.window_shift.clear();
    for (std::size_t i = 0; i < v.size(); i += 2) spec.window_shift.emplace_back(v[i], v[i + 1]);
  }
  spec.closed_window = spec.closed_window || o.closed;
  if (!(o.radius > 0)) throw InvalidArgument("--radius must be positive");
  PointSetDocument doc;
  doc.center = parse_planar(o.center);
  doc.radius = o.radius;
  try {
    doc.points = generate(spec, doc.center, o.radius, o.threads);
  } catch (const NonGenericConfiguration& e) {
    err << "error: " << e.what() << '\n'
        << "hint: perturb the window, e.g. --tau " << tau_hint(spec) << ", or pass --closed\n";
    return kExitNonGeneric;
  }
  doc.spec = spec;
  doc.timestamp = utc_now();
  emit(to_json(doc), o.out, out);
  err << doc.points.size() << " points\n";
  return 0;
}

int cmd_xray(const Options& o, std::ostream& out) {
  const auto doc = read_document(o.in);
  Json j = Json::array();
  for (const auto& u : parse_directions(doc.spec.order, o.dirs)) j.push_back(to_json(xray(doc.points, u)));
  emit(j, o.out, out);
  return 0;
}

int cmd_grid(const Options& o, std::ostream& out) {
  const auto doc = read_document(o.in);
  const auto G = grid(doc.points, parse_directions(doc.spec.order, o.dirs));
  Json pts = Json::array();
  for (const auto& g : G) pts.push_back(to_json(g));
  emit(Json{{"order", doc.spec.order}, {"count", G.size()}, {"points", pts}}, o.out, out);
  return 0;
}

int cmd_certify(const Options& o, std::ostream& out) {
  const auto cert = certify_convex_determination(parse_directions(o.order, o.dirs), o.order);
  emit(to_json(cert), o.out, out);
  switch (cert.verdict) {
    case Verdict::Determined: return 0;
    case Verdict::NotDetermined: return 1;
    case Verdict::Inconclusive: return kExitInconclusive;
  }
  return kExitInternal;
}

std::pair<std::vector<Direction>, PolygonInPlane> family(const std::string& name, int n) {
  if (name == "dodecagon") return dodecagon_family(n);
  if (name == "octagon") return octagon_family(n);
  throw InvalidArgument("unknown family '" + name + "' (dodecagon, octagon)");
}

Json directions_json(const std::vector<Direction>& U) {
  Json j = Json::array();
  for (const auto& u : U) j.push_back(to_json(u.rep()));
  return j;
}

int cmd_upolygon(const Options& o, std::ostream& out) {
  std::vector<Direction> U;
  std::optional<PolygonInPlane> P;
  if (!o.family.empty()) {
    auto f = family(o.family, o.order);
    U = f.first;
    P = f.second;
  } else {
    U = parse_directions(o.order, o.dirs);
    if (U.empty() || U.size() > 3) throw InvalidArgument("give one to three --dir values, or --family");
    const auto cert = certify_convex_determination(U, o.order);
    P = *cert.witness;
  }
  emit(Json{{"directions", directions_json(U)}, {"polygon", to_json(*P)}, {"is_u_polygon", is_u_polygon(*P, U)}},
       o.out, out);
  return 0;
}

int cmd_switch(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.family.empty()) {
    const auto U = parse_directions(o.order, o.dirs);
    const auto [F, G] = switching_pair(U, o.order);
    emit(Json{{"order", o.order},
              {"directions", directions_json(U)},
              {"first", Json(to_json_points(F.absolute_points()))},
              {"second", Json(to_json_points(G.absolute_points()))}},
         o.out, out);
    return 0;
  }
  const ModelSetSpec spec = load_spec(o);
  const int n = spec.order;
  const auto [U, P] = family(o.family, n);
  const auto h = embed_homothety(P.vertices(), spec);
  std::vector<Cyclotomic> img;
  for (const auto& v : P.vertices()) img.push_back(h.apply(v, spec.translation));
  const PolygonInPlane Q(n, img);
  double radius = 0;
  for (const auto& v : img) radius = std::max(radius, std::abs(v.value()));
  radius = std::max(radius + 1, o.radius);
  PointSetDocument doc;
  doc.spec = spec;
  doc.radius = radius;
  doc.points = generate(spec, {0, 0}, radius, o.threads);
  doc.timestamp = utc_now();
  const auto [F1, F2] = u_polygon_switch_sets(Q, U, doc.points);
  if (!o.in.empty()) {
    write_json(to_json(doc), o.in);
    err << "model set written to " << o.in << '\n';
  }
  emit(Json{{"order", n},
            {"directions", directions_json(U)},
            {"polygon", to_json(Q)},
            {"radius", radius},
            {"first", Json(to_json_points(F1.absolute_points()))},
            {"second", Json(to_json_points(F2.absolute_points()))}},
       o.out, out);
  return 0;
}

int cmd_embed(const Options& o, std::ostream& out) {
  const ModelSetSpec spec = load_spec(o);
  std::vector<Cyclotomic> F;
  for (const auto& p : o.points) F.push_back(parse_cyclotomic(spec.order, p));
  emit(to_json(embed_homothety(F, spec)), o.out, out);
  return 0;
}

int cmd_second_direction(const Options& o, std::ostream& out) {
  if (o.bounded > 0) {
    const ModelSetSpec spec = load_spec(o);
    const auto dirs = o.dirs.empty() ? std::vector<std::string>{"1"} : o.dirs;
    const auto U = parse_directions(spec.order, dirs);
    emit(to_json(bounded_second_direction(spec, o.bounded, U.at(0))), o.out, out);
    return 0;
  }
  const auto doc = read_document(o.in);
  const auto U = parse_directions(doc.spec.order, o.dirs.empty() ? std::vector<std::string>{"1"} : o.dirs);
  emit(to_json(second_direction(doc.points, U.at(0), o.extent)), o.out, out);
  return 0;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (o.mmax < 4 || o.mmax > max_order())
    throw InvalidArgument("--mmax must lie in 4.." + std::to_string(max_order()));
  std::set<Rational> values;
  std::size_t count = 0;
  enumerate_rational_f(
      o.mmax,
      [&](const RationalSolution& s) {
        Json j{{"m", s.d.m},
               {"d", {s.d.k[0], s.d.k[1], s.d.k[2], s.d.k[3]}},
               {"q", to_string(s.q)},
               {"base_solution", base_solution_index(s.d)},
               {"q2_family", in_q2_family(s.d)}};
        out << j.dump() << '\n';
        values.insert(s.q);
        ++count;
      },
      o.threads);
  Json vals = Json::array();
  for (const auto& q : values) vals.push_back(to_string(q));
  out << Json{{"count", count}, {"values", vals}}.dump() << '\n';
  bool subset = true;
  for (const auto& q : values) subset = subset && n1_set().count(q) > 0;
  out << "values ⊆ N1: " << (subset ? "true" : "false") << '\n';
  return subset ? 0 : 1;
}

int cmd_render(const Options& o, std::ostream& out) {
  std::vector<Cyclotomic> pts;
  int n = 0;
  if (!o.in.empty()) {
    const auto doc = read_document(o.in);
    pts = doc.points.absolute_points();
    n = doc.spec.order;
  }
  std::optional<PolygonInPlane> P;
  std::vector<Cyclotomic> first, second;
  RenderOptions opt;
  opt.scale = o.scale;
  if (!o.polygon_file.empty()) {
    const Json j = load_json(o.polygon_file);
    P = polygon_from_json(j.contains("polygon") ? j.at("polygon") : j);
    if (n && P->order() != n) throw OrderMismatch(P->order(), n);
    opt.polygon = &*P;
  }
  if (!o.switch_file.empty()) {
    const Json j = load_json(o.switch_file);
    const int m = j.at("order").get<int>();
    if (n && m != n) throw OrderMismatch(m, n);
    first = points_from_json(m, j.at("first"));
    second = points_from_json(m, j.at("second"));
    opt.first = &first;
    opt.second = &second;
    if (!P && j.contains("polygon")) {
      P = polygon_from_json(j.at("polygon"));
      opt.polygon = &*P;
    }
  }
  const std::string svg = render_svg(pts, opt);
  if (o.out.empty()) {
    out << svg;
  } else {
    std::ofstream f(o.out);
    if (!f) throw InvalidArgument("cannot write " + o.out);
    f << svg;
  }
  return 0;
}

}  // namespace

Json to_json_points(const std::vector<Cyclotomic>& pts) {
  Json j = Json::array();
  for (const auto& p : pts) j.push_back(to_json(p));
  return j;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact discrete tomography on cyclotomic model sets", "quasitomo"};
  app.require_subcommand(1);
  Options o;

  auto model = [&](CLI::App* c) {
    c->add_option("--preset", o.preset, "square, triangle, ab, ttt or shield");
    c->add_option("--spec", o.spec_file, "model set specification (JSON)");
  };
  auto out_opt = [&](CLI::App* c) { c->add_option("-o,--out", o.out, "output file (default: stdout)"); };

  auto* gen = app.add_subcommand("generate", "points of a model set inside a disk");
  model(gen);
  gen->add_option("--radius", o.radius, "disk radius")->required();
  gen->add_option("--center", o.center, "disk centre x,y");
  gen->add_option("--tau", o.tau, "window shift, two numbers per internal plane");
  gen->add_flag("--closed", o.closed, "admit boundary points instead of failing");
  gen->add_option("--threads", o.threads);
  out_opt(gen);

  auto* xr = app.add_subcommand("xray", "X-rays of a point set");
  xr->add_option("--in", o.in, "point set document")->required();
  xr->add_option("--dir", o.dirs, "direction as power-basis coefficients")->required();
  out_opt(xr);

  auto* gr = app.add_subcommand("grid", "grid of a point set for two or more directions");
  gr->add_option("--in", o.in, "point set document")->required();
  gr->add_option("--dir", o.dirs, "direction as power-basis coefficients")->required();
  out_opt(gr);

  auto* ce = app.add_subcommand("certify", "is every convex set determined by these X-rays");
  ce->add_option("-n,--order", o.order)->required();
  ce->add_option("--dir", o.dirs, "direction as power-basis coefficients");
  out_opt(ce);

  auto* up = app.add_subcommand("upolygon", "U-polygon for up to three directions or a known family");
  up->add_option("-n,--order", o.order)->required();
  up->add_option("--dir", o.dirs, "direction as power-basis coefficients");
  up->add_option("--family", o.family, "dodecagon or octagon");
  out_opt(up);

  auto* sw = app.add_subcommand("switch", "two distinct sets with equal X-rays");
  sw->add_option("-n,--order", o.order);
  sw->add_option("--dir", o.dirs, "direction as power-basis coefficients");
  model(sw);
  sw->add_option("--family", o.family, "U-polygon family placed inside the model set");
  sw->add_option("--radius", o.radius, "minimum generation radius");
  sw->add_option("--save-model-set", o.in, "write the generated model set here");
  sw->add_option("--threads", o.threads);
  out_opt(sw);

  auto* em = app.add_subcommand("embed", "homothetic copy of a finite set inside a model set");
  model(em);
  em->add_option("--point", o.points, "point as power-basis coefficients")->required();
  out_opt(em);

  auto* sd = app.add_subcommand("second-direction", "a second X-ray direction that determines the set");
  sd->add_option("--in", o.in, "point set document");
  sd->add_option("--dir", o.dirs, "first direction (default 1)");
  sd->add_option("--extent", o.extent, "candidate steps along each line");
  sd->add_option("--bounded", o.bounded, "diameter bound; works for all subsets of the model set");
  model(sd);
  out_opt(sd);

  auto* sp = app.add_subcommand("sweep", "rational values of f_m over D_m, as JSON lines");
  sp->add_option("--mmax", o.mmax, "largest m");
  sp->add_option("--threads", o.threads);

  auto* re = app.add_subcommand("render", "SVG picture of a point set");
  re->add_option("--in", o.in, "point set document");
  re->add_option("--polygon", o.polygon_file, "polygon JSON overlay");
  re->add_option("--switch", o.switch_file, "switch output to highlight");
  re->add_option("--scale", o.scale, "pixels per unit");
  out_opt(re);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(o, out, err);
    if (xr->parsed()) return cmd_xray(o, out);
    if (gr->parsed()) return cmd_grid(o, out);
    if (ce->parsed()) return cmd_certify(o, out);
    if (up->parsed()) return cmd_upolygon(o, out);
    if (sw->parsed()) return cmd_switch(o, out, err);
    if (em->parsed()) return cmd_embed(o, out);
    if (sd->parsed()) return cmd_second_direction(o, out);
    if (sp->parsed()) return cmd_sweep(o, out);
    if (re->parsed()) return cmd_render(o, out);
  } catch (const NonGenericConfiguration& e) {
    err << "error: " << e.what() << '\n';
    return kExitNonGeneric;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace quasitomo

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "quasitomo/model_set.hpp"
#include "quasitomo/polygon.hpp"
#include "quasitomo/successive.hpp"
#include "quasitomo/xray.hpp"

#include "json.hpp"

namespace quasitomo {

using Json = nlohmann::json;

struct PointSetDocument {
  std::string schema_version = "1";
  ModelSetSpec spec;
  FinitePointSet points;
  double radius = 0;
  Planar center{0, 0};
  std::string timestamp;

  friend bool operator==(const PointSetDocument& a, const PointSetDocument& b);
};

bool same_spec(const ModelSetSpec& a, const ModelSetSpec& b);

// Exact elements are arrays of "p/q" strings in the power basis.
Json to_json(const Rational& q);
Json to_json(const Cyclotomic& z);
Json to_json(const RealCyclotomic& x);
Rational rational_from_json(const Json& j);
Cyclotomic cyclotomic_from_json(int n, const Json& j);

Json to_json(const ModelSetSpec& spec);
ModelSetSpec spec_from_json(const Json& j);

Json to_json(const PointSetDocument& doc);
PointSetDocument document_from_json(const Json& j);
PointSetDocument read_document(const std::string& path);
void write_json(const Json& j, const std::string& path);

Json to_json(const XRaySnapshot& x);
Json to_json(const PolygonInPlane& P);
PolygonInPlane polygon_from_json(const Json& j);
Json to_json(const DeterminationCertificate& c);
Json to_json(const SecondDirectionResult& r);
Json to_json(const HomothetyEmbedding& h);
Json to_json_points(const std::vector<Cyclotomic>& pts);

/// Comma separated rationals, e.g. "1,-1/2,0".
std::vector<Rational> parse_coefficients(const std::string& text);
Cyclotomic parse_cyclotomic(int n, const std::string& text);

struct RenderOptions {
  double scale = 40;
  double point_radius = 2.5;
  const PolygonInPlane* polygon = nullptr;
  const std::vector<Cyclotomic>* first = nullptr;
  const std::vector<Cyclotomic>* second = nullptr;
};

/// Deterministic SVG 1.1; all coordinates printed with six decimals.
std::string render_svg(const std::vector<Cyclotomic>& points, const RenderOptions& opt = {});

/// Entry point of the command-line tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace quasitomo

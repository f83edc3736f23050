#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "darkspec/errors.hpp"
#include "output.hpp"

namespace darkspec::app {
namespace {

using json = nlohmann::json;

const std::set<std::string> kCommonKeys{
    "scheme", "model",  "gamma",  "g",  "delta_g",      "grid_min", "grid_max", "grid_n",
    "normalization",    "output", "t_max", "t_limit", "dt",      "comb_spacing", "trapping"};

std::set<std::string> model_keys(DomKind kind) {
  switch (kind) {
    case DomKind::IsotropicEdge: return {};
    case DomKind::SmoothedEdge: return {"epsilon"};
    case DomKind::EdgePlusDeltaDefect: return {"g1", "delta_c"};
    case DomKind::EdgePlusLorentzianDefect: return {"g1", "delta_c", "gamma_c"};
  }
  return {};
}

const std::set<std::string> kDrivenKeys{"omega", "delta", "b2_0", "b3_0"};

class Reader {
 public:
  explicit Reader(const json& obj) : obj_(obj) {}

  bool has(const char* key) const { return obj_.contains(key); }

  double number(const char* key) const {
    const json& v = obj_.at(key);
    if (!v.is_number()) throw ValidationError(key, "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ValidationError(key, "must be finite");
    return x;
  }

  double number(const char* key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  double required(const char* key) const {
    if (!has(key)) throw ValidationError(key, "missing");
    return number(key);
  }

  std::string text(const char* key) const {
    if (!has(key)) throw ValidationError(key, "missing");
    const json& v = obj_.at(key);
    if (!v.is_string()) throw ValidationError(key, "must be a string");
    return v.get<std::string>();
  }

  bool flag(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_boolean()) throw ValidationError(key, "must be true or false");
    return v.get<bool>();
  }

  int integer(const char* key, int fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_number_integer()) throw ValidationError(key, "must be an integer");
    const auto n = v.get<long long>();
    if (n < 2 || n > 10'000'000) throw ValidationError(key, "must be in [2, 1e7]");
    return static_cast<int>(n);
  }

 private:
  const json& obj_;
};

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ValidationError(field, what);
}

DomKind parse_model_name(const std::string& name) {
  for (DomKind k : {DomKind::IsotropicEdge, DomKind::SmoothedEdge, DomKind::EdgePlusDeltaDefect,
                    DomKind::EdgePlusLorentzianDefect}) {
    if (name == to_string(k)) return k;
  }
  throw ValidationError("model",
                        "expected isotropic_edge, smoothed_edge, delta_defect or lorentzian_defect");
}

DomModel read_model(const Reader& r, DomKind kind) {
  const double dg = r.required("delta_g");
  switch (kind) {
    case DomKind::IsotropicEdge:
      return DomModel::isotropic_edge(dg);
    case DomKind::SmoothedEdge: {
      const double eps = r.required("epsilon");
      require(eps > 0.0, "epsilon", "must be > 0 (use isotropic_edge for epsilon = 0)");
      return DomModel::smoothed_edge(dg, eps);
    }
    case DomKind::EdgePlusDeltaDefect: {
      const double g1 = r.required("g1");
      require(g1 >= 0.0, "g1", "must be >= 0");
      return DomModel::edge_plus_delta_defect(dg, g1, r.required("delta_c"));
    }
    case DomKind::EdgePlusLorentzianDefect: {
      const double g1 = r.required("g1");
      require(g1 >= 0.0, "g1", "must be >= 0");
      const double dc = r.required("delta_c");
      const double gc = r.required("gamma_c");
      require(gc > 0.0, "gamma_c", "must be > 0");
      return DomModel::edge_plus_lorentzian_defect(dg, g1, dc, gc);
    }
  }
  throw ValidationError("model", "unsupported");
}

}  // namespace

std::string_view to_string(Normalization normalization) {
  return normalization == Normalization::Raw ? "raw" : "peak";
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("config: top level must be an object");
  const Reader r(doc);

  const std::string scheme_name = r.text("scheme");
  Scheme scheme;
  if (scheme_name == "lambda") {
    scheme = Scheme::LambdaType;
  } else if (scheme_name == "driven") {
    scheme = Scheme::LaserDriven;
  } else {
    throw ValidationError("scheme", "expected lambda or driven");
  }
  const DomKind kind = parse_model_name(r.text("model"));

  const std::set<std::string> model_specific = model_keys(kind);
  for (const auto& item : doc.items()) {
    const std::string& key = item.key();
    if (kCommonKeys.count(key) || model_specific.count(key)) continue;
    if (kDrivenKeys.count(key)) {
      if (scheme == Scheme::LaserDriven) continue;
      throw ValidationError(key, "only applies to the driven scheme");
    }
    if (key == "epsilon" || key == "g1" || key == "delta_c" || key == "gamma_c") {
      throw ValidationError(key, "not a parameter of model " + std::string(to_string(kind)));
    }
    throw ValidationError(key, "unknown key");
  }

  RunConfig cfg;
  const double gamma = r.number("gamma", 1.0);
  require(gamma > 0.0, "gamma", "must be > 0");
  const double g = r.required("g");
  require(g >= 0.0, "g", "must be >= 0");
  const DomModel model = read_model(r, kind);

  if (scheme == Scheme::LambdaType) {
    cfg.emitter = EmitterConfig::lambda_type(model, g, gamma);
  } else {
    const double omega = r.required("omega");
    require(omega >= 0.0, "omega", "must be >= 0");
    const double delta = r.required("delta");
    const double b2 = r.number("b2_0", 1.0);
    const double b3 = r.number("b3_0", 0.0);
    require(std::abs(b2 * b2 + b3 * b3 - 1.0) <= 1e-12, "b2_0", "b2_0^2 + b3_0^2 must equal 1");
    cfg.emitter = EmitterConfig::laser_driven(model, g, omega, delta, b2, b3, gamma);
  }

  cfg.grid.min = r.number("grid_min", cfg.grid.min);
  cfg.grid.max = r.number("grid_max", cfg.grid.max);
  cfg.grid.n = r.integer("grid_n", cfg.grid.n);
  require(cfg.grid.min < cfg.grid.max, "grid_min", "must be < grid_max");

  if (r.has("normalization")) {
    const std::string norm = r.text("normalization");
    if (norm == "raw") {
      cfg.normalization = Normalization::Raw;
    } else if (norm == "peak") {
      cfg.normalization = Normalization::PeakUnit;
    } else {
      throw ValidationError("normalization", "expected raw or peak");
    }
  }
  if (r.has("output")) cfg.output = r.text("output");

  OracleSettings& o = cfg.oracle;
  o.t_max = r.number("t_max", o.t_max);
  o.t_limit = r.number("t_limit", std::max(o.t_limit, o.t_max));
  o.dt = r.number("dt", o.dt);
  o.comb_spacing = r.number("comb_spacing", o.comb_spacing);
  o.trapping = r.flag("trapping", o.trapping);
  require(o.dt > 0.0, "dt", "must be > 0");
  require(o.t_max >= 10.0 / gamma, "t_max", "must be >= 10/gamma");
  require(o.t_max >= o.dt, "t_max", "must be >= dt");
  require(o.t_limit >= o.t_max, "t_limit", "must be >= t_max");
  require(o.comb_spacing > 0.0 && o.comb_spacing < 1.0, "comb_spacing", "must be in (0, 1)");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

nlohmann::ordered_json to_json(const RunConfig& cfg) {
  const EmitterConfig& e = cfg.emitter;
  const DomModel& m = e.model;
  nlohmann::ordered_json j;
  j["scheme"] = std::string(to_string(e.scheme));
  j["model"] = std::string(to_string(m.kind()));
  j["gamma"] = e.gamma;
  j["g"] = e.g.g();
  j["delta_g"] = m.delta_g();
  switch (m.kind()) {
    case DomKind::IsotropicEdge:
      break;
    case DomKind::SmoothedEdge:
      j["epsilon"] = m.epsilon();
      break;
    case DomKind::EdgePlusDeltaDefect:
      j["g1"] = m.g1();
      j["delta_c"] = m.delta_c();
      break;
    case DomKind::EdgePlusLorentzianDefect:
      j["g1"] = m.g1();
      j["delta_c"] = m.delta_c();
      j["gamma_c"] = m.gamma_c();
      break;
  }
  if (e.scheme == Scheme::LaserDriven) {
    j["omega"] = e.omega;
    j["delta"] = e.delta;
    j["b2_0"] = e.b2_0;
    j["b3_0"] = e.b3_0;
  }
  j["grid_min"] = cfg.grid.min;
  j["grid_max"] = cfg.grid.max;
  j["grid_n"] = cfg.grid.n;
  j["normalization"] = std::string(to_string(cfg.normalization));
  if (cfg.output) j["output"] = *cfg.output;
  j["t_max"] = cfg.oracle.t_max;
  j["t_limit"] = cfg.oracle.t_limit;
  j["dt"] = cfg.oracle.dt;
  j["comb_spacing"] = cfg.oracle.comb_spacing;
  j["trapping"] = cfg.oracle.trapping;
  return j;
}

}  // namespace darkspec::app

#include "foliant/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "foliant/errors.hpp"

namespace foliant {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_real(const std::string& text, const std::string& what) {
  const char* c = text.c_str();
  char* end = nullptr;
  double v = std::strtod(c, &end);
  if (end == c || *end != '\0' || !std::isfinite(v)) {
    throw ConfigError("expected a real number for " + what + ", got '" + text +
                      "'");
  }
  return v;
}

}  // namespace

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string part =
        trim(comma == std::string::npos ? text.substr(start)
                                        : text.substr(start, comma - start));
    if (part.empty()) {
      throw ConfigError("empty entry in vector value '" + text + "'");
    }
    out.push_back(parse_real(part, "vector entry"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

ConfigFile ConfigFile::parse_text(std::string text) {
  ConfigFile cfg;
  cfg.raw_ = text;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError("line " + std::to_string(lineno) +
                          ": malformed section header '" + line + "'");
      }
      section = trim(line.substr(1, line.size() - 2));
      cfg.sections_[section];
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value', got '" + line + "'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    }
    if (section.empty()) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": key outside any [section]");
    }
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::optional<std::string> ConfigFile::get(const std::string& section,
                                           const std::string& key) const {
  auto s = sections_.find(section);
  if (s == sections_.end()) return std::nullopt;
  auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  return k->second;
}

std::string ConfigFile::require(const std::string& section,
                                const std::string& key) const {
  auto v = get(section, key);
  if (!v) {
    throw ConfigError("missing required key [" + section + "] " + key);
  }
  return *v;
}

double ConfigFile::get_double(const std::string& section,
                              const std::string& key, double fallback) const {
  auto v = get(section, key);
  if (!v) return fallback;
  return parse_real(*v, "[" + section + "] " + key);
}

int ConfigFile::get_int(const std::string& section, const std::string& key,
                        int fallback) const {
  double v = get_double(section, key, double(fallback));
  if (std::nearbyint(v) != v) {
    throw ConfigError("[" + section + "] " + key + " must be an integer");
  }
  return int(v);
}

std::uint64_t ConfigFile::get_seed(const std::string& section,
                                   const std::string& key,
                                   std::uint64_t fallback) const {
  auto v = get(section, key);
  if (!v) return fallback;
  errno = 0;
  char* end = nullptr;
  unsigned long long s = std::strtoull(v->c_str(), &end, 10);
  if (end == v->c_str() || *end != '\0' || errno != 0) {
    throw ConfigError("[" + section + "] " + key + " must be a nonnegative integer");
  }
  return s;
}

std::vector<double> ConfigFile::get_vector(const std::string& section,
                                           const std::string& key) const {
  return parse_reals(require(section, key));
}

namespace {

VectorField field_from_config(const ConfigFile& cfg, std::size_t dim) {
  if (auto name = cfg.get("field", "registry")) {
    VectorField f = registry_field(*name);
    if (f.dim() != dim) {
      throw ConfigError("registry field '" + *name + "' has dimension " +
                        std::to_string(f.dim()) + ", config says " +
                        std::to_string(dim));
    }
    return f;
  }
  std::vector<ExprPtr> comps;
  for (std::size_t i = 1; i <= dim; ++i) {
    std::string key = "component" + std::to_string(i);
    std::string text = cfg.require("field", key);
    try {
      comps.push_back(parse_expr(text, dim));
    } catch (const ParseError& e) {
      throw ConfigError("[field] " + key + ": " + e.what());
    }
  }
  return VectorField::from_expressions("config-field", comps, dim);
}

Vector vector_from(const std::vector<double>& entries, std::size_t dim,
                   const std::string& what) {
  if (entries.size() != dim) {
    throw ConfigError(what + " must have " + std::to_string(dim) + " entries");
  }
  return Vector(entries);
}

Foliation foliation_from_config(const ConfigFile& cfg, std::size_t dim,
                                const Vector& p0) {
  if (auto name = cfg.get("foliation", "registry")) {
    Foliation f = registry_foliation(*name);
    if (f.dim() != dim) {
      throw ConfigError("registry foliation '" + *name + "' has dimension " +
                        std::to_string(f.dim()));
    }
    return f;
  }
  std::string kind = cfg.require("foliation", "kind");
  if (kind == "affine") {
    Vector w = vector_from(cfg.get_vector("foliation", "w"), dim,
                           "[foliation] w");
    std::vector<Vector> spanning;
    for (std::size_t i = 1; i < dim; ++i) {
      spanning.push_back(vector_from(
          cfg.get_vector("foliation", "basis" + std::to_string(i)), dim,
          "[foliation] basis" + std::to_string(i)));
    }
    return affine_foliation(p0, w, orthonormalize_hyperplane(spanning));
  }
  if (kind == "graph") {
    std::size_t n = dim - 1;
    std::string text = cfg.require("foliation", "g");
    ExprPtr g_expr;
    try {
      // g is a function of the leaf coordinates y1..yn only.
      g_expr = parse_expr(text, n + 1);
    } catch (const ParseError& e) {
      throw ConfigError(std::string("[foliation] g: ") + e.what());
    }
    if (expr_uses_var(*g_expr, 0)) {
      throw ConfigError("[foliation] g must use only y1..yn, not s");
    }
    ScalarMap g = [g_expr, n](const Vector& y) {
      Vector padded(n + 1);
      for (std::size_t i = 0; i < n; ++i) padded[i + 1] = y[i];
      return eval_expr(*g_expr, EvalContext{n + 1, padded});
    };
    return graph_foliation(n, g);
  }
  if (kind == "curve") {
    CurveFrame frame;
    std::vector<ExprPtr> g1, g2;
    for (std::size_t i = 1; i <= dim; ++i) {
      try {
        g1.push_back(parse_expr(
            cfg.require("foliation", "gamma1_" + std::to_string(i)), 1));
        g2.push_back(parse_expr(
            cfg.require("foliation", "gamma2_" + std::to_string(i)), 1));
      } catch (const ParseError& e) {
        throw ConfigError(std::string("[foliation] gamma: ") + e.what());
      }
    }
    frame.gamma1 = [g1, dim](double t) {
      EvalContext ctx{1, Vector{t}};
      Vector out(dim);
      for (std::size_t i = 0; i < dim; ++i) out[i] = eval_expr(*g1[i], ctx);
      return out;
    };
    frame.gamma2 = [g2, dim](double t) {
      EvalContext ctx{1, Vector{t}};
      Vector out(dim);
      for (std::size_t i = 0; i < dim; ++i) out[i] = eval_expr(*g2[i], ctx);
      return ProjectivePoint(out);
    };
    frame.t_min = cfg.get_double("foliation", "t_min", -0.5);
    frame.t_max = cfg.get_double("foliation", "t_max", 0.5);
    int samples = cfg.get_int("foliation", "samples", 65);
    return curve_foliation(frame, samples);
  }
  throw ConfigError("[foliation] kind must be affine, graph or curve (got '" +
                    kind + "')");
}

}  // namespace

Problem load_problem(const ConfigFile& cfg) {
  Problem prob;
  int dim_i = cfg.get_int("problem", "dimension", 2);
  if (dim_i < 2 || dim_i > 12) {
    throw ConfigError("[problem] dimension must lie in [2, 12]");
  }
  prob.dimension = std::size_t(dim_i);
  prob.field = field_from_config(cfg, prob.dimension);
  if (cfg.has("problem", "p0")) {
    prob.p0 = vector_from(cfg.get_vector("problem", "p0"), prob.dimension,
                          "[problem] p0");
  } else {
    prob.p0 = Vector(prob.dimension);
  }
  prob.t0 = cfg.get_double("problem", "t0", 0.0);

  std::string theorem = cfg.get("check", "theorem").value_or(
      cfg.has("foliation", "registry") || cfg.has("foliation", "kind")
          ? "main"
          : "cid");
  if (theorem == "main") {
    prob.theorem = TheoremTag::Main;
    prob.foliation = foliation_from_config(cfg, prob.dimension, prob.p0);
    if (norm(prob.foliation->base() - prob.p0) >
        1e-9 * std::max(1.0, norm(prob.p0))) {
      throw ConfigError(
          "[problem] p0 does not match the foliation base point");
    }
  } else if (theorem == "cid") {
    prob.theorem = TheoremTag::Cid;
  } else {
    throw ConfigError(
        "[check] theorem must be 'main' or 'cid' (hyperplane and "
        "stettner-nowak checks are library-level)");
  }

  prob.check.region = cfg.get_double("check", "radius", prob.check.region);
  prob.check.budget = cfg.get_int("check", "budget", prob.check.budget);
  prob.check.seed = cfg.get_seed("check", "seed", prob.check.seed);
  prob.check.transversality_threshold = cfg.get_double(
      "check", "threshold", prob.check.transversality_threshold);
  if (prob.check.budget < 100) {
    throw ConfigError("[check] budget must be at least 100");
  }
  if (!(prob.check.region > 0.0)) {
    throw ConfigError("[check] radius must be positive");
  }

  prob.modulus_delta = cfg.get_double("modulus", "delta", 1e-3);
  prob.modulus_budget = cfg.get_int("modulus", "budget", 4096);

  prob.t_end = cfg.get_double("funnel", "t_end", 1.0);
  prob.step = cfg.get_double("funnel", "step", 1e-3);
  if (cfg.has("funnel", "epsilons")) {
    prob.epsilons = cfg.get_vector("funnel", "epsilons");
  }
  prob.directions = cfg.get_int("funnel", "directions", 8);
  return prob;
}

}  // namespace foliant

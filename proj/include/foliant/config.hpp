#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "foliant/checker.hpp"
#include "foliant/field.hpp"
#include "foliant/foliation.hpp"

// Flat config format: [section] headers, key = value lines, '#' comments.
// Expressions are strings in the expression language; vectors are
// comma-separated reals.

namespace foliant {

class ConfigFile {
 public:
  static ConfigFile parse_text(std::string text);
  static ConfigFile load(const std::string& path);  // ConfigError if missing

  bool has(const std::string& section, const std::string& key) const;
  std::optional<std::string> get(const std::string& section,
                                 const std::string& key) const;
  std::string require(const std::string& section, const std::string& key) const;

  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  int get_int(const std::string& section, const std::string& key,
              int fallback) const;
  std::uint64_t get_seed(const std::string& section, const std::string& key,
                         std::uint64_t fallback) const;
  std::vector<double> get_vector(const std::string& section,
                                 const std::string& key) const;  // required

  const std::string& raw() const { return raw_; }

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
  std::string raw_;
};

std::vector<double> parse_reals(const std::string& text);  // comma-separated

// A fully materialized problem: all defaults resolved at load time.
struct Problem {
  std::size_t dimension = 2;
  VectorField field;
  Vector p0;
  double t0 = 0.0;
  std::optional<Foliation> foliation;  // absent for theorem = cid
  TheoremTag theorem = TheoremTag::Main;
  CheckParams check;
  double modulus_delta = 1e-3;
  int modulus_budget = 4096;
  // funnel harness
  double t_end = 1.0;
  double step = 1e-3;
  std::vector<double> epsilons{1e-2, 1e-3};
  int directions = 8;

  Problem() : field("unset", 2, [](const Vector& z) { return z; }), p0(2) {}
};

Problem load_problem(const ConfigFile& cfg);

}  // namespace foliant

#include "foliant/report.hpp"

#include <cstdio>

namespace foliant {

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

void ReportWriter::section(const std::string& name) {
  out_ += '[';
  out_ += name;
  out_ += "]\n";
}

void ReportWriter::kv(const std::string& key, const std::string& value) {
  out_ += key;
  out_ += " = ";
  out_ += value;
  out_ += '\n';
}

void ReportWriter::kv(const std::string& key, const char* value) {
  kv(key, std::string(value));
}

void ReportWriter::kv(const std::string& key, double value) {
  kv(key, format_double(value));
}

void ReportWriter::kv(const std::string& key, int value) {
  kv(key, std::to_string(value));
}

void ReportWriter::kv(const std::string& key, std::uint64_t value) {
  kv(key, std::to_string(value));
}

void ReportWriter::kv(const std::string& key, bool value) {
  kv(key, value ? "true" : "false");
}

void ReportWriter::kv(const std::string& key, const Vector& value) {
  std::string s;
  for (std::size_t i = 0; i < value.dim(); ++i) {
    if (i) s += ", ";
    s += format_double(value[i]);
  }
  kv(key, s);
}

void write_header(ReportWriter& w, const std::string& command,
                  std::string_view config_bytes) {
  w.kv("tool", "foliant");
  w.kv("version", kToolVersion);
  w.kv("command", command);
  w.kv("config_hash", fnv1a64_hex(config_bytes));
}

namespace {

std::string stratum_key(std::size_t i) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "stratum_%02zu", i);
  return buf;
}

std::string stratum_value(const StratumStat& s) {
  return format_double(s.scale) + ", " + format_double(s.max_quotient) + ", " +
         std::to_string(s.pairs);
}

}  // namespace

void write_lipschitz(ReportWriter& w, const std::string& section,
                     const LipschitzEstimate& est) {
  w.section(section);
  w.kv("constant", est.constant);
  w.kv("region", est.region);
  w.kv("pairs_used", est.pairs_used);
  w.kv("blowup", est.blowup);
  w.kv("seed", est.seed);
  for (std::size_t i = 0; i < est.strata.size(); ++i) {
    w.kv(stratum_key(i), stratum_value(est.strata[i]));
  }
}

void write_modulus(ReportWriter& w, const std::string& section,
                   const ModulusEstimate& est) {
  w.section(section);
  w.kv("value", est.value);
  w.kv("delta", est.delta);
  w.kv("pairs_used", est.pairs_used);
  w.kv("blowup", est.blowup);
  w.kv("seed", est.seed);
  for (std::size_t i = 0; i < est.strata.size(); ++i) {
    w.kv(stratum_key(i), stratum_value(est.strata[i]));
  }
}

void write_uniqueness(ReportWriter& w, const UniquenessReport& report) {
  w.section("parameters");
  w.kv("theorem", to_string(report.theorem));
  w.kv("region", report.params.region);
  w.kv("budget", report.params.budget);
  w.kv("seed", report.params.seed);
  w.kv("transversality_threshold", report.params.transversality_threshold);

  w.section("result");
  w.kv("verdict", to_string(report.verdict));
  w.kv("transversality", report.transversality_value);
  w.kv("normal_at_p0", report.normal_at_p0);
  if (!report.note.empty()) w.kv("note", report.note);

  write_lipschitz(w, "lipschitz_f_phi", report.lip_f_phi);
  write_lipschitz(w, "lipschitz_inverse_jacobian", report.lip_inv_jac);
}

}  // namespace foliant

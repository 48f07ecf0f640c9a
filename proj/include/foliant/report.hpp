#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "foliant/checker.hpp"
#include "foliant/modulus.hpp"

// Canonical diff-able report text: one key = value per line, [section]
// headers, numbers with 17 significant digits, fixed ordering.  Identical
// inputs and seeds must serialize to byte-identical text.

namespace foliant {

inline constexpr const char* kToolVersion = "0.1.0";

std::string format_double(double v);  // %.17g
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

class ReportWriter {
 public:
  void section(const std::string& name);
  void kv(const std::string& key, const std::string& value);
  void kv(const std::string& key, const char* value);
  void kv(const std::string& key, double value);
  void kv(const std::string& key, int value);
  void kv(const std::string& key, std::uint64_t value);
  void kv(const std::string& key, bool value);
  void kv(const std::string& key, const Vector& value);

  const std::string& str() const { return out_; }

 private:
  std::string out_;
};

// Standard report preamble: tool version, command name, config hash.
void write_header(ReportWriter& w, const std::string& command,
                  std::string_view config_bytes);

void write_lipschitz(ReportWriter& w, const std::string& section,
                     const LipschitzEstimate& est);
void write_modulus(ReportWriter& w, const std::string& section,
                   const ModulusEstimate& est);
void write_uniqueness(ReportWriter& w, const UniquenessReport& report);

}  // namespace foliant

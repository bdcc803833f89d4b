#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spq {

enum class Status { pass, fail, info };
const char* to_string(Status s);

struct CheckRecord {
  std::string key;
  std::optional<double> residual;
  std::optional<long long> value;
  std::optional<double> tolerance;
  Status status = Status::info;
  std::string note;
  bool lower_bound = false;  // tolerance is a minimum (negative controls)
};

class VerificationReport {
 public:
  VerificationReport() = default;
  explicit VerificationReport(std::string suite_name) : suite(std::move(suite_name)) {}

  std::string suite;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<CheckRecord> records;
  std::optional<double> wall_time;

  // pass iff value <= tol
  void residual(std::string key, double value, double tol, std::string note = {});
  // pass iff value >= threshold (negative controls)
  void at_least(std::string key, double value, double threshold, std::string note = {});
  void integer(std::string key, long long value, long long expected, std::string note = {});
  void flag(std::string key, bool ok, std::string note = {});
  // never gates
  void info(std::string key, std::optional<double> value, std::string note = {});
  void info_integer(std::string key, long long value, std::string note = {});
  void echo(std::string key, std::string value);

  // Appends `other`'s records with keys prefixed "prefix/".
  void append(const VerificationReport& other, const std::string& prefix = {});

  bool passed() const;
  std::size_t count(Status s) const;
  double max_residual() const;  // over gating residual records

  std::string to_json(int indent = 2) const;
  std::string to_text() const;
};

// JSON Schema (draft 2020-12) for to_json output.
std::string report_schema();

}  // namespace spq

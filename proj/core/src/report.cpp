#include "spq/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

namespace spq {

const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::info: return "info";
  }
  return "info";
}

void VerificationReport::residual(std::string key, double value, double tol, std::string note) {
  bool ok = std::isfinite(value) && value <= tol;
  records.push_back({std::move(key), value, std::nullopt, tol, ok ? Status::pass : Status::fail, std::move(note)});
}

void VerificationReport::at_least(std::string key, double value, double threshold, std::string note) {
  bool ok = std::isfinite(value) && value >= threshold;
  records.push_back(
      {std::move(key), value, std::nullopt, threshold, ok ? Status::pass : Status::fail, std::move(note), true});
}

void VerificationReport::integer(std::string key, long long value, long long expected, std::string note) {
  if (note.empty()) note = "expected " + std::to_string(expected);
  records.push_back({std::move(key), std::nullopt, value, std::nullopt, value == expected ? Status::pass : Status::fail,
                     std::move(note)});
}

void VerificationReport::flag(std::string key, bool ok, std::string note) {
  records.push_back({std::move(key), std::nullopt, std::nullopt, std::nullopt, ok ? Status::pass : Status::fail,
                     std::move(note)});
}

void VerificationReport::info(std::string key, std::optional<double> value, std::string note) {
  records.push_back({std::move(key), value, std::nullopt, std::nullopt, Status::info, std::move(note)});
}

void VerificationReport::info_integer(std::string key, long long value, std::string note) {
  records.push_back({std::move(key), std::nullopt, value, std::nullopt, Status::info, std::move(note)});
}

void VerificationReport::echo(std::string key, std::string value) { config.emplace_back(std::move(key), std::move(value)); }

void VerificationReport::append(const VerificationReport& other, const std::string& prefix) {
  for (auto r : other.records) {
    if (!prefix.empty()) r.key = prefix + "/" + r.key;
    records.push_back(std::move(r));
  }
}

bool VerificationReport::passed() const {
  return std::none_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.status == Status::fail; });
}

std::size_t VerificationReport::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [s](const CheckRecord& r) { return r.status == s; }));
}

double VerificationReport::max_residual() const {
  double m = 0.0;
  for (const auto& r : records)
    if (r.residual && r.status != Status::info && !r.lower_bound) m = std::max(m, *r.residual);
  return m;
}

std::string VerificationReport::to_json(int indent) const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["suite"] = suite;
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  j["config"] = cfg;
  ordered_json recs = ordered_json::array();
  for (const auto& r : records) {
    ordered_json o;
    o["key"] = r.key;
    o["status"] = to_string(r.status);
    if (r.residual) {
      if (std::isfinite(*r.residual))
        o["residual"] = *r.residual;
      else
        o["residual"] = nullptr;
    }
    if (r.value) o["value"] = *r.value;
    if (r.tolerance) o[r.lower_bound ? "minimum" : "tolerance"] = *r.tolerance;
    if (!r.note.empty()) o["note"] = r.note;
    recs.push_back(std::move(o));
  }
  j["records"] = recs;
  ordered_json summary;
  summary["passed"] = passed();
  summary["pass"] = count(Status::pass);
  summary["fail"] = count(Status::fail);
  summary["info"] = count(Status::info);
  summary["max_residual"] = max_residual();
  j["summary"] = summary;
  if (wall_time) j["wall_time_s"] = *wall_time;
  return j.dump(indent);
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << "suite " << suite << '\n';
  for (const auto& [k, v] : config) os << "  " << k << " = " << v << '\n';
  for (const auto& r : records) {
    os << std::left << std::setw(5) << to_string(r.status) << ' ' << r.key;
    if (r.residual) os << "  residual=" << std::scientific << std::setprecision(3) << *r.residual << std::defaultfloat;
    if (r.value) os << "  value=" << *r.value;
    if (r.tolerance) os << "  tol=" << std::scientific << std::setprecision(1) << *r.tolerance << std::defaultfloat;
    if (!r.note.empty()) os << "  (" << r.note << ')';
    os << '\n';
  }
  os << (passed() ? "PASS" : "FAIL") << "  pass=" << count(Status::pass) << " fail=" << count(Status::fail)
     << " info=" << count(Status::info) << " max_residual=" << std::scientific << std::setprecision(3)
     << max_residual() << '\n';
  return os.str();
}

std::string report_schema() {
  nlohmann::ordered_json s = nlohmann::ordered_json::parse(R"({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "title": "spqlab verification report",
  "type": "object",
  "required": ["suite", "config", "records", "summary"],
  "properties": {
    "suite": {"type": "string"},
    "config": {"type": "object", "additionalProperties": {"type": "string"}},
    "records": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["key", "status"],
        "properties": {
          "key": {"type": "string"},
          "status": {"enum": ["pass", "fail", "info"]},
          "residual": {"type": ["number", "null"]},
          "value": {"type": "integer"},
          "tolerance": {"type": "number"},
          "minimum": {"type": "number"},
          "note": {"type": "string"}
        },
        "additionalProperties": false
      }
    },
    "summary": {
      "type": "object",
      "required": ["passed", "pass", "fail", "info", "max_residual"],
      "properties": {
        "passed": {"type": "boolean"},
        "pass": {"type": "integer"},
        "fail": {"type": "integer"},
        "info": {"type": "integer"},
        "max_residual": {"type": "number"}
      }
    },
    "wall_time_s": {"type": "number"}
  },
  "additionalProperties": false
})");
  return s.dump(2);
}

}  // namespace spq

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace solitonlab {

enum class Status { kPass, kFail, kSkipped };

const char* to_string(Status s);

/// One leaf of a report. `residual` is compared against `tolerance`;
/// skipped checks carry the reason in `note`.
struct Check {
  std::string group;
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  Status status = Status::kPass;
  std::string note;
};

class Report {
 public:
  std::string manifold;
  std::string command;
  std::uint64_t seed = 0;
  int samples = 0;
  std::string convention = "sectional";
  std::vector<Check> checks;
  /// Fitted quantities and classifications, in insertion order.
  nlohmann::ordered_json values = nlohmann::ordered_json::object();

  /// Adds a check that passes iff residual is finite and <= tolerance.
  Check& check(const std::string& group, const std::string& name, double residual, double tolerance,
               const std::string& note = "");
  Check& skip(const std::string& group, const std::string& name, const std::string& reason);
  void append(const Report& other);

  bool passed() const;
  const Check* first_failure() const;
  const Check* find(const std::string& group, const std::string& name) const;

  nlohmann::ordered_json to_json() const;
  std::string to_json_text() const;
  std::string to_text() const;
};

/// Max-over-samples accumulator for per-point residuals; keeps first-seen
/// order so reports are stable.
class Tally {
 public:
  void observe(const std::string& group, const std::string& name, double residual, double tolerance,
               const std::string& note = "");
  void emit(Report& report) const;
  double max(const std::string& group, const std::string& name) const;

 private:
  struct Entry {
    std::string group, name, note;
    double residual = 0.0;
    double tolerance = 0.0;
  };
  std::vector<Entry> entries_;
};

/// JSON text with numbers written to 17 significant digits.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

}  // namespace solitonlab

#include "solitonlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace solitonlab {

const char* to_string(Status s) {
  switch (s) {
    case Status::kPass: return "pass";
    case Status::kFail: return "fail";
    case Status::kSkipped: return "skipped";
  }
  return "?";
}

Check& Report::check(const std::string& group, const std::string& name, double residual, double tolerance,
                     const std::string& note) {
  Check c{group, name, residual, tolerance, Status::kPass, note};
  c.status = (std::isfinite(residual) && residual <= tolerance) ? Status::kPass : Status::kFail;
  checks.push_back(std::move(c));
  return checks.back();
}

Check& Report::skip(const std::string& group, const std::string& name, const std::string& reason) {
  checks.push_back(Check{group, name, 0.0, 0.0, Status::kSkipped, reason});
  return checks.back();
}

void Report::append(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  for (const auto& [k, v] : other.values.items()) values[k] = v;
}

bool Report::passed() const { return first_failure() == nullptr; }

const Check* Report::first_failure() const {
  for (const Check& c : checks)
    if (c.status == Status::kFail) return &c;
  return nullptr;
}

const Check* Report::find(const std::string& group, const std::string& name) const {
  for (const Check& c : checks)
    if (c.group == group && c.name == name) return &c;
  return nullptr;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "solitonlab-report/1";
  j["manifold"] = manifold;
  j["command"] = command;
  j["seed"] = seed;
  j["samples"] = samples;
  j["convention"] = convention;
  j["passed"] = passed();
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Check& c : checks) {
    nlohmann::ordered_json o;
    o["group"] = c.group;
    o["name"] = c.name;
    o["status"] = to_string(c.status);
    if (c.status != Status::kSkipped) {
      o["residual"] = c.residual;
      o["tolerance"] = c.tolerance;
    }
    o["note"] = c.note;
    arr.push_back(std::move(o));
  }
  j["checks"] = std::move(arr);
  j["values"] = values;
  return j;
}

std::string Report::to_json_text() const { return dump_json(to_json()) + "\n"; }

namespace {

std::string number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "\"nan\"" : (v > 0 ? "\"inf\"" : "\"-inf\"");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump(const nlohmann::ordered_json& j, int indent, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + nlohmann::json(k).dump() + ": ";
        dump(v, indent, depth + 1, out);
      }
      out += "\n" + close + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump(j[i], indent, depth + 1, out);
      }
      out += "\n" + close + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += number(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void text_values(const nlohmann::ordered_json& j, const std::string& prefix, std::ostringstream& os) {
  for (const auto& [k, v] : j.items()) {
    const std::string key = prefix.empty() ? k : prefix + "." + k;
    if (v.is_object()) {
      text_values(v, key, os);
    } else if (v.is_number_float()) {
      os << "  " << key << " = " << number(v.get<double>()) << "\n";
    } else {
      os << "  " << key << " = " << v.dump() << "\n";
    }
  }
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& j, int indent) {
  std::string out;
  dump(j, indent, 0, out);
  return out;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "manifold: " << manifold << "\n";
  if (!command.empty()) os << "command:  " << command << "\n";
  os << "seed: " << seed << "  samples: " << samples << "  convention: " << convention << "\n";
  std::string group;
  for (const Check& c : checks) {
    if (c.group != group) {
      group = c.group;
      os << "[" << group << "]\n";
    }
    os << "  " << (c.status == Status::kPass ? "PASS" : c.status == Status::kFail ? "FAIL" : "SKIP") << "  "
       << c.name;
    if (c.status != Status::kSkipped) os << "  residual " << fmt(c.residual) << " (tol " << fmt(c.tolerance) << ")";
    if (!c.note.empty()) os << "  -- " << c.note;
    os << "\n";
  }
  if (!values.empty()) {
    os << "values:\n";
    text_values(values, "", os);
  }
  const Check* f = first_failure();
  os << (f ? "result: FAIL (first failing check: " + f->group + " / " + f->name + ")" : std::string("result: PASS"))
     << "\n";
  return os.str();
}

void Tally::observe(const std::string& group, const std::string& name, double residual, double tolerance,
                    const std::string& note) {
  for (Entry& e : entries_) {
    if (e.group == group && e.name == name) {
      if (std::isnan(residual) || residual > e.residual) e.residual = residual;
      return;
    }
  }
  entries_.push_back(Entry{group, name, note, residual, tolerance});
}

void Tally::emit(Report& report) const {
  for (const Entry& e : entries_) report.check(e.group, e.name, e.residual, e.tolerance, e.note);
}

double Tally::max(const std::string& group, const std::string& name) const {
  for (const Entry& e : entries_)
    if (e.group == group && e.name == name) return e.residual;
  return 0.0;
}

}  // namespace solitonlab

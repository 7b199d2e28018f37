#include "solitonlab/manifold_file.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <variant>

#include "solitonlab/error.hpp"

namespace solitonlab {

namespace {

// A scalar token with the byte offset where it starts.
struct Atom {
  bool quoted = false;
  std::string text;
  std::size_t offset = 0;
};

struct Value {
  bool is_array = false;
  Atom atom;
  std::vector<Atom> items;
  std::size_t offset = 0;
};

struct Entry {
  std::string key;
  Value value;
  int line = 0;
  std::size_t line_start = 0;
};

class Parser {
 public:
  Parser(const std::string& text, std::string origin) : text_(text), origin_(std::move(origin)) {}

  [[noreturn]] void fail(const std::string& msg, std::size_t offset) const {
    int line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(origin_ + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg, offset, false);
  }

  std::vector<std::pair<std::string, std::vector<Entry>>> run() {
    std::vector<std::pair<std::string, std::vector<Entry>>> sections;
    std::size_t pos = 0;
    int line = 0;
    while (pos <= text_.size()) {
      std::size_t end = text_.find('\n', pos);
      if (end == std::string::npos) end = text_.size();
      ++line;
      parse_line(pos, end, line, sections);
      pos = end + 1;
    }
    return sections;
  }

 private:
  void skip_ws(std::size_t& i, std::size_t end) const {
    while (i < end && (text_[i] == ' ' || text_[i] == '\t' || text_[i] == '\r')) ++i;
  }

  void parse_line(std::size_t begin, std::size_t end, int line,
                  std::vector<std::pair<std::string, std::vector<Entry>>>& sections) {
    std::size_t i = begin;
    skip_ws(i, end);
    if (i == end || text_[i] == '#') return;
    if (text_[i] == '[') {
      const std::size_t close = text_.find(']', i);
      if (close == std::string::npos || close > end) fail("unterminated section header", i);
      std::string name = text_.substr(i + 1, close - i - 1);
      std::size_t j = close + 1;
      skip_ws(j, end);
      if (j < end && text_[j] != '#') fail("unexpected text after section header", j);
      for (const auto& s : sections)
        if (s.first == name) fail("duplicate section [" + name + "]", i);
      sections.emplace_back(name, std::vector<Entry>{});
      return;
    }
    if (sections.empty()) fail("entry outside of any section", i);
    Entry e;
    e.line = line;
    e.line_start = i;
    const std::size_t key_start = i;
    while (i < end && (std::isalnum(static_cast<unsigned char>(text_[i])) || text_[i] == '_' || text_[i] == '.'))
      ++i;
    e.key = text_.substr(key_start, i - key_start);
    if (e.key.empty()) fail("expected a key", key_start);
    skip_ws(i, end);
    if (i >= end || text_[i] != '=') fail("expected '=' after key '" + e.key + "'", i);
    ++i;
    skip_ws(i, end);
    e.value = parse_value(i, end);
    skip_ws(i, end);
    if (i < end && text_[i] != '#') fail("unexpected text after value", i);
    for (const auto& other : sections.back().second)
      if (other.key == e.key) fail("duplicate key '" + e.key + "'", key_start);
    sections.back().second.push_back(std::move(e));
  }

  Value parse_value(std::size_t& i, std::size_t end) {
    Value v;
    v.offset = i;
    if (i < end && text_[i] == '[') {
      v.is_array = true;
      ++i;
      skip_ws(i, end);
      if (i < end && text_[i] == ']') {
        ++i;
        return v;
      }
      while (true) {
        skip_ws(i, end);
        v.items.push_back(parse_atom(i, end));
        skip_ws(i, end);
        if (i < end && text_[i] == ',') {
          ++i;
          continue;
        }
        if (i < end && text_[i] == ']') {
          ++i;
          return v;
        }
        fail("expected ',' or ']' in array", i);
      }
    }
    v.atom = parse_atom(i, end);
    return v;
  }

  Atom parse_atom(std::size_t& i, std::size_t end) {
    Atom a;
    if (i < end && text_[i] == '"') {
      a.quoted = true;
      a.offset = i + 1;
      ++i;
      while (i < end && text_[i] != '"') a.text += text_[i++];
      if (i >= end) fail("unterminated string", a.offset - 1);
      ++i;
      return a;
    }
    a.offset = i;
    while (i < end && text_[i] != ',' && text_[i] != ']' && text_[i] != '#' && !std::isspace(static_cast<unsigned char>(text_[i])))
      a.text += text_[i++];
    if (a.text.empty()) fail("expected a value", i);
    return a;
  }

  const std::string& text_;
  std::string origin_;
};

class Builder {
 public:
  Builder(Parser& p) : p_(p) {}

  double number(const Atom& a) const {
    if (a.quoted) p_.fail("expected a number, got a string", a.offset);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(a.text, &used);
    } catch (const std::exception&) {
      p_.fail("invalid number '" + a.text + "'", a.offset);
    }
    if (used != a.text.size()) p_.fail("invalid number '" + a.text + "'", a.offset);
    return v;
  }

  std::string string(const Atom& a) const {
    if (!a.quoted) p_.fail("expected a quoted string", a.offset);
    return a.text;
  }

  const Atom& scalar(const Value& v) const {
    if (v.is_array) p_.fail("expected a single value, got an array", v.offset);
    return v.atom;
  }

  const std::vector<Atom>& array(const Value& v, std::size_t n) const {
    if (!v.is_array) p_.fail("expected an array", v.offset);
    if (n != 0 && v.items.size() != n)
      p_.fail("expected " + std::to_string(n) + " entries, got " + std::to_string(v.items.size()), v.offset);
    return v.items;
  }

  // Expressions may be quoted strings or bare numbers.
  Expression expr(const ManifoldSpec& s, const Atom& a) const {
    try {
      return s.parse(a.text);
    } catch (const ParseError& e) {
      std::string msg = e.what();
      msg = msg.substr(0, msg.rfind(" (at offset"));
      p_.fail(msg, a.offset + e.offset());
    } catch (const Error& e) {
      p_.fail(e.what(), a.offset);
    }
  }

  std::vector<Expression> exprs(const ManifoldSpec& s, const Value& v) const {
    std::vector<Expression> out;
    for (const Atom& a : array(v, static_cast<std::size_t>(s.dim()))) out.push_back(expr(s, a));
    return out;
  }

  Basis basis(const Atom& a) const {
    const std::string b = string(a);
    if (b == "coordinate") return Basis::kCoordinate;
    if (b == "frame") return Basis::kFrame;
    p_.fail("basis must be \"coordinate\" or \"frame\"", a.offset);
  }

  int coordinate(const ManifoldSpec& s, const std::string& name, std::size_t offset) const {
    for (int i = 0; i < s.dim(); ++i)
      if (s.coordinates[static_cast<std::size_t>(i)] == name) return i;
    p_.fail("unknown coordinate '" + name + "'", offset);
  }

  // Parses "prefix.N" with 1 <= N <= d.
  int index_suffix(const Entry& e, const std::string& prefix, int d) const {
    const std::string rest = e.key.substr(prefix.size());
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(rest, &used);
      if (used != rest.size()) k = 0;
    } catch (const std::exception&) {
      k = 0;
    }
    if (k < 1 || k > d) p_.fail("index in '" + e.key + "' must be 1.." + std::to_string(d), e.line_start);
    return k - 1;
  }

 private:
  Parser& p_;
};

using Sections = std::vector<std::pair<std::string, std::vector<Entry>>>;

const std::vector<Entry>* find(const Sections& s, const std::string& name) {
  for (const auto& [n, e] : s)
    if (n == name) return &e;
  return nullptr;
}

// Shortest text that reads back to the same double.
std::string fmt(double v) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string quote(const Expression& e) { return "\"" + e.to_string() + "\""; }

std::string quote_all(const std::vector<Expression>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + quote(v[i]);
  return out + "]";
}

const char* basis_name(Basis b) { return b == Basis::kFrame ? "frame" : "coordinate"; }

}  // namespace

ManifoldSpec parse_manifold(const std::string& text, const std::string& origin, int probes) {
  Parser p(text, origin);
  const Sections sections = p.run();
  Builder b(p);
  static const std::set<std::string> known{"manifold", "parameters", "metric", "frame", "structure",
                                           "potential", "domain", "tolerances"};
  for (const auto& [name, entries] : sections) {
    if (!known.count(name)) {
      const std::size_t at = text.find("[" + name + "]");
      p.fail("unknown section [" + name + "]", at == std::string::npos ? 0 : at);
    }
  }

  ManifoldSpec s;
  const auto* man = find(sections, "manifold");
  if (!man) p.fail("missing [manifold] section", 0);
  int dimension = -1;
  std::size_t dim_offset = 0;
  for (const Entry& e : *man) {
    if (e.key == "name") {
      s.name = b.string(b.scalar(e.value));
    } else if (e.key == "dimension") {
      const double d = b.number(b.scalar(e.value));
      if (d != static_cast<int>(d) || d < 1) p.fail("dimension must be a positive integer", e.value.offset);
      dimension = static_cast<int>(d);
      dim_offset = e.value.offset;
    } else if (e.key == "coordinates") {
      std::set<std::string> seen;
      for (const Atom& a : b.array(e.value, 0)) {
        const std::string c = b.string(a);
        if (c.empty() || !(std::isalpha(static_cast<unsigned char>(c[0])) || c[0] == '_'))
          p.fail("invalid coordinate name '" + c + "'", a.offset);
        if (!seen.insert(c).second) p.fail("duplicate coordinate '" + c + "'", a.offset);
        s.coordinates.push_back(c);
      }
    } else {
      p.fail("unknown key '" + e.key + "' in [manifold]", e.line_start);
    }
  }
  if (s.coordinates.empty()) p.fail("[manifold] needs a non-empty 'coordinates' array", 0);
  if (dimension >= 0 && dimension != s.dim())
    p.fail("dimension " + std::to_string(dimension) + " does not match " + std::to_string(s.dim()) + " coordinates",
           dim_offset);
  const int d = s.dim();
  const std::size_t du = static_cast<std::size_t>(d);

  if (const auto* sec = find(sections, "parameters")) {
    for (const Entry& e : *sec) {
      for (const auto& c : s.coordinates)
        if (c == e.key) p.fail("parameter '" + e.key + "' shadows a coordinate", e.line_start);
      s.parameters[e.key] = b.number(b.scalar(e.value));
    }
  }

  const auto* metric = find(sections, "metric");
  const auto* frame = find(sections, "frame");
  if (metric && frame) p.fail("give either [metric] or [frame], not both", 0);
  if (!metric && !frame) p.fail("missing [metric] or [frame] section", 0);
  if (metric) {
    s.mode = MetricMode::kMetric;
    std::vector<std::vector<std::optional<Expression>>> m(du, std::vector<std::optional<Expression>>(du));
    for (const Entry& e : *metric) {
      const auto dot1 = e.key.find('.');
      const auto dot2 = dot1 == std::string::npos ? std::string::npos : e.key.find('.', dot1 + 1);
      if (e.key.substr(0, dot1) != "g" || dot2 == std::string::npos)
        p.fail("metric keys look like g.<coord>.<coord>", e.line_start);
      const int i = b.coordinate(s, e.key.substr(dot1 + 1, dot2 - dot1 - 1), e.line_start);
      const int j = b.coordinate(s, e.key.substr(dot2 + 1), e.line_start);
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = b.expr(s, b.scalar(e.value));
    }
    s.metric.assign(du, std::vector<Expression>(du));
    for (std::size_t i = 0; i < du; ++i)
      for (std::size_t j = 0; j < du; ++j) {
        if (m[i][j]) {
          s.metric[i][j] = *m[i][j];
        } else if (m[j][i]) {
          s.metric[i][j] = *m[j][i];
        }
      }
  } else {
    s.mode = MetricMode::kFrame;
    s.frame.assign(du, {});
    std::vector<bool> seen(du, false);
    for (const Entry& e : *frame) {
      if (e.key.rfind("e", 0) != 0) p.fail("frame keys look like e<N>", e.line_start);
      const int a = b.index_suffix(e, "e", d);
      s.frame[static_cast<std::size_t>(a)] = b.exprs(s, e.value);
      seen[static_cast<std::size_t>(a)] = true;
    }
    for (std::size_t a = 0; a < du; ++a)
      if (!seen[a]) p.fail("[frame] is missing e" + std::to_string(a + 1), text.find("[frame]"));
  }

  if (const auto* sec = find(sections, "structure")) {
    StructureSpec st;
    st.phi.assign(du, std::vector<Expression>(du));
    bool has_xi = false, has_eta = false;
    for (const Entry& e : *sec) {
      if (e.key == "basis") {
        st.basis = b.basis(b.scalar(e.value));
      } else if (e.key == "xi") {
        st.xi = b.exprs(s, e.value);
        has_xi = true;
      } else if (e.key == "eta") {
        st.eta = b.exprs(s, e.value);
        has_eta = true;
      } else if (e.key.rfind("phi.", 0) == 0) {
        st.phi[static_cast<std::size_t>(b.index_suffix(e, "phi.", d))] = b.exprs(s, e.value);
      } else {
        p.fail("unknown key '" + e.key + "' in [structure]", e.line_start);
      }
    }
    if (!has_xi || !has_eta) p.fail("[structure] needs both xi and eta", text.find("[structure]"));
    s.structure = std::move(st);
  }

  if (const auto* sec = find(sections, "potential")) {
    Basis def = Basis::kCoordinate;
    std::map<std::string, Basis> overrides;
    for (const Entry& e : *sec) {
      if (e.key == "basis") {
        def = b.basis(b.scalar(e.value));
      } else if (e.key.rfind("basis.", 0) == 0) {
        overrides[e.key.substr(6)] = b.basis(b.scalar(e.value));
      }
    }
    for (const Entry& e : *sec) {
      if (e.key == "basis" || e.key.rfind("basis.", 0) == 0) continue;
      if (e.key == "lambda") {
        s.declared_lambda = b.number(b.scalar(e.value));
      } else if (e.key.find('.') != std::string::npos) {
        p.fail("invalid field name '" + e.key + "'", e.line_start);
      } else if (e.value.is_array) {
        const auto it = overrides.find(e.key);
        s.vector_fields[e.key] = VectorFieldSpec{b.exprs(s, e.value), it == overrides.end() ? def : it->second};
      } else {
        s.scalar_fields[e.key] = b.expr(s, e.value.atom);
      }
    }
    for (const auto& [name, basis] : overrides)
      if (!s.vector_fields.count(name)) p.fail("basis given for unknown vector field '" + name + "'", text.find("[potential]"));
  }

  const auto* dom = find(sections, "domain");
  if (!dom) p.fail("missing [domain] section", 0);
  s.domain.assign(du, Interval{});
  {
    std::vector<bool> seen(du, false);
    for (const Entry& e : *dom) {
      const int i = b.coordinate(s, e.key, e.line_start);
      const auto& items = b.array(e.value, 2);
      const Interval iv{b.number(items[0]), b.number(items[1])};
      if (!(iv.lo < iv.hi)) p.fail("domain interval must have lo < hi", e.value.offset);
      s.domain[static_cast<std::size_t>(i)] = iv;
      seen[static_cast<std::size_t>(i)] = true;
    }
    for (std::size_t i = 0; i < du; ++i)
      if (!seen[i]) p.fail("[domain] is missing coordinate '" + s.coordinates[i] + "'", text.find("[domain]"));
  }

  if (const auto* sec = find(sections, "tolerances")) {
    const std::map<std::string, double*> fields{
        {"identity", &s.tolerances.identity},
        {"table", &s.tolerances.table},
        {"soliton", &s.tolerances.soliton},
        {"positive_definite", &s.tolerances.positive_definite},
        {"condition", &s.tolerances.condition},
        {"division_guard", &s.tolerances.division_guard},
        {"frame", &s.tolerances.frame},
        {"rank", &s.tolerances.rank},
        {"constancy", &s.tolerances.constancy},
    };
    for (const Entry& e : *sec) {
      const auto it = fields.find(e.key);
      if (it == fields.end()) p.fail("unknown tolerance '" + e.key + "'", e.line_start);
      const double v = b.number(b.scalar(e.value));
      if (!(v > 0.0)) p.fail("tolerance must be positive", e.value.offset);
      *it->second = v;
    }
  }

  if (s.name.empty()) s.name = origin;
  if (probes > 0) validate(s, probes);
  return s;
}

ManifoldSpec load_manifold(const std::string& path, int probes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read manifold file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifold(ss.str(), path, probes);
}

std::string write_manifold(const ManifoldSpec& s) {
  std::ostringstream o;
  const std::size_t d = static_cast<std::size_t>(s.dim());
  o << "[manifold]\n";
  o << "name = \"" << s.name << "\"\n";
  o << "dimension = " << d << "\n";
  o << "coordinates = [";
  for (std::size_t i = 0; i < d; ++i) o << (i ? ", " : "") << '"' << s.coordinates[i] << '"';
  o << "]\n";
  if (!s.parameters.empty()) {
    o << "\n[parameters]\n";
    for (const auto& [k, v] : s.parameters) o << k << " = " << fmt(v) << "\n";
  }
  if (s.mode == MetricMode::kMetric) {
    o << "\n[metric]\n";
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) {
        if (s.metric[i][j].is_zero_constant() && s.metric[j][i].is_zero_constant()) continue;
        o << "g." << s.coordinates[i] << "." << s.coordinates[j] << " = " << quote(s.metric[i][j]) << "\n";
        if (s.metric[j][i].to_string() != s.metric[i][j].to_string())
          o << "g." << s.coordinates[j] << "." << s.coordinates[i] << " = " << quote(s.metric[j][i]) << "\n";
      }
  } else {
    o << "\n[frame]\n";
    for (std::size_t a = 0; a < d; ++a) o << "e" << a + 1 << " = " << quote_all(s.frame[a]) << "\n";
  }
  if (s.structure) {
    const StructureSpec& st = *s.structure;
    o << "\n[structure]\n";
    o << "basis = \"" << basis_name(st.basis) << "\"\n";
    for (std::size_t i = 0; i < d; ++i) o << "phi." << i + 1 << " = " << quote_all(st.phi[i]) << "\n";
    o << "xi = " << quote_all(st.xi) << "\n";
    o << "eta = " << quote_all(st.eta) << "\n";
  }
  if (!s.vector_fields.empty() || !s.scalar_fields.empty() || s.declared_lambda) {
    o << "\n[potential]\n";
    for (const auto& [name, v] : s.vector_fields)
      if (v.basis != Basis::kCoordinate) o << "basis." << name << " = \"" << basis_name(v.basis) << "\"\n";
    for (const auto& [name, v] : s.vector_fields) o << name << " = " << quote_all(v.components) << "\n";
    for (const auto& [name, u] : s.scalar_fields) o << name << " = " << quote(u) << "\n";
    if (s.declared_lambda) o << "lambda = " << fmt(*s.declared_lambda) << "\n";
  }
  o << "\n[domain]\n";
  for (std::size_t i = 0; i < d; ++i)
    o << s.coordinates[i] << " = [" << fmt(s.domain[i].lo) << ", " << fmt(s.domain[i].hi) << "]\n";
  const Tolerances def;
  const std::vector<std::tuple<const char*, double, double>> tol{
      {"identity", s.tolerances.identity, def.identity},
      {"table", s.tolerances.table, def.table},
      {"soliton", s.tolerances.soliton, def.soliton},
      {"positive_definite", s.tolerances.positive_definite, def.positive_definite},
      {"condition", s.tolerances.condition, def.condition},
      {"division_guard", s.tolerances.division_guard, def.division_guard},
      {"frame", s.tolerances.frame, def.frame},
      {"rank", s.tolerances.rank, def.rank},
      {"constancy", s.tolerances.constancy, def.constancy},
  };
  bool header = false;
  for (const auto& [name, v, dv] : tol) {
    if (v == dv) continue;
    if (!header) o << "\n[tolerances]\n";
    header = true;
    o << name << " = " << fmt(v) << "\n";
  }
  return o.str();
}

}  // namespace solitonlab

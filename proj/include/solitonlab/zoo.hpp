#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "solitonlab/geometry.hpp"
#include "solitonlab/report.hpp"

namespace solitonlab {

/// Where an expected value comes from.
enum class Source {
  kPublished,  // printed in the published worked example
  kDerived,    // derived by hand from published values, or from a closed form
  kTrivial,    // follows from an elementary identity
};

const char* to_string(Source s);

/// One row of an expected-values table. `residual` returns the largest
/// component error of the identity at the given point.
struct TableRow {
  std::string name;
  Source source;
  std::function<double(const Geometry&)> residual;
};

/// A scalar expectation about a whole entry (fitted constants etc). The key
/// names a value produced by the pipeline, see run_zoo().
struct GlobalExpectation {
  std::string key;
  double value;
  Source source;
};

struct ZooEntry {
  std::string name;
  std::string description;
  ManifoldSpec spec;
  std::vector<TableRow> table;
  std::vector<GlobalExpectation> globals;
};

ZooEntry zoo_example_3_6(double a = 1.0);
ZooEntry zoo_example_4_5();
/// H^{2n+1} as the warped product dt^2 + e^{2t}(flat), with its Kenmotsu structure.
ZooEntry zoo_hyperbolic(int n);
/// H^2(-4) x R as dt^2 + e^{4t}dx^2 + dy^2 with a (-2,-2)' almost Kenmotsu structure.
ZooEntry zoo_product_h2xr();

std::vector<std::string> zoo_names();
/// Accepts every name from zoo_names() plus "hyperbolic-<n>" for n = 1..3
/// and "example-3-6:a=<value>". Throws Error for unknown names.
ZooEntry zoo_entry(const std::string& name);

/// Evaluates every table row at every point and appends one check per row.
void check_table(const ZooEntry& entry, const std::vector<Point>& points, Report& report);

}  // namespace solitonlab

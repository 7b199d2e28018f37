#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "solitonlab/report.hpp"
#include "solitonlab/soliton.hpp"
#include "solitonlab/zoo.hpp"

namespace solitonlab {

inline constexpr std::uint64_t kDefaultSeed = 1;

struct RunOptions {
  int samples = 100;
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> lambda;   // overrides the declared λ
  bool fit = false;               // ignore any declared λ and fit it
  std::string potential;          // vector field name or inline components
  std::string potential_fn;       // scalar field name or inline expression
  std::string theorem;            // audit only
};

/// Picks the potential from the options: an explicit --potential or
/// --potential-fn (by name or inline), else the field named V, else the
/// function named u, else the trivial potential.
SolitonProblem make_problem(const ManifoldSpec& spec, const RunOptions& opts);

/// Parses "e1, e2, ..." or "[e1, e2, ...]" into d expressions.
VectorFieldSpec parse_inline_vector(const ManifoldSpec& spec, const std::string& text);

Report run_structure(const ManifoldSpec& spec, const RunOptions& opts);
Report run_soliton(const ManifoldSpec& spec, const RunOptions& opts);
Report run_audit(const ManifoldSpec& spec, const RunOptions& opts);
/// Curvature self checks, structure suites, soliton and commutation checks.
Report run_report(const ManifoldSpec& spec, const RunOptions& opts);
/// run_report plus the entry's expected-value table and global expectations.
Report run_zoo(const ZooEntry& entry, const RunOptions& opts);

}  // namespace solitonlab

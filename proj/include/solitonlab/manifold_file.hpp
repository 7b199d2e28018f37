#pragma once

#include <string>

#include "solitonlab/manifold.hpp"

namespace solitonlab {

/// Parses manifold file text. `origin` is used in error messages. The
/// result is validated at `probes` sample points (0 skips validation).
ManifoldSpec parse_manifold(const std::string& text, const std::string& origin = "<input>", int probes = 10);

/// Reads and parses a manifold file. Throws Error if the file cannot be read,
/// ParseError for syntax errors and ManifoldError for invariant violations.
ManifoldSpec load_manifold(const std::string& path, int probes = 10);

/// Serializes a spec so that parse_manifold reproduces it.
std::string write_manifold(const ManifoldSpec& spec);

}  // namespace solitonlab

#pragma once

#include <string>
#include <vector>

#include "solitonlab/manifold.hpp"

// Metric-mode spec from a full matrix of expression strings.
inline solitonlab::ManifoldSpec metric_spec(std::vector<std::string> coords,
                                            const std::vector<std::vector<std::string>>& g,
                                            std::vector<solitonlab::Interval> domain) {
  solitonlab::ManifoldSpec s;
  s.name = "test";
  s.coordinates = std::move(coords);
  s.domain = std::move(domain);
  for (const auto& row : g) {
    s.metric.emplace_back();
    for (const auto& e : row) s.metric.back().push_back(s.parse(e));
  }
  return s;
}

inline std::vector<std::vector<std::string>> diagonal_metric(const std::vector<std::string>& diag) {
  std::vector<std::vector<std::string>> g(diag.size(), std::vector<std::string>(diag.size(), "0"));
  for (std::size_t i = 0; i < diag.size(); ++i) g[i][i] = diag[i];
  return g;
}

inline solitonlab::ManifoldSpec euclidean(int d, double lo = -1.0, double hi = 1.0) {
  std::vector<std::string> names;
  for (int i = 0; i < d; ++i) names.push_back("x" + std::to_string(i));
  return metric_spec(names, diagonal_metric(std::vector<std::string>(static_cast<std::size_t>(d), "1")),
                     std::vector<solitonlab::Interval>(static_cast<std::size_t>(d), {lo, hi}));
}

inline solitonlab::VectorFieldSpec vector_spec(const solitonlab::ManifoldSpec& s,
                                               const std::vector<std::string>& comps) {
  solitonlab::VectorFieldSpec v;
  for (const auto& c : comps) v.components.push_back(s.parse(c));
  return v;
}

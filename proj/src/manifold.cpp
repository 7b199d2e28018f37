#include "solitonlab/manifold.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <sstream>

#include "solitonlab/error.hpp"

namespace solitonlab {

namespace {

std::vector<Jet3> evaluate_all(const std::vector<Expression>& exprs, std::span<const Jet3> vars,
                               const EvalOptions& opts, int dim) {
  std::vector<Jet3> out;
  out.reserve(exprs.size());
  for (const auto& e : exprs) {
    Jet3 j = e.evaluate(vars, opts);
    if (j.dim() == 0) j = Jet3::constant(dim, j.value());
    out.push_back(std::move(j));
  }
  return out;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

double radical_inverse(std::uint64_t n, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (n > 0) {
    r += f * static_cast<double>(n % static_cast<std::uint64_t>(base));
    n /= static_cast<std::uint64_t>(base);
    f *= inv;
  }
  return r;
}

}  // namespace

std::string format_point(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (int i = 0; i < p.dim(); ++i) os << (i ? ", " : "") << p[i];
  os << ")";
  return os.str();
}

TensorField inverse(const TensorField& m, double guard) {
  if (m.rank() != 2) throw Error("inverse needs a rank-2 tensor");
  const int d = m.dim();
  std::vector<Jet3> a(m.data());
  std::vector<Jet3> inv(static_cast<std::size_t>(d * d));
  const int jd = a.empty() ? 0 : a[0].dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) inv[static_cast<std::size_t>(i * d + j)] = Jet3::constant(jd, i == j);
  const auto at = [d](std::vector<Jet3>& v, int i, int j) -> Jet3& {
    return v[static_cast<std::size_t>(i * d + j)];
  };
  // Gauss-Jordan with partial pivoting on values.
  for (int col = 0; col < d; ++col) {
    int piv = col;
    for (int r = col + 1; r < d; ++r)
      if (std::abs(at(a, r, col).value()) > std::abs(at(a, piv, col).value())) piv = r;
    if (piv != col) {
      for (int c = 0; c < d; ++c) {
        std::swap(at(a, piv, c), at(a, col, c));
        std::swap(at(inv, piv, c), at(inv, col, c));
      }
    }
    const Jet3 r = reciprocal(at(a, col, col), guard);
    for (int c = 0; c < d; ++c) {
      at(a, col, c) = at(a, col, c) * r;
      at(inv, col, c) = at(inv, col, c) * r;
    }
    for (int row = 0; row < d; ++row) {
      if (row == col) continue;
      const Jet3 f = at(a, row, col);
      if (f.value() == 0.0 && f.dim() == 0) continue;
      for (int c = 0; c < d; ++c) {
        at(a, row, c) -= f * at(a, col, c);
        at(inv, row, c) -= f * at(inv, col, c);
      }
    }
  }
  std::vector<Slot> s = {m.slots()[0] == Slot::kUp ? Slot::kDown : Slot::kUp,
                         m.slots()[1] == Slot::kUp ? Slot::kDown : Slot::kUp};
  TensorField out(d, s);
  out.data() = std::move(inv);
  return out;
}

MetricJets evaluate_metric(const ManifoldSpec& spec, const Point& p) {
  const int d = spec.dim();
  if (p.dim() != d) throw ManifoldError("point dimension does not match the chart");
  const std::vector<Jet3> vars = lift_coordinates(p);
  const EvalOptions opts = spec.eval_options();
  MetricJets out;
  out.metric = TensorField(d, slots(0, 2));
  if (spec.mode == MetricMode::kMetric) {
    for (int i = 0; i < d; ++i) {
      const auto row = evaluate_all(spec.metric[static_cast<std::size_t>(i)], vars, opts, d);
      for (int j = 0; j < d; ++j) out.metric(i, j) = row[static_cast<std::size_t>(j)];
    }
    return out;
  }
  TensorField e(d, {Slot::kUp, Slot::kDown});  // e(i, a) = e_a^i
  for (int a = 0; a < d; ++a) {
    const auto comps = evaluate_all(spec.frame[static_cast<std::size_t>(a)], vars, opts, d);
    for (int i = 0; i < d; ++i) e(i, a) = comps[static_cast<std::size_t>(i)];
  }
  TensorField theta = inverse(e, spec.tolerances.division_guard);  // theta(a, i) = θ^a_i
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Jet3 s = Jet3::constant(d, 0.0);
      for (int a = 0; a < d; ++a) s += theta(a, i) * theta(a, j);
      out.metric(i, j) = s;
      out.metric(j, i) = s;
    }
  out.frame = std::move(e);
  out.coframe = std::move(theta);
  return out;
}

std::vector<Point> sample_points(const ManifoldSpec& spec, int count, std::uint64_t seed) {
  const int d = spec.dim();
  if (d > static_cast<int>(std::size(kPrimes))) throw ManifoldError("dimension too large for sampling");
  if (static_cast<int>(spec.domain.size()) != d) throw ManifoldError("domain does not cover every coordinate");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> shift(static_cast<std::size_t>(d));
  for (double& s : shift) s = unit(rng);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    Point p;
    p.coords.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      double u = radical_inverse(static_cast<std::uint64_t>(n + 1), kPrimes[i]) + shift[static_cast<std::size_t>(i)];
      u -= std::floor(u);
      const Interval& iv = spec.domain[static_cast<std::size_t>(i)];
      const double margin = 0.05 * (iv.hi - iv.lo);
      p.coords[static_cast<std::size_t>(i)] = iv.lo + margin + u * (iv.hi - iv.lo - 2.0 * margin);
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

void validate(const ManifoldSpec& spec, int probes) {
  const int d = spec.dim();
  if (d < 1) throw ManifoldError("manifold needs at least one coordinate");
  if (static_cast<int>(spec.domain.size()) != d) {
    throw ManifoldError("domain must give an interval for each of the " + std::to_string(d) + " coordinates");
  }
  for (int i = 0; i < d; ++i) {
    const Interval& iv = spec.domain[static_cast<std::size_t>(i)];
    if (!(iv.lo < iv.hi)) throw ManifoldError("empty domain interval for '" + spec.coordinates[static_cast<std::size_t>(i)] + "'");
  }
  const auto check_shape = [d](const std::vector<Expression>& v, const std::string& what) {
    if (static_cast<int>(v.size()) != d) {
      throw ManifoldError(what + " must have " + std::to_string(d) + " components");
    }
  };
  if (spec.mode == MetricMode::kMetric) {
    if (static_cast<int>(spec.metric.size()) != d) throw ManifoldError("metric must be d x d");
    for (const auto& row : spec.metric) check_shape(row, "metric row");
  } else {
    if (static_cast<int>(spec.frame.size()) != d) {
      throw ManifoldError("frame mode needs " + std::to_string(d) + " frame fields");
    }
    for (const auto& e : spec.frame) check_shape(e, "frame field");
  }
  if (spec.structure) {
    if (static_cast<int>(spec.structure->phi.size()) != d) throw ManifoldError("phi must be d x d");
    for (const auto& row : spec.structure->phi) check_shape(row, "phi row");
    check_shape(spec.structure->xi, "xi");
    check_shape(spec.structure->eta, "eta");
    if (spec.structure->basis == Basis::kFrame && spec.mode != MetricMode::kFrame) {
      throw ManifoldError("structure given in the frame basis but the manifold has no frame");
    }
  }
  for (const auto& [name, v] : spec.vector_fields) {
    check_shape(v.components, "vector field '" + name + "'");
    if (v.basis == Basis::kFrame && spec.mode != MetricMode::kFrame) {
      throw ManifoldError("vector field '" + name + "' given in the frame basis but the manifold has no frame");
    }
  }

  const EvalOptions opts = spec.eval_options();
  for (const Point& p : sample_points(spec, probes, 0x5eed)) {
    const std::string at = " at " + format_point(p);
    MetricJets mj;
    try {
      mj = evaluate_metric(spec, p);
      const auto eval_list = [&](const std::vector<Expression>& v) {
        for (const auto& e : v) (void)e.evaluate(p, opts);
      };
      if (spec.structure) {
        for (const auto& row : spec.structure->phi) eval_list(row);
        eval_list(spec.structure->xi);
        eval_list(spec.structure->eta);
      }
      for (const auto& [name, v] : spec.vector_fields) eval_list(v.components);
      for (const auto& [name, u] : spec.scalar_fields) (void)u.evaluate(p, opts);
    } catch (const DomainError& e) {
      throw ManifoldError(std::string("expression not evaluable") + at + ": " + e.what());
    }
    Eigen::MatrixXd g(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g(i, j) = mj.metric(i, j).value();
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (std::abs(g(i, j) - g(j, i)) > 1e-12 * scale) {
          throw ManifoldError("metric not symmetric: g(" + spec.coordinates[static_cast<std::size_t>(i)] + "," +
                              spec.coordinates[static_cast<std::size_t>(j)] + ") != g(" +
                              spec.coordinates[static_cast<std::size_t>(j)] + "," +
                              spec.coordinates[static_cast<std::size_t>(i)] + ")" + at);
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > spec.tolerances.positive_definite)) {
      throw ManifoldError("metric not positive definite (min eigenvalue " + std::to_string(lo) + ")" + at);
    }
    if (hi / lo > spec.tolerances.condition) {
      throw ManifoldError("metric condition number exceeds " + std::to_string(spec.tolerances.condition) + at);
    }
    if (mj.frame) {
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          double s = 0.0;
          for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) s += g(i, j) * (*mj.frame)(i, a).value() * (*mj.frame)(j, b).value();
          if (std::abs(s - (a == b ? 1.0 : 0.0)) > spec.tolerances.frame) {
            throw ManifoldError("induced metric does not make the frame orthonormal" + at);
          }
        }
    }
  }
}

}  // namespace solitonlab

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "solitonlab/error.hpp"
#include "solitonlab/jet.hpp"

namespace solitonlab {

/// Kind of a tensor slot.
enum class Slot { kUp, kDown };

/// Dense tensor over a d-dimensional chart with an explicit slot layout
/// (e.g. {kUp, kDown, kDown, kDown} for R^a_{bcd}). Components are stored
/// row-major in slot order.
template <class T>
class Tensor {
 public:
  Tensor() = default;
  Tensor(int dim, std::vector<Slot> slots, T fill = T{})
      : dim_(dim), slots_(std::move(slots)) {
    std::size_t n = 1;
    for (std::size_t s = 0; s < slots_.size(); ++s) n *= static_cast<std::size_t>(dim_);
    c_.assign(n, fill);
  }

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(slots_.size()); }
  const std::vector<Slot>& slots() const { return slots_; }
  int contravariant() const { return count(Slot::kUp); }
  int covariant() const { return count(Slot::kDown); }
  std::size_t size() const { return c_.size(); }

  template <class... I>
  T& operator()(I... idx) {
    return c_[flat(idx...)];
  }
  template <class... I>
  const T& operator()(I... idx) const {
    return c_[flat(idx...)];
  }

  T& at_flat(std::size_t f) { return c_[f]; }
  const T& at_flat(std::size_t f) const { return c_[f]; }

  /// Multi-index of a flat position.
  std::vector<int> unflatten(std::size_t f) const {
    std::vector<int> idx(slots_.size());
    for (std::size_t s = slots_.size(); s-- > 0;) {
      idx[s] = static_cast<int>(f % static_cast<std::size_t>(dim_));
      f /= static_cast<std::size_t>(dim_);
    }
    return idx;
  }
  std::size_t flatten(const std::vector<int>& idx) const {
    std::size_t f = 0;
    for (int i : idx) f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    return f;
  }

  std::vector<T>& data() { return c_; }
  const std::vector<T>& data() const { return c_; }

 private:
  template <class... I>
  std::size_t flat(I... idx) const {
    std::size_t f = 0;
    ((f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx)), ...);
    return f;
  }
  int count(Slot k) const {
    int n = 0;
    for (Slot s : slots_) n += (s == k);
    return n;
  }

  int dim_ = 0;
  std::vector<Slot> slots_;
  std::vector<T> c_;
};

/// Jet-valued tensor field evaluated at a point.
using TensorField = Tensor<Jet3>;
/// Point-evaluated tensor.
using TensorValue = Tensor<double>;

inline std::vector<Slot> slots(int up, int down) {
  std::vector<Slot> s(static_cast<std::size_t>(up), Slot::kUp);
  s.insert(s.end(), static_cast<std::size_t>(down), Slot::kDown);
  return s;
}

inline TensorValue value_of(const TensorField& f) {
  TensorValue v(f.dim(), f.slots());
  for (std::size_t n = 0; n < f.size(); ++n) v.at_flat(n) = f.at_flat(n).value();
  return v;
}

inline TensorValue operator-(const TensorValue& a, const TensorValue& b) {
  if (a.size() != b.size()) throw Error("tensor shape mismatch");
  TensorValue r = a;
  for (std::size_t n = 0; n < r.size(); ++n) r.at_flat(n) -= b.at_flat(n);
  return r;
}

inline TensorValue operator+(const TensorValue& a, const TensorValue& b) {
  if (a.size() != b.size()) throw Error("tensor shape mismatch");
  TensorValue r = a;
  for (std::size_t n = 0; n < r.size(); ++n) r.at_flat(n) += b.at_flat(n);
  return r;
}

inline TensorValue operator*(double s, TensorValue a) {
  for (double& v : a.data()) v *= s;
  return a;
}

inline double max_abs(const TensorValue& t) {
  double m = 0.0;
  for (double v : t.data()) m = std::max(m, std::abs(v));
  return m;
}

inline double frobenius(const TensorValue& t) {
  double s = 0.0;
  for (double v : t.data()) s += v * v;
  return std::sqrt(s);
}

}  // namespace solitonlab

#include "solitonlab/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "solitonlab/error.hpp"

namespace solitonlab {

namespace {

std::size_t storage_size(int dim, int order) {
  const std::size_t d = static_cast<std::size_t>(dim);
  std::size_t n = 1;
  if (order >= 1) n += d;
  if (order >= 2) n += d * d;
  if (order >= 3) n += d * d * d;
  return n;
}

// Lifts a dimensionless constant to the dimension of `like`.
Jet3 promote(const Jet3& a, const Jet3& like) {
  if (a.dim() == like.dim() || a.dim() != 0) return a;
  return Jet3::constant(like.dim(), a.value());
}

void require_same_dim(const Jet3& a, const Jet3& b) {
  if (a.dim() != b.dim()) {
    throw Error("jet dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                std::to_string(b.dim()));
  }
}

}  // namespace

Jet3::Jet3(int dim, int order)
    : dim_(dim), order_(dim == 0 ? kMaxOrder : order),
      c_(storage_size(dim, dim == 0 ? 0 : order), 0.0) {
  if (order < 0 || order > kMaxOrder) throw Error("jet order out of range");
}

Jet3 Jet3::constant(int dim, double value, int order) {
  Jet3 j(dim, order);
  j.c_[0] = value;
  return j;
}

Jet3 Jet3::coordinate(const Point& p, int i) {
  if (i < 0 || i >= p.dim()) {
    throw Error("coordinate index " + std::to_string(i) + " out of range for dimension " +
                std::to_string(p.dim()));
  }
  Jet3 j(p.dim(), kMaxOrder);
  j.c_[0] = p[i];
  j.c_[j.off1() + static_cast<std::size_t>(i)] = 1.0;
  return j;
}

std::vector<Jet3> lift_coordinates(const Point& p) {
  std::vector<Jet3> out;
  out.reserve(p.coords.size());
  for (int i = 0; i < p.dim(); ++i) out.push_back(Jet3::coordinate(p, i));
  return out;
}

double Jet3::d(int i) const {
  if (order_ < 1 || dim_ == 0) return 0.0;
  return c_[off1() + static_cast<std::size_t>(i)];
}

double Jet3::d(int i, int j) const {
  if (order_ < 2 || dim_ == 0) return 0.0;
  return c_[off2() + static_cast<std::size_t>(i * dim_ + j)];
}

double Jet3::d(int i, int j, int k) const {
  if (order_ < 3 || dim_ == 0) return 0.0;
  return c_[off3() + static_cast<std::size_t>((i * dim_ + j) * dim_ + k)];
}

void Jet3::set2(int i, int j, double v) {
  c_[off2() + static_cast<std::size_t>(i * dim_ + j)] = v;
  c_[off2() + static_cast<std::size_t>(j * dim_ + i)] = v;
}

void Jet3::set3(int i, int j, int k, double v) {
  const auto at = [&](int a, int b, int c) {
    return off3() + static_cast<std::size_t>((a * dim_ + b) * dim_ + c);
  };
  c_[at(i, j, k)] = v;
  c_[at(i, k, j)] = v;
  c_[at(j, i, k)] = v;
  c_[at(j, k, i)] = v;
  c_[at(k, i, j)] = v;
  c_[at(k, j, i)] = v;
}

Jet3 Jet3::partial(int i) const {
  if (dim_ == 0) return Jet3{};
  if (i < 0 || i >= dim_) throw Error("partial derivative index out of range");
  if (order_ == 0) throw Error("cannot differentiate an order-0 jet");
  Jet3 r(dim_, order_ - 1);
  r.c_[0] = d(i);
  for (int j = 0; j < dim_ && r.order_ >= 1; ++j) r.c_[r.off1() + j] = d(i, j);
  if (r.order_ >= 2) {
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        r.c_[r.off2() + static_cast<std::size_t>(j * dim_ + k)] = d(i, j, k);
  }
  return r;
}

Jet3 Jet3::truncated(int order) const {
  if (dim_ == 0 || order >= order_) return *this;
  Jet3 r(dim_, order);
  std::copy_n(c_.begin(), r.c_.size(), r.c_.begin());
  return r;
}

Jet3& Jet3::operator+=(const Jet3& b) {
  if (b.dim_ == 0) {
    c_[0] += b.c_[0];
    return *this;
  }
  if (dim_ == 0) {
    *this = promote(*this, b);
  }
  require_same_dim(*this, b);
  if (b.order_ < order_) *this = truncated(b.order_);
  for (std::size_t n = 0; n < c_.size(); ++n) c_[n] += b.c_[n];
  return *this;
}

Jet3& Jet3::operator-=(const Jet3& b) {
  if (b.dim_ == 0) {
    c_[0] -= b.c_[0];
    return *this;
  }
  if (dim_ == 0) {
    *this = promote(*this, b);
  }
  require_same_dim(*this, b);
  if (b.order_ < order_) *this = truncated(b.order_);
  for (std::size_t n = 0; n < c_.size(); ++n) c_[n] -= b.c_[n];
  return *this;
}

Jet3& Jet3::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Jet3 operator*(const Jet3& a_in, const Jet3& b_in) {
  if (a_in.dim() == 0) return a_in.value() * b_in;
  if (b_in.dim() == 0) return b_in.value() * a_in;
  require_same_dim(a_in, b_in);
  const Jet3& a = a_in;
  const Jet3& b = b_in;
  const int n = a.dim();
  Jet3 r(n, std::min(a.order(), b.order()));
  const double a0 = a.value();
  const double b0 = b.value();
  r.c_[0] = a0 * b0;
  if (r.order_ >= 1) {
    for (int i = 0; i < n; ++i) r.c_[r.off1() + i] = a.d(i) * b0 + a0 * b.d(i);
  }
  if (r.order_ >= 2) {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        r.set2(i, j, a.d(i, j) * b0 + a.d(i) * b.d(j) + a.d(j) * b.d(i) + a0 * b.d(i, j));
  }
  if (r.order_ >= 3) {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = j; k < n; ++k) {
          const double v = a.d(i, j, k) * b0 + a.d(i, j) * b.d(k) + a.d(i, k) * b.d(j) +
                           a.d(j, k) * b.d(i) + a.d(i) * b.d(j, k) + a.d(j) * b.d(i, k) +
                           a.d(k) * b.d(i, j) + a0 * b.d(i, j, k);
          r.set3(i, j, k, v);
        }
  }
  return r;
}

Jet3 Jet3::compose(const Jet3& a, double f0, double f1, double f2, double f3) {
  if (a.dim_ == 0) return Jet3::constant(0, f0);
  const int n = a.dim_;
  Jet3 r(n, a.order_);
  r.c_[0] = f0;
  if (r.order_ >= 1) {
    for (int i = 0; i < n; ++i) r.c_[r.off1() + i] = f1 * a.d(i);
  }
  if (r.order_ >= 2) {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) r.set2(i, j, f2 * a.d(i) * a.d(j) + f1 * a.d(i, j));
  }
  if (r.order_ >= 3) {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = j; k < n; ++k) {
          const double v =
              f3 * a.d(i) * a.d(j) * a.d(k) +
              f2 * (a.d(i, j) * a.d(k) + a.d(i, k) * a.d(j) + a.d(j, k) * a.d(i)) +
              f1 * a.d(i, j, k);
          r.set3(i, j, k, v);
        }
  }
  return r;
}

Jet3 operator+(Jet3 a, const Jet3& b) { return a += b; }
Jet3 operator-(Jet3 a, const Jet3& b) { return a -= b; }
Jet3 operator-(const Jet3& a) { return -1.0 * a; }
Jet3 operator*(double s, Jet3 a) { return a *= s; }
Jet3 operator*(Jet3 a, double s) { return a *= s; }
Jet3 operator+(Jet3 a, double s) { return a += Jet3::constant(0, s); }
Jet3 operator+(double s, Jet3 a) { return a += Jet3::constant(0, s); }
Jet3 operator-(Jet3 a, double s) { return a -= Jet3::constant(0, s); }
Jet3 operator-(double s, const Jet3& a) { return Jet3::constant(0, s) - a; }

Jet3 reciprocal(const Jet3& a, double guard) {
  const double x = a.value();
  if (!(std::abs(x) >= guard)) {
    throw DomainError("division by near-zero value " + std::to_string(x));
  }
  const double inv = 1.0 / x;
  return Jet3::compose(a, inv, -inv * inv, 2.0 * inv * inv * inv, -6.0 * inv * inv * inv * inv);
}

Jet3 divide(const Jet3& a, const Jet3& b, double guard) {
  return a * reciprocal(b, guard * std::max(1.0, std::abs(a.value())));
}

Jet3 pow(const Jet3& a, double c) {
  const double x = a.value();
  const bool integral = std::floor(c) == c;
  if (!integral && !(x > 0.0)) {
    throw DomainError("non-integer power of non-positive value " + std::to_string(x));
  }
  // Falling factorial c(c-1)...(c-k+1) * x^(c-k); exact zero past a
  // non-negative integer exponent so x = 0 never produces inf * 0.
  double f[4];
  double coeff = 1.0;
  for (int k = 0; k < 4; ++k) {
    if (coeff == 0.0) {
      f[k] = 0.0;
    } else {
      if (x == 0.0 && c - k < 0.0) throw DomainError("negative power of zero");
      f[k] = coeff * std::pow(x, c - k);
    }
    coeff *= (c - k);
  }
  return Jet3::compose(a, f[0], f[1], f[2], f[3]);
}

Jet3 exp(const Jet3& a) {
  const double e = std::exp(a.value());
  return Jet3::compose(a, e, e, e, e);
}

Jet3 log(const Jet3& a) {
  const double x = a.value();
  if (!(x > 0.0)) throw DomainError("log of non-positive value " + std::to_string(x));
  const double inv = 1.0 / x;
  return Jet3::compose(a, std::log(x), inv, -inv * inv, 2.0 * inv * inv * inv);
}

Jet3 sin(const Jet3& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  return Jet3::compose(a, s, c, -s, -c);
}

Jet3 cos(const Jet3& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  return Jet3::compose(a, c, -s, -c, s);
}

Jet3 sinh(const Jet3& a) {
  const double s = std::sinh(a.value());
  const double c = std::cosh(a.value());
  return Jet3::compose(a, s, c, s, c);
}

Jet3 cosh(const Jet3& a) {
  const double s = std::sinh(a.value());
  const double c = std::cosh(a.value());
  return Jet3::compose(a, c, s, c, s);
}

Jet3 tanh(const Jet3& a) {
  const double t = std::tanh(a.value());
  const double s2 = 1.0 - t * t;  // sech^2
  return Jet3::compose(a, t, s2, -2.0 * t * s2, s2 * (6.0 * t * t - 2.0));
}

Jet3 sqrt(const Jet3& a) {
  const double x = a.value();
  if (!(x > 0.0)) throw DomainError("sqrt of non-positive value " + std::to_string(x));
  const double r = std::sqrt(x);
  return Jet3::compose(a, r, 0.5 / r, -0.25 / (r * x), 0.375 / (r * x * x));
}

}  // namespace solitonlab

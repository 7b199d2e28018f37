#pragma once

#include <span>
#include <vector>

namespace solitonlab {

/// Default relative guard for jet division: |b| must exceed this times
/// max(1, |a|) for a / b to be evaluated.
inline constexpr double kDefaultDivisionGuard = 1e-12;

/// A point of a chart.
struct Point {
  std::vector<double> coords;

  int dim() const { return static_cast<int>(coords.size()); }
  double operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
};

/// Truncated multivariate Taylor jet of a scalar field at a point: the value
/// and all mixed partial derivatives up to `order()` (at most 3) with respect
/// to the `dim()` chart coordinates.
///
/// Higher-order tensors are stored densely and are symmetric bitwise: every
/// operation computes the canonical entry (i <= j <= k) once and copies it to
/// all index permutations. Taking a partial derivative lowers the order by
/// one; binary operations truncate to the smaller order of their operands.
class Jet3 {
 public:
  static constexpr int kMaxOrder = 3;

  /// The constant zero; dimensionless jets act as constants in arithmetic.
  Jet3() = default;
  /// Zero jet of the given dimension and order.
  Jet3(int dim, int order);

  static Jet3 constant(int dim, double value, int order = kMaxOrder);
  /// Jet of the coordinate function x_i at p.
  static Jet3 coordinate(const Point& p, int i);

  int dim() const { return dim_; }
  int order() const { return order_; }

  double value() const { return c_[0]; }
  double d(int i) const;
  double d(int i, int j) const;
  double d(int i, int j, int k) const;

  /// Jet of the partial derivative along coordinate i (order reduced by one).
  Jet3 partial(int i) const;
  /// Copy truncated to a lower order.
  Jet3 truncated(int order) const;

  /// Raw dense storage: [value | first | second | third].
  std::span<const double> raw() const { return c_; }

  Jet3& operator+=(const Jet3& b);
  Jet3& operator-=(const Jet3& b);
  Jet3& operator*=(double s);

  /// Composition f(a) given f and its first three derivatives at a.value().
  static Jet3 compose(const Jet3& a, double f0, double f1, double f2, double f3);

  friend Jet3 operator*(const Jet3& a, const Jet3& b);

 private:
  std::size_t off1() const { return 1; }
  std::size_t off2() const { return 1 + dim_; }
  std::size_t off3() const { return 1 + dim_ + static_cast<std::size_t>(dim_) * dim_; }
  void set2(int i, int j, double v);
  void set3(int i, int j, int k, double v);

  // dim 0 jets are plain constants and combine with jets of any dimension.
  int dim_ = 0;
  int order_ = kMaxOrder;
  std::vector<double> c_ = std::vector<double>(1, 0.0);
};

Jet3 operator+(Jet3 a, const Jet3& b);
Jet3 operator-(Jet3 a, const Jet3& b);
Jet3 operator-(const Jet3& a);
Jet3 operator*(const Jet3& a, const Jet3& b);
Jet3 operator*(double s, Jet3 a);
Jet3 operator*(Jet3 a, double s);
Jet3 operator+(Jet3 a, double s);
Jet3 operator+(double s, Jet3 a);
Jet3 operator-(Jet3 a, double s);
Jet3 operator-(double s, const Jet3& a);

/// a / b; throws DomainError when |b| < guard * max(1, |a|).
Jet3 divide(const Jet3& a, const Jet3& b, double guard = kDefaultDivisionGuard);
Jet3 reciprocal(const Jet3& a, double guard = kDefaultDivisionGuard);
inline Jet3 operator/(const Jet3& a, const Jet3& b) { return divide(a, b); }
inline Jet3 operator/(const Jet3& a, double s) { return a * (1.0 / s); }

/// a^c for a constant exponent. Non-integer exponents need a > 0.
Jet3 pow(const Jet3& a, double exponent);
Jet3 exp(const Jet3& a);
Jet3 log(const Jet3& a);
Jet3 sin(const Jet3& a);
Jet3 cos(const Jet3& a);
Jet3 sinh(const Jet3& a);
Jet3 cosh(const Jet3& a);
Jet3 tanh(const Jet3& a);
Jet3 sqrt(const Jet3& a);

/// Lifts every coordinate of p.
std::vector<Jet3> lift_coordinates(const Point& p);

}  // namespace solitonlab

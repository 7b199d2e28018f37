#pragma once

#include <cstdio>
#include <random>
#include <string>
#include <vector>

// Random expressions over the given coordinate names, built from + - * ^,
// exp, sin, cos, and small constants. Values stay moderate on [-1, 1]^d.
class RandomExpressions {
 public:
  RandomExpressions(std::vector<std::string> names, std::uint64_t seed) : names_(std::move(names)), rng_(seed) {}

  std::string make(int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
    switch (pick(rng_)) {
      case 0: return constant();
      case 1: return name();
      case 2: return "(" + make(depth - 1) + " + " + make(depth - 1) + ")";
      case 3: return "(" + make(depth - 1) + " - " + make(depth - 1) + ")";
      case 4: return "(" + make(depth - 1) + ")*(" + make(depth - 1) + ")";
      case 5: return "(" + make(depth - 1) + ")^" + std::to_string(small_int(2, 3));
      case 6: return "exp(0.5*(" + make(depth - 1) + "))";
      case 7: return "sin(" + make(depth - 1) + ")";
      case 8: return "cos(" + make(depth - 1) + ")";
      default: return "-" + name() + "*" + constant();
    }
  }

  std::vector<double> point(double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> p(names_.size());
    for (double& x : p) x = u(rng_);
    return p;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::string constant() {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", u(rng_));
    std::string s = buf;
    return s[0] == '-' ? "(" + s + ")" : s;
  }
  std::string name() {
    std::uniform_int_distribution<std::size_t> u(0, names_.size() - 1);
    return names_[u(rng_)];
  }
  int small_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  std::vector<std::string> names_;
  std::mt19937_64 rng_;
};

// c1*a*b + c2*sin(c) + c3 with random coordinates a, b, c; smooth everywhere.
inline std::string random_poly(std::mt19937_64& rng, const std::vector<std::string>& names) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.3f*%s*%s + %.3f*sin(%s) + %.3f", c(rng), names[pick(rng)].c_str(),
                names[pick(rng)].c_str(), c(rng), names[pick(rng)].c_str(), c(rng));
  return buf;
}

#pragma once

// Seeded generators shared by the expression property tests and the
// acceptance binary.

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "statgeo/expr.hpp"

namespace statgeo::testing {

inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit(rng); }

/// Random expression over `n` coordinates that is finite everywhere: every
/// divisor and every sqrt argument is shifted to be at least `shift` > 0.
class RandomExprGenerator {
 public:
  RandomExprGenerator(std::vector<std::string> names, std::uint64_t seed)
      : names_(std::move(names)), rng_(seed) {}

  Expr next(int depth = 4) { return build(depth); }

  Eigen::VectorXd point(double half_width = 1.5) {
    Eigen::VectorXd p(static_cast<Eigen::Index>(names_.size()));
    for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = uniform(rng_, -half_width, half_width);
    return p;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  Expr leaf() {
    if (rng_() % 3 == 0) return Expr::constant(std::round(uniform(rng_, -3.0, 3.0) * 4.0) / 4.0);
    const int i = static_cast<int>(rng_() % names_.size());
    return Expr::variable(i, names_[static_cast<std::size_t>(i)]);
  }

  Expr positive(const Expr& e) { return Expr::power(e, 2) + Expr::constant(0.5 + unit(rng_)); }

  Expr build(int depth) {
    if (depth <= 0 || rng_() % 5 == 0) return leaf();
    switch (rng_() % 8) {
      case 0:
        return build(depth - 1) + build(depth - 1);
      case 1:
        return build(depth - 1) - build(depth - 1);
      case 2:
      case 3:
        return build(depth - 1) * build(depth - 1);
      case 4:
        return build(depth - 1) / positive(build(depth - 2));
      case 5:
        return Expr::sqrt(positive(build(depth - 1)));
      case 6: {
        const int k = static_cast<int>(rng_() % 4);
        return Expr::power(build(depth - 1), k == 0 ? 2 : k);
      }
      default:
        return -build(depth - 1);
    }
  }

  std::vector<std::string> names_;
  std::mt19937_64 rng_;
};

/// Fourth-order central difference of e along coordinate i, minimised over a
/// step sweep against the reference value `target`.
inline double central_difference(const Expr& e, const Eigen::VectorXd& p, int i, double target) {
  double best = 0.0;
  double best_err = std::numeric_limits<double>::infinity();
  for (double h : {1e-2, 3e-3, 1e-3, 3e-4, 1e-4}) {
    auto at = [&](double t) {
      Eigen::VectorXd q = p;
      q[i] += t;
      return e.at(q);
    };
    const double fd = (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
    const double err = std::abs(fd - target);
    if (err < best_err) {
      best_err = err;
      best = fd;
    }
  }
  return best;
}

struct AdFdSummary {
  int cases = 0;
  double max_relative_error = 0.0;
};

/// Compares Dual partials with central differences on `cases` random
/// (expression, point) pairs.
inline AdFdSummary ad_versus_fd(int cases, std::uint64_t seed) {
  const std::vector<std::string> names = {"x0", "x1", "x2", "x3"};
  RandomExprGenerator gen(names, seed);
  AdFdSummary summary;
  for (int c = 0; c < cases; ++c) {
    const Expr e = gen.next(4);
    const Eigen::VectorXd p = gen.point();
    const Dual d = e.at(statgeo::seed(p));
    for (int i = 0; i < p.size(); ++i) {
      const double fd = central_difference(e, p, i, d.partials[i]);
      const double rel = std::abs(d.partials[i] - fd) / std::max(1.0, std::abs(fd));
      summary.max_relative_error = std::max(summary.max_relative_error, rel);
    }
    ++summary.cases;
  }
  return summary;
}

}  // namespace statgeo::testing

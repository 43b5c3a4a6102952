#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace urnkit {

// One point of a discrete reinforcement distribution.
struct Atom {
  double value = 0.0;
  double prob = 0.0;
};

enum class FamilyKind { PointMass, CoinFlip, UniformInt, SymmetricGrid };

// A bounded reinforcement rule for a single color: a distribution on
// [0, support] for every time n >= 1, with first and second moments known in
// closed form. Time dependence enters only through declared parameter
// sequences with explicit limits, so all limit quantities are read off the
// declaration rather than estimated.
//
// Families:
//   point_mass(v)                      all mass at v
//   coin_flip(v, p_limit, p_start)     {0, v} with success probability
//                                      p(n) = p_limit + (p_start - p_limit)/n
//   uniform_int(lo, hi)                uniform on the integers lo..hi
//   symmetric_grid(scale, points, a)   atoms scale*i/(points-1), i = 0..points-1,
//                                      weights w_i proportional to
//                                      (t_i (1-t_i))^(a-1), t_i = (i+1)/(points+1);
//                                      a = 1 gives the uniform grid
class Family {
 public:
  static Family point_mass(double value);
  static Family coin_flip(double value, double p_limit, double p_start);
  static Family coin_flip(double value, double p) { return coin_flip(value, p, p); }
  static Family uniform_int(int lo, int hi);
  static Family symmetric_grid(double scale, int points, double shape);

  FamilyKind kind() const noexcept { return kind_; }

  // Maps one uniform u in (0,1) to a sample of the time-n distribution.
  double sample(std::int64_t n, double u) const;

  double mean(std::int64_t n) const;
  double second_moment(std::int64_t n) const;
  double mean_limit() const;
  double second_moment_limit() const;
  double max_support() const;

  // Full atom list of the time-n distribution, for exhaustive enumeration.
  std::vector<Atom> atoms(std::int64_t n) const;

  // Means of every supported family have the form a + b/n; exposing the
  // coefficients lets equal-mean validation cover all n exactly.
  void mean_coefficients(double& constant, double& harmonic) const;

  // Multiplies all support points (and moments accordingly) by c > 0.
  Family scaled(double c) const;

  std::string describe() const;

  // Parameter accessors for serialization.
  double param_value() const noexcept { return value_; }
  double param_p_limit() const noexcept { return p_limit_; }
  double param_p_start() const noexcept { return p_start_; }
  int param_lo() const noexcept { return lo_; }
  int param_hi() const noexcept { return hi_; }
  double param_scale() const noexcept { return scale_; }
  int param_points() const noexcept { return points_; }
  double param_shape() const noexcept { return shape_; }

 private:
  Family() = default;

  double coin_p(std::int64_t n) const;

  FamilyKind kind_ = FamilyKind::PointMass;
  double value_ = 0.0;               // point mass value / coin flip payoff
  double p_limit_ = 0.0;             // coin flip limiting success probability
  double p_start_ = 0.0;             // coin flip success probability at n = 1
  int lo_ = 0, hi_ = 0;              // uniform integer range
  double scale_ = 0.0;               // grid span
  int points_ = 0;                   // grid size
  double shape_ = 1.0;               // grid shape exponent
  std::vector<double> grid_values_;  // precomputed grid atoms
  std::vector<double> grid_cum_;     // cumulative grid weights, last = 1
  double grid_mean_ = 0.0;
  double grid_second_ = 0.0;
};

// Per-color reinforcement rules plus the uniform support bound.
class ReinforcementSchedule {
 public:
  ReinforcementSchedule() = default;

  // support_bound <= 0 means "derive from the families".
  ReinforcementSchedule(std::vector<Family> families, double support_bound = 0.0);

  int colors() const noexcept { return static_cast<int>(families_.size()); }
  double support_bound() const noexcept { return support_bound_; }
  const Family& family(int color) const { return families_.at(static_cast<std::size_t>(color)); }

  double sample(int color, std::int64_t n, double u) const {
    return families_[static_cast<std::size_t>(color)].sample(n, u);
  }
  double mean(int color, std::int64_t n) const {
    return families_[static_cast<std::size_t>(color)].mean(n);
  }
  double second_moment(int color, std::int64_t n) const {
    return families_[static_cast<std::size_t>(color)].second_moment(n);
  }
  double mean_limit(int color) const {
    return families_[static_cast<std::size_t>(color)].mean_limit();
  }
  double second_moment_limit(int color) const {
    return families_[static_cast<std::size_t>(color)].second_moment_limit();
  }

  ReinforcementSchedule scaled(double c) const;

 private:
  std::vector<Family> families_;
  double support_bound_ = 0.0;
};

}  // namespace urnkit

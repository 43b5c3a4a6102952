#include "urnkit/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "urnkit/errors.hpp"

namespace urnkit {

Family Family::point_mass(double value) {
  if (value < 0.0) raise(Errc::BadSupport, "point mass value must be >= 0");
  Family f;
  f.kind_ = FamilyKind::PointMass;
  f.value_ = value;
  return f;
}

Family Family::coin_flip(double value, double p_limit, double p_start) {
  if (value < 0.0) raise(Errc::BadSupport, "coin flip payoff must be >= 0");
  if (p_limit < 0.0 || p_limit > 1.0 || p_start < 0.0 || p_start > 1.0)
    raise(Errc::BadConfig, "coin flip probabilities must lie in [0,1]");
  Family f;
  f.kind_ = FamilyKind::CoinFlip;
  f.value_ = value;
  f.p_limit_ = p_limit;
  f.p_start_ = p_start;
  return f;
}

Family Family::uniform_int(int lo, int hi) {
  if (lo < 0 || hi < lo) raise(Errc::BadSupport, "uniform range needs 0 <= lo <= hi");
  Family f;
  f.kind_ = FamilyKind::UniformInt;
  f.lo_ = lo;
  f.hi_ = hi;
  return f;
}

Family Family::symmetric_grid(double scale, int points, double shape) {
  if (scale < 0.0) raise(Errc::BadSupport, "grid scale must be >= 0");
  if (points < 2) raise(Errc::BadConfig, "grid needs at least 2 points");
  if (shape <= 0.0) raise(Errc::BadConfig, "grid shape must be > 0");
  Family f;
  f.kind_ = FamilyKind::SymmetricGrid;
  f.scale_ = scale;
  f.points_ = points;
  f.shape_ = shape;

  const int count = points;
  std::vector<double> weights(static_cast<std::size_t>(count));
  double total = 0.0;
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i + 1) / static_cast<double>(count + 1);
    weights[static_cast<std::size_t>(i)] = std::pow(t * (1.0 - t), shape - 1.0);
    total += weights[static_cast<std::size_t>(i)];
  }
  f.grid_values_.resize(static_cast<std::size_t>(count));
  f.grid_cum_.resize(static_cast<std::size_t>(count));
  double cum = 0.0;
  double mean = 0.0;
  double second = 0.0;
  for (int i = 0; i < count; ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    const double x = scale * static_cast<double>(i) / static_cast<double>(count - 1);
    const double p = weights[k] / total;
    f.grid_values_[k] = x;
    cum += p;
    f.grid_cum_[k] = cum;
    mean += p * x;
    second += p * x * x;
  }
  f.grid_cum_.back() = 1.0;  // guard against rounding in the running sum
  f.grid_mean_ = mean;
  f.grid_second_ = second;
  return f;
}

double Family::coin_p(std::int64_t n) const {
  return p_limit_ + (p_start_ - p_limit_) / static_cast<double>(n);
}

double Family::sample(std::int64_t n, double u) const {
  switch (kind_) {
    case FamilyKind::PointMass:
      return value_;
    case FamilyKind::CoinFlip:
      return u <= coin_p(n) ? value_ : 0.0;
    case FamilyKind::UniformInt: {
      const int count = hi_ - lo_ + 1;
      int k = static_cast<int>(u * count);
      if (k >= count) k = count - 1;
      return static_cast<double>(lo_ + k);
    }
    case FamilyKind::SymmetricGrid: {
      const auto it = std::lower_bound(grid_cum_.begin(), grid_cum_.end(), u);
      const std::size_t k = static_cast<std::size_t>(it - grid_cum_.begin());
      return grid_values_[std::min(k, grid_values_.size() - 1)];
    }
  }
  return 0.0;
}

double Family::mean(std::int64_t n) const {
  switch (kind_) {
    case FamilyKind::PointMass:
      return value_;
    case FamilyKind::CoinFlip:
      return value_ * coin_p(n);
    case FamilyKind::UniformInt:
      return 0.5 * static_cast<double>(lo_ + hi_);
    case FamilyKind::SymmetricGrid:
      return grid_mean_;
  }
  return 0.0;
}

double Family::second_moment(std::int64_t n) const {
  switch (kind_) {
    case FamilyKind::PointMass:
      return value_ * value_;
    case FamilyKind::CoinFlip:
      return value_ * value_ * coin_p(n);
    case FamilyKind::UniformInt: {
      // Average of k^2 over lo..hi via the square-pyramidal sums.
      const auto sq = [](double v) { return v * (v + 1.0) * (2.0 * v + 1.0) / 6.0; };
      const double count = static_cast<double>(hi_ - lo_ + 1);
      return (sq(static_cast<double>(hi_)) - sq(static_cast<double>(lo_) - 1.0)) / count;
    }
    case FamilyKind::SymmetricGrid:
      return grid_second_;
  }
  return 0.0;
}

double Family::mean_limit() const {
  switch (kind_) {
    case FamilyKind::CoinFlip:
      return value_ * p_limit_;
    default:
      return mean(1);
  }
}

double Family::second_moment_limit() const {
  switch (kind_) {
    case FamilyKind::CoinFlip:
      return value_ * value_ * p_limit_;
    default:
      return second_moment(1);
  }
}

double Family::max_support() const {
  switch (kind_) {
    case FamilyKind::PointMass:
    case FamilyKind::CoinFlip:
      return value_;
    case FamilyKind::UniformInt:
      return static_cast<double>(hi_);
    case FamilyKind::SymmetricGrid:
      return scale_;
  }
  return 0.0;
}

std::vector<Atom> Family::atoms(std::int64_t n) const {
  switch (kind_) {
    case FamilyKind::PointMass:
      return {{value_, 1.0}};
    case FamilyKind::CoinFlip: {
      const double p = coin_p(n);
      return {{0.0, 1.0 - p}, {value_, p}};
    }
    case FamilyKind::UniformInt: {
      std::vector<Atom> out;
      const double p = 1.0 / static_cast<double>(hi_ - lo_ + 1);
      for (int k = lo_; k <= hi_; ++k) out.push_back({static_cast<double>(k), p});
      return out;
    }
    case FamilyKind::SymmetricGrid: {
      std::vector<Atom> out;
      double prev = 0.0;
      for (std::size_t k = 0; k < grid_values_.size(); ++k) {
        out.push_back({grid_values_[k], grid_cum_[k] - prev});
        prev = grid_cum_[k];
      }
      return out;
    }
  }
  return {};
}

void Family::mean_coefficients(double& constant, double& harmonic) const {
  constant = mean_limit();
  harmonic = kind_ == FamilyKind::CoinFlip ? value_ * (p_start_ - p_limit_) : 0.0;
}

Family Family::scaled(double c) const {
  switch (kind_) {
    case FamilyKind::PointMass:
      return point_mass(value_ * c);
    case FamilyKind::CoinFlip:
      return coin_flip(value_ * c, p_limit_, p_start_);
    case FamilyKind::UniformInt:
      raise(Errc::BadConfig, "uniform integer family does not support scaling");
    case FamilyKind::SymmetricGrid:
      return symmetric_grid(scale_ * c, points_, shape_);
  }
  raise(Errc::BadConfig, "unknown family kind");
}

std::string Family::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case FamilyKind::PointMass:
      os << "point(" << value_ << ")";
      break;
    case FamilyKind::CoinFlip:
      os << "coin(" << value_ << ", p->" << p_limit_;
      if (p_start_ != p_limit_) os << " from " << p_start_;
      os << ")";
      break;
    case FamilyKind::UniformInt:
      os << "uniform{" << lo_ << ".." << hi_ << "}";
      break;
    case FamilyKind::SymmetricGrid:
      os << "grid(scale=" << scale_ << ", points=" << points_ << ", shape=" << shape_ << ")";
      break;
  }
  return os.str();
}

ReinforcementSchedule::ReinforcementSchedule(std::vector<Family> families, double support_bound)
    : families_(std::move(families)), support_bound_(support_bound) {
  if (families_.empty()) raise(Errc::BadConfig, "schedule needs at least one color");
  double max_support = 0.0;
  for (const auto& f : families_) max_support = std::max(max_support, f.max_support());
  if (support_bound_ <= 0.0) {
    support_bound_ = max_support;
  } else if (max_support > support_bound_ * (1.0 + 1e-12)) {
    raise(Errc::BadSupport, "family support exceeds the declared bound");
  }
  if (support_bound_ <= 0.0)
    raise(Errc::BadSupport, "support bound must be positive");
}

ReinforcementSchedule ReinforcementSchedule::scaled(double c) const {
  std::vector<Family> scaled_families;
  scaled_families.reserve(families_.size());
  for (const auto& f : families_) scaled_families.push_back(f.scaled(c));
  return ReinforcementSchedule(std::move(scaled_families), support_bound_ * c);
}

}  // namespace urnkit

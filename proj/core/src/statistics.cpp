#include "urnkit/statistics.hpp"

#include <cmath>
#include <string>

#include "urnkit/errors.hpp"

namespace urnkit {

Proportions proportions(const UrnState& state, int nondominated) {
  if (state.n < 1) raise(Errc::BadConfig, "proportions need n >= 1");
  const int d = state.colors();
  const int d0 = nondominated;
  Proportions p;
  p.z.resize(static_cast<std::size_t>(d));
  p.m.resize(static_cast<std::size_t>(d));
  p.z_star.resize(static_cast<std::size_t>(d0));
  p.m_star.resize(static_cast<std::size_t>(d0));

  const double total = state.total_balls();
  const double leading = state.leading_balls(d0);
  std::int64_t leading_draws = 0;
  for (int j = 0; j < d0; ++j) leading_draws += state.draws[static_cast<std::size_t>(j)];

  for (int j = 0; j < d; ++j) {
    const std::size_t k = static_cast<std::size_t>(j);
    p.z[k] = state.balls[k] / total;
    p.m[k] = static_cast<double>(state.draws[k]) / static_cast<double>(state.n);
  }
  for (int j = 0; j < d0; ++j) {
    const std::size_t k = static_cast<std::size_t>(j);
    p.z_star[k] = state.balls[k] / leading;
    p.m_star[k] =
        static_cast<double>(state.draws[k]) / (1.0 + static_cast<double>(leading_draws));
  }
  return p;
}

CltStats clt_stats(const Snapshot& snapshot, const LimitProxy& proxy) {
  if (proxy.proxy_horizon <= snapshot.n)
    raise(Errc::ProxyMismatch, "proxy horizon " + std::to_string(proxy.proxy_horizon) +
                                   " not beyond n = " + std::to_string(snapshot.n));
  const int d0 = static_cast<int>(snapshot.z_star.size());
  const double root_n = std::sqrt(static_cast<double>(snapshot.n));
  CltStats out;
  out.c.resize(static_cast<std::size_t>(d0));
  out.c_star.resize(static_cast<std::size_t>(d0));
  out.d.resize(static_cast<std::size_t>(d0));
  out.d_star.resize(static_cast<std::size_t>(d0));
  for (int j = 0; j < d0; ++j) {
    const std::size_t k = static_cast<std::size_t>(j);
    out.c[k] = root_n * (snapshot.m[k] - snapshot.z[k]);
    out.c_star[k] = root_n * (snapshot.m_star[k] - snapshot.z_star[k]);
    out.d[k] = root_n * (snapshot.z[k] - proxy.zhat[k]);
    out.d_star[k] = root_n * (snapshot.z_star[k] - proxy.zhat[k]);
  }
  return out;
}

Snapshot make_snapshot(const UrnState& state, int nondominated) {
  Snapshot snap;
  snap.n = state.n;
  auto p = proportions(state, nondominated);
  snap.z = std::move(p.z);
  snap.z_star = std::move(p.z_star);
  snap.m = std::move(p.m);
  snap.m_star = std::move(p.m_star);

  const int d = state.colors();
  const double root_n = std::sqrt(static_cast<double>(state.n));
  snap.c.resize(static_cast<std::size_t>(nondominated));
  snap.c_star.resize(static_cast<std::size_t>(nondominated));
  for (int j = 0; j < nondominated; ++j) {
    const std::size_t k = static_cast<std::size_t>(j);
    snap.c[k] = root_n * (snap.m[k] - snap.z[k]);
    snap.c_star[k] = root_n * (snap.m_star[k] - snap.z_star[k]);
  }
  snap.dominated_mass = 0.0;
  for (int j = nondominated; j < d; ++j)
    snap.dominated_mass += snap.z[static_cast<std::size_t>(j)];
  return snap;
}

Snapshot make_snapshot(const UrnState& state, int nondominated, const LimitProxy& proxy) {
  Snapshot snap = make_snapshot(state, nondominated);
  auto stats = clt_stats(snap, proxy);
  snap.d = std::move(stats.d);
  snap.d_star = std::move(stats.d_star);
  snap.proxy_horizon = proxy.proxy_horizon;
  return snap;
}

std::vector<double> dominated_decay(std::span<const Snapshot> series, double lambda,
                                    const ValidatedConfig& config) {
  const double floor = config.lambda0 / config.mean_limit;
  if (!(lambda > floor) || lambda > 1.0)
    raise(Errc::LambdaOutOfRange, "lambda must lie in (lambda0/m, 1]");
  std::vector<double> out;
  out.reserve(series.size());
  for (const auto& snap : series) {
    if (config.nondominated() == config.colors()) {
      out.push_back(0.0);
    } else {
      out.push_back(std::pow(static_cast<double>(snap.n), 1.0 - lambda) * snap.dominated_mass);
    }
  }
  return out;
}

DivergenceSeries divergence_diag(std::span<const Snapshot> series, int color) {
  DivergenceSeries out;
  out.sqrt_n_dominated.reserve(series.size());
  out.star_gap.reserve(series.size());
  const std::size_t k = static_cast<std::size_t>(color);
  for (const auto& snap : series) {
    const double root_n = std::sqrt(static_cast<double>(snap.n));
    out.sqrt_n_dominated.push_back(root_n * snap.dominated_mass);
    out.star_gap.push_back(root_n * (snap.z_star[k] - snap.z[k]));
  }
  return out;
}

}  // namespace urnkit

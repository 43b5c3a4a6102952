#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "urnkit/urn.hpp"

namespace urnkit {

// Every derived statistic of one state at one checkpoint. The d- and
// d_star-vectors are filled only when a proxy for the color limits is
// attached, so reports can never mix statistics computed against different
// proxies without saying so (proxy_horizon travels along).
struct Snapshot {
  std::int64_t n = 0;
  std::vector<double> z;        // ball shares over all colors
  std::vector<double> z_star;   // ball shares over the non-dominated block
  std::vector<double> m;        // draw frequencies
  std::vector<double> m_star;   // draw frequencies over the non-dominated block
  std::vector<double> c;        // sqrt(n) * (m - z), non-dominated colors
  std::vector<double> c_star;   // sqrt(n) * (m_star - z_star)
  std::vector<double> d;        // sqrt(n) * (z - zhat); empty without proxy
  std::vector<double> d_star;   // sqrt(n) * (z_star - zhat); empty without proxy
  double dominated_mass = 0.0;  // total share of dominated colors
  std::int64_t proxy_horizon = 0;  // 0 while no proxy is attached

  bool has_proxy() const noexcept { return proxy_horizon > 0; }
};

struct Proportions {
  std::vector<double> z, z_star, m, m_star;
};

// The defining ratios, exactly. Requires n >= 1.
Proportions proportions(const UrnState& state, int nondominated);

struct CltStats {
  std::vector<double> c, c_star, d, d_star;
};

// All four CLT statistics of a snapshot against a proxy built from the same
// trajectory. ProxyMismatch when the proxy is not strictly deeper than n.
CltStats clt_stats(const Snapshot& snapshot, const LimitProxy& proxy);

Snapshot make_snapshot(const UrnState& state, int nondominated);
Snapshot make_snapshot(const UrnState& state, int nondominated, const LimitProxy& proxy);

// n^(1-lambda) * dominated mass per snapshot. lambda must exceed
// lambda0 / m and not exceed 1 (LambdaOutOfRange); lambda = 1 degenerates to
// the raw dominated mass. All-zero when nothing is dominated.
std::vector<double> dominated_decay(std::span<const Snapshot> series, double lambda,
                                    const ValidatedConfig& config);

struct DivergenceSeries {
  std::vector<double> sqrt_n_dominated;  // sqrt(n) * dominated mass
  std::vector<double> star_gap;          // d_star - d for the chosen color; proxy-free
};

// Growth diagnostics for the dominated block. star_gap is computed as
// sqrt(n) * (z_star - z), which the proxy cancels out of exactly.
DivergenceSeries divergence_diag(std::span<const Snapshot> series, int color);

}  // namespace urnkit

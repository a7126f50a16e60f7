#pragma once

// Eigenvalue-inversion filters f, g and the flag qutrit state
//   |h(lambda)> = sqrt(1 - f^2 - g^2)|nothing> + f|well> + g|ill>.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "hhl_lab/error.hpp"
#include "hhl_lab/linalg.hpp"
#include "hhl_lab/tolerances.hpp"

namespace hhl_lab {

struct FilterParams {
  double kappa_tilde = 1.0;
  // Multiplies the 1/(2 kappa_tilde lambda) branch of f. Always 1 outside
  // fault-injection tests.
  double inversion_scale = 1.0;

  FilterParams() = default;
  explicit FilterParams(double kt, double scale = 1.0) : kappa_tilde(kt), inversion_scale(scale) {
    if (!(kt >= 1.0) || !std::isfinite(kt)) {
      throw Error(ErrorKind::BadParameter, "kappa_tilde must be finite and >= 1");
    }
  }
};

enum class FlagLevel : int { nothing = 0, well = 1, ill = 2 };

struct FlagState {
  double nothing_amp = 1.0;
  double well_amp = 0.0;
  double ill_amp = 0.0;

  std::array<double, 3> as_array() const { return {nothing_amp, well_amp, ill_amp}; }

  double dot(const FlagState& o) const {
    return nothing_amp * o.nothing_amp + well_amp * o.well_amp + ill_amp * o.ill_amp;
  }
};

namespace detail {
inline void check_filter_domain(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorKind::DomainError, "filter argument " + std::to_string(lambda) + " outside [0, 1]");
  }
}
}  // namespace detail

inline double filter_f(double lambda, const FilterParams& p) {
  detail::check_filter_domain(lambda);
  const double kt = p.kappa_tilde;
  if (lambda >= 1.0 / kt) return p.inversion_scale / (2.0 * kt * lambda);
  if (lambda >= 0.5 / kt) return -0.5 * std::cos(std::numbers::pi * kt * lambda);
  return 0.0;
}

// g(0) = 1/2 extends the ill-conditioned branch continuously.
inline double filter_g(double lambda, const FilterParams& p) {
  detail::check_filter_domain(lambda);
  const double kt = p.kappa_tilde;
  if (lambda >= 1.0 / kt) return 0.0;
  if (lambda >= 0.5 / kt) return 0.5 * std::sin(std::numbers::pi * kt * lambda);
  return 0.5;
}

inline FlagState h_state(double lambda, const FilterParams& p) {
  const double f = filter_f(lambda, p);
  const double g = filter_g(lambda, p);
  return {std::sqrt(std::max(0.0, 1.0 - f * f - g * g)), f, g};
}

inline double flag_distance(const FlagState& a, const FlagState& b) {
  const double dn = a.nothing_amp - b.nothing_amp;
  const double dw = a.well_amp - b.well_amp;
  const double di = a.ill_amp - b.ill_amp;
  return std::sqrt(dn * dn + dw * dw + di * di);
}

/// Lipschitz constant c * kappa_tilde of lambda -> |h(lambda)>, with
/// c = sqrt((6 pi^2 + 1) / 12): the sum of the squared maximal slopes of the
/// three components.
inline double lipschitz_constant() {
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  return std::sqrt((6.0 * pi2 + 1.0) / 12.0);
}

inline double lipschitz_bound(const FilterParams& p) { return lipschitz_constant() * p.kappa_tilde; }

struct LipschitzReport {
  double max_ratio = 0.0;
  double bound = 0.0;
  bool ok = true;
  double worst_lambda1 = 0.0;
  double worst_lambda2 = 0.0;
  std::int64_t pairs = 0;
};

/// Scans |h(l1) - h(l2)| / |l1 - l2| over three pair families: uniform pairs
/// on [0, 1], close pairs (gap down to 1e-7) and pairs straddling the
/// breakpoints 1/(2 kappa_tilde) and 1/kappa_tilde.
inline LipschitzReport verify_lipschitz(const FilterParams& p, std::int64_t samples, std::uint64_t seed) {
  if (samples < 2) throw Error(ErrorKind::BadParameter, "verify_lipschitz needs at least 2 samples");
  Rng rng(seed);
  LipschitzReport rep;
  rep.bound = lipschitz_bound(p);

  auto consider = [&](double l1, double l2) {
    l1 = std::clamp(l1, 0.0, 1.0);
    l2 = std::clamp(l2, 0.0, 1.0);
    if (l1 == l2) return;
    const double ratio = flag_distance(h_state(l1, p), h_state(l2, p)) / std::abs(l1 - l2);
    ++rep.pairs;
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.worst_lambda1 = l1;
      rep.worst_lambda2 = l2;
    }
  };
  auto log_uniform_gap = [&] { return std::pow(10.0, rng.uniform(-7.0, -1.0)); };

  const double breakpoints[2] = {0.5 / p.kappa_tilde, 1.0 / p.kappa_tilde};
  for (std::int64_t i = 0; i < samples; ++i) {
    switch (i % 3) {
      case 0:
        consider(rng.uniform(), rng.uniform());
        break;
      case 1: {
        const double l = rng.uniform();
        consider(l, l + log_uniform_gap());
        break;
      }
      default: {
        const double b = breakpoints[(i / 3) % 2];
        const double gap = log_uniform_gap();
        const double split = rng.uniform();
        consider(b - split * gap, b + (1.0 - split) * gap);
        break;
      }
    }
  }
  rep.ok = rep.max_ratio <= rep.bound * (1.0 + 1e-9);
  return rep;
}

struct FilterDifferenceReport {
  double lhs = 0.0;
  double rhs_scale = 0.0;
  double ratio = 0.0;
  bool degenerate = false;
};

/// Compares (f(l_k) - f(l_j))^2 + (g(l_k) - g(l_j))^2 against
/// (kappa_tilde^2 / t0^2) delta^2 (f_j^2 + g_j^2) with delta = t0 (l_j - l_k).
/// Identical inputs give lhs = 0 and are flagged degenerate with ratio 0.
inline FilterDifferenceReport filter_difference_bound_check(double lambda_j, double lambda_k,
                                                            const FilterParams& p, double t0) {
  if (!(t0 > 0.0)) throw Error(ErrorKind::BadParameter, "t0 must be positive");
  const double fj = filter_f(lambda_j, p);
  const double gj = filter_g(lambda_j, p);
  const double fk = filter_f(lambda_k, p);
  const double gk = filter_g(lambda_k, p);
  FilterDifferenceReport rep;
  rep.lhs = (fk - fj) * (fk - fj) + (gk - gj) * (gk - gj);
  const double delta = t0 * (lambda_j - lambda_k);
  rep.rhs_scale = (p.kappa_tilde * p.kappa_tilde / (t0 * t0)) * delta * delta * (fj * fj + gj * gj);
  if (lambda_j == lambda_k || rep.rhs_scale == 0.0) {
    rep.degenerate = true;
    rep.ratio = 0.0;
  } else {
    rep.ratio = rep.lhs / rep.rhs_scale;
  }
  return rep;
}

/// Largest filter-difference ratio over a grid x grid lattice on
/// [1/(4 kappa_tilde), 1]^2.
inline double filter_difference_grid_max(const FilterParams& p, int grid, double t0) {
  if (grid < 2) throw Error(ErrorKind::BadParameter, "grid must be >= 2");
  const double lo = 0.25 / p.kappa_tilde;
  double worst = 0.0;
  for (int a = 0; a < grid; ++a) {
    const double lj = lo + (1.0 - lo) * a / (grid - 1);
    for (int b = 0; b < grid; ++b) {
      const double lk = lo + (1.0 - lo) * b / (grid - 1);
      worst = std::max(worst, filter_difference_bound_check(lj, lk, p, t0).ratio);
    }
  }
  return worst;
}

using FlagRotation = std::array<std::array<double, 3>, 3>;  // [row][col]

/// Real orthogonal 3x3 matrix whose first column is h; the remaining columns
/// come from Gram-Schmidt on |well>, |ill>, |nothing> in that order.
inline FlagRotation flag_rotation_matrix(const FlagState& h) {
  std::array<std::array<double, 3>, 3> cols{};
  cols[0] = h.as_array();
  const std::array<std::array<double, 3>, 3> seeds = {{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}};
  int filled = 1;
  for (const auto& seed : seeds) {
    if (filled == 3) break;
    auto v = seed;
    for (int pass = 0; pass < 2; ++pass) {
      for (int c = 0; c < filled; ++c) {
        const double proj = v[0] * cols[c][0] + v[1] * cols[c][1] + v[2] * cols[c][2];
        for (int r = 0; r < 3; ++r) v[r] -= proj * cols[c][r];
      }
    }
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (n < 1e-6) continue;
    for (auto& x : v) x /= n;
    cols[filled++] = v;
  }
  FlagRotation m{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m[r][c] = cols[c][r];
  return m;
}

}  // namespace hhl_lab

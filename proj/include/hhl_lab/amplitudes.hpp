#pragma once

// Phase-estimation amplitudes alpha_{k|j} for the sine-state clock:
//   alpha_{k|j} = (sqrt2/T) sum_tau sin(pi(tau+1/2)/T) exp(i tau delta / T),
//   delta = lambda_j t0 - 2 pi k,
// by direct summation and in closed form, plus the hyperparameter rules and
// the tail estimates built on them.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hhl_lab/error.hpp"
#include "hhl_lab/filters.hpp"
#include "hhl_lab/linalg.hpp"
#include "hhl_lab/tolerances.hpp"

namespace hhl_lab {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct HHLConfig {
  int n = 1;           // qubits in the input register
  int n_t = 0;         // clock qubits; 0 when T is not a power of two
  std::int64_t T = 2;  // clock dimension
  double gamma = 0.5;
  double t0 = 0.0;
  double kappa = 1.0;
  double kappa_tilde = 1.0;
  std::int64_t K = 0;  // largest clock value that receives a filter rotation

  std::size_t dim() const noexcept { return std::size_t{1} << n; }
  bool power_of_two() const noexcept { return n_t > 0 && T == (std::int64_t{1} << n_t); }
  FilterParams filter() const { return FilterParams(kappa_tilde); }
};

namespace detail {

inline void check_clock_condition(std::int64_t T, double gamma, double kappa) {
  const double needed = kappa / gamma + 1.0;
  if (static_cast<double>(T) < needed * (1.0 - Tolerances::condition_slack)) {
    throw Error(ErrorKind::InsufficientClockRegister,
                "T = " + std::to_string(T) + " < kappa/gamma + 1 = " + std::to_string(needed));
  }
}

inline HHLConfig finish_config(HHLConfig cfg) {
  cfg.t0 = cfg.gamma * kTwoPi * static_cast<double>(cfg.T);
  const double ratio = cfg.t0 / kTwoPi;
  cfg.K = static_cast<std::int64_t>(std::floor(ratio + 1e-9 * std::max(1.0, ratio)));
  cfg.K = std::min(cfg.K, cfg.T - 1);
  return cfg;
}

}  // namespace detail

/// Circuit configuration: T = 2^n_t, gamma in (0, 1/2], t0 = gamma 2 pi T.
inline HHLConfig make_config(int n, int n_t, double gamma, double kappa, double kappa_tilde) {
  if (n < 1 || n > 5) throw Error(ErrorKind::BadParameter, "n must be in [1, 5]");
  if (n_t < 1 || n_t > 20) throw Error(ErrorKind::BadParameter, "n_t must be in [1, 20]");
  if (!(gamma > 0.0 && gamma <= 0.5)) throw Error(ErrorKind::BadParameter, "gamma must be in (0, 1/2]");
  if (!(kappa >= 1.0)) throw Error(ErrorKind::BadParameter, "kappa must be >= 1");
  if (!(kappa_tilde >= 1.0)) throw Error(ErrorKind::BadParameter, "kappa_tilde must be >= 1");
  HHLConfig cfg;
  cfg.n = n;
  cfg.n_t = n_t;
  cfg.T = std::int64_t{1} << n_t;
  cfg.gamma = gamma;
  cfg.kappa = kappa;
  cfg.kappa_tilde = kappa_tilde;
  detail::check_clock_condition(cfg.T, gamma, kappa);
  return detail::finish_config(cfg);
}

/// Analytic configuration with an arbitrary integer T and gamma in (0, 1]
/// (gamma = 1 is the t0 = 2 pi T boundary case). Not usable for circuits
/// unless T happens to be a power of two.
inline HHLConfig make_analytic_config(std::int64_t T, double gamma, double kappa, double kappa_tilde) {
  if (T < 2) throw Error(ErrorKind::BadParameter, "T must be >= 2");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw Error(ErrorKind::BadParameter, "gamma must be in (0, 1]");
  if (!(kappa >= 1.0)) throw Error(ErrorKind::BadParameter, "kappa must be >= 1");
  if (!(kappa_tilde >= 1.0)) throw Error(ErrorKind::BadParameter, "kappa_tilde must be >= 1");
  HHLConfig cfg;
  cfg.T = T;
  cfg.n_t = std::has_single_bit(static_cast<std::uint64_t>(T)) ? std::countr_zero(static_cast<std::uint64_t>(T)) : 0;
  cfg.gamma = gamma;
  cfg.kappa = kappa;
  cfg.kappa_tilde = kappa_tilde;
  detail::check_clock_condition(T, gamma, kappa);
  return detail::finish_config(cfg);
}

inline std::int64_t next_power_of_two(double x) {
  std::int64_t t = 1;
  while (static_cast<double>(t) < x) t <<= 1;
  return t;
}

inline double approx_eigenvalue(std::int64_t k, double t0) { return kTwoPi * static_cast<double>(k) / t0; }

inline double delta_of(double lambda, std::int64_t k, double t0) {
  return lambda * t0 - kTwoPi * static_cast<double>(k);
}

/// delta as drawn against the clock axis. Clock values k <= K are read by the
/// flag rotation as the estimate 2 pi k / t0 and keep lambda t0 - 2 pi k.
/// Values above K carry no estimate and are folded to their representative
/// in (-pi T, pi T]. With t0 = 2 pi T every value is an estimate and nothing
/// is folded.
inline double folded_delta(double lambda, std::int64_t k, const HHLConfig& cfg) {
  const double d = delta_of(lambda, k, cfg.t0);
  if (k <= cfg.K) return d;
  const double t = static_cast<double>(cfg.T);
  double r = std::remainder(d, kTwoPi * t);
  if (r <= -kPi * t) r += kTwoPi * t;
  return r;
}

/// Clock amplitude after sine-state preparation, sqrt(2/T) sin(pi(tau+1/2)/T).
inline double sine_state_amplitude(std::int64_t tau, std::int64_t T) {
  const double t = static_cast<double>(T);
  return std::sqrt(2.0 / t) * std::sin(kPi * (static_cast<double>(tau) + 0.5) / t);
}

inline Complex alpha_direct(double lambda, std::int64_t k, const HHLConfig& cfg) {
  const double t = static_cast<double>(cfg.T);
  const double omega = (lambda - kTwoPi * static_cast<double>(k) / cfg.t0) * (cfg.t0 / t);
  Complex acc{0.0, 0.0};
  for (std::int64_t tau = 0; tau < cfg.T; ++tau) {
    const double tt = static_cast<double>(tau);
    acc += std::sin(kPi * (tt + 0.5) / t) * std::polar(1.0, omega * tt);
  }
  return acc * (std::numbers::sqrt2 / t);
}

namespace detail {

// sin(x/2) / sin(x/(2T)) with a fourth-order series for small x.
inline double sine_ratio(double x, double t) {
  const double a = 0.5;
  const double b = 0.5 / t;
  if (std::abs(std::sin(b * x)) < Tolerances::removable_singularity) {
    const double x2 = x * x;
    const double a2 = a * a;
    const double b2 = b * b;
    return (a / b) * (1.0 + (b2 - a2) * x2 / 6.0 +
                      (a2 * a2 / 120.0 - a2 * b2 / 36.0 + 7.0 * b2 * b2 / 360.0) * x2 * x2);
  }
  return std::sin(a * x) / std::sin(b * x);
}

}  // namespace detail

/// Closed form
///   -(sqrt2/T) e^{i(delta/2)(1-1/T)} sin(pi/2T) cos(delta/2T) cos(delta/2)
///        / (sin((delta+pi)/2T) sin((delta-pi)/2T)).
/// alpha is exactly 2 pi T periodic, so delta is first reduced to
/// (-pi T, pi T]. The factor cos(delta/2) is rewritten as -sin((delta-pi)/2)
/// or sin((delta+pi)/2) so that numerator and denominator share the same
/// floating-point zero at delta = +-pi.
inline Complex alpha_closed(double delta, std::int64_t T) {
  if (T < 2) throw Error(ErrorKind::BadParameter, "alpha_closed needs T >= 2");
  const double t = static_cast<double>(T);
  const double period = kTwoPi * t;
  double r = std::remainder(delta, period);
  if (r <= -kPi * t) r += period;

  const double u = r - kPi;
  const double v = r + kPi;
  double core;
  if (r >= 0.0) {
    core = -detail::sine_ratio(u, t) / std::sin(v / (2.0 * t));
  } else {
    core = detail::sine_ratio(v, t) / std::sin(u / (2.0 * t));
  }
  const double magnitude_part =
      -(std::numbers::sqrt2 / t) * std::sin(kPi / (2.0 * t)) * std::cos(r / (2.0 * t)) * core;
  return std::polar(1.0, 0.5 * r * (1.0 - 1.0 / t)) * magnitude_part;
}

/// 8 pi / delta^2 where |delta| > 2 pi, +inf elsewhere.
inline double alpha_tail_bound(double delta) {
  if (std::abs(delta) <= kTwoPi) return std::numeric_limits<double>::infinity();
  return 8.0 * kPi / (delta * delta);
}

// ---------------------------------------------------------------------------
// Tables

struct AmplitudeRow {
  std::size_t j = 0;
  std::int64_t k = 0;
  double delta = 0.0;
  Complex alpha{};
  double alpha_abs = 0.0;
  double bound = 0.0;
};

struct AmplitudeTable {
  std::vector<double> eigenvalues;
  std::vector<AmplitudeRow> rows;  // j-major, k ascending
};

inline AmplitudeTable build_amplitude_table(std::span<const double> eigenvalues, const HHLConfig& cfg) {
  AmplitudeTable table;
  table.eigenvalues.assign(eigenvalues.begin(), eigenvalues.end());
  table.rows.reserve(eigenvalues.size() * static_cast<std::size_t>(cfg.T));
  for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
    for (std::int64_t k = 0; k < cfg.T; ++k) {
      AmplitudeRow row;
      row.j = j;
      row.k = k;
      row.delta = folded_delta(eigenvalues[j], k, cfg);
      row.alpha = alpha_direct(eigenvalues[j], k, cfg);
      row.alpha_abs = std::abs(row.alpha);
      row.bound = alpha_tail_bound(row.delta);
      table.rows.push_back(row);
    }
  }
  return table;
}

enum class LambdaChoice { small, moderate, large };

inline std::string_view to_string(LambdaChoice c) {
  switch (c) {
    case LambdaChoice::small: return "small";
    case LambdaChoice::moderate: return "moderate";
    case LambdaChoice::large: return "large";
  }
  return "unknown";
}

inline double figure_lambda(LambdaChoice c, const HHLConfig& cfg) {
  const double t = static_cast<double>(cfg.T);
  switch (c) {
    case LambdaChoice::small: return (t - 1.0) / (t * cfg.kappa);
    case LambdaChoice::moderate: return (t - 1.0) / (2.0 * t);
    case LambdaChoice::large: return (t - 1.0) / t;
  }
  return 0.0;
}

inline AmplitudeTable figure_sweep(const HHLConfig& cfg, LambdaChoice choice) {
  const double lambda = figure_lambda(choice, cfg);
  return build_amplitude_table(std::span<const double>(&lambda, 1), cfg);
}

// ---------------------------------------------------------------------------
// Tail bound |alpha| < 8 pi / delta^2

struct TailViolation {
  double delta = 0.0;
  double alpha_abs = 0.0;
  double bound = 0.0;
  double lambda = std::numeric_limits<double>::quiet_NaN();  // NaN for continuous-grid points
  std::int64_t k = -1;
};

struct AlphaTailReport {
  double worst_margin = std::numeric_limits<double>::infinity();
  bool ok = true;
  std::vector<TailViolation> violations;
  std::int64_t points = 0;
};

/// Checks |alpha| < 8 pi / delta^2 on a uniform grid of `grid` points over
/// (2 pi, pi T] (both signs) and on every lattice point delta_{k|j} with
/// |delta| > 2 pi for the given eigenvalues, with delta folded as in the
/// amplitude tables.
inline AlphaTailReport verify_alpha_tail_bound(const HHLConfig& cfg, int grid, std::span<const double> eigenvalues) {
  if (grid < 100) throw Error(ErrorKind::BadParameter, "grid must be >= 100");
  AlphaTailReport rep;
  auto check = [&](double delta, double lambda, std::int64_t k) {
    const double a = std::abs(alpha_closed(delta, cfg.T));
    const double b = alpha_tail_bound(delta);
    ++rep.points;
    rep.worst_margin = std::min(rep.worst_margin, b - a);
    if (!(a < b)) rep.violations.push_back({delta, a, b, lambda, k});
  };
  const double lo = kTwoPi;
  const double hi = kPi * static_cast<double>(cfg.T);
  if (hi > lo) {
    for (int i = 0; i < grid; ++i) {
      const double d = lo + (hi - lo) * static_cast<double>(i + 1) / grid;
      check(d, std::numeric_limits<double>::quiet_NaN(), -1);
      check(-d, std::numeric_limits<double>::quiet_NaN(), -1);
    }
  }
  for (double lambda : eigenvalues) {
    for (std::int64_t k = 0; k < cfg.T; ++k) {
      const double d = folded_delta(lambda, k, cfg);
      if (std::abs(d) > kTwoPi) check(d, lambda, k);
    }
  }
  rep.ok = rep.violations.empty();
  return rep;
}

inline AlphaTailReport verify_alpha_tail_bound(const HHLConfig& cfg, int grid) {
  const double lambdas[3] = {figure_lambda(LambdaChoice::small, cfg), figure_lambda(LambdaChoice::moderate, cfg),
                             figure_lambda(LambdaChoice::large, cfg)};
  return verify_alpha_tail_bound(cfg, grid, lambdas);
}

// ---------------------------------------------------------------------------
// Sixth-order polynomial step behind the 8 pi / delta^2 bound, a = delta/(pi T)

inline double tail_polynomial(double a) {
  constexpr double pi2 = kPi * kPi;
  const double a2 = a * a;
  return -(pi2 * pi2 / 384.0) * a2 * a2 * a2 + (0.125 - std::numbers::sqrt2 / 12.0) * pi2 * a2 * a2 +
         (std::numbers::sqrt2 - 1.0) * a2;
}

enum class PolynomialForm {
  // sqrt2 / T <= P(a), as it is usually stated.
  as_printed,
  // sqrt2 / T^2 - sqrt2 pi^2 / (12 T^4) <= P(a): what clearing the
  // denominators of the ratio <= sqrt2 step actually yields.
  exact,
};

inline double polynomial_lhs(std::int64_t T, PolynomialForm form) {
  const double t = static_cast<double>(T);
  if (form == PolynomialForm::as_printed) return std::numbers::sqrt2 / t;
  return std::numbers::sqrt2 / (t * t) - std::numbers::sqrt2 * kPi * kPi / (12.0 * t * t * t * t);
}

struct PolynomialReport {
  std::int64_t T = 0;
  int grid = 0;
  PolynomialForm form = PolynomialForm::as_printed;
  bool ok = true;
  double worst_slack = std::numeric_limits<double>::infinity();  // min P(a) - lhs
  double worst_a = 0.0;
  std::int64_t violations = 0;
  // First (smallest a) and last counterexample when violations > 0.
  double first_violation_a = std::numeric_limits<double>::quiet_NaN();
  double last_violation_a = std::numeric_limits<double>::quiet_NaN();
  double lhs = 0.0;
};

/// Scans a in [2/T, 1] on `grid` evenly spaced points, endpoints included.
inline PolynomialReport verify_polynomial_inequality(std::int64_t T, int grid,
                                                     PolynomialForm form = PolynomialForm::as_printed) {
  if (T < 4) throw Error(ErrorKind::BadParameter, "polynomial check needs T >= 4");
  if (grid < 2) throw Error(ErrorKind::BadParameter, "grid must be >= 2");
  PolynomialReport rep;
  rep.T = T;
  rep.grid = grid;
  rep.form = form;
  rep.lhs = polynomial_lhs(T, form);
  const double lo = 2.0 / static_cast<double>(T);
  for (int i = 0; i < grid; ++i) {
    const double a = lo + (1.0 - lo) * static_cast<double>(i) / (grid - 1);
    const double slack = tail_polynomial(a) - rep.lhs;
    if (slack < rep.worst_slack) {
      rep.worst_slack = slack;
      rep.worst_a = a;
    }
    if (slack < 0.0) {
      if (rep.violations == 0) rep.first_violation_a = a;
      rep.last_violation_a = a;
      ++rep.violations;
    }
  }
  rep.ok = rep.violations == 0;
  return rep;
}

/// The rational factor that the polynomial step bounds by sqrt2,
///   (1 - d^2/8T^2 + d^4/384T^4) / (1 - pi^2/d^2 - d^2/12T^2 + pi^4/(12 d^2 T^2)),
/// evaluated directly. Returns max over delta in [2 pi, pi T].
inline double max_tail_ratio(std::int64_t T, int grid) {
  const double t = static_cast<double>(T);
  const double t2 = t * t;
  const double pi2 = kPi * kPi;
  double worst = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double d = kTwoPi + (kPi * t - kTwoPi) * static_cast<double>(i) / (grid - 1);
    const double d2 = d * d;
    const double num = 1.0 - d2 / (8.0 * t2) + d2 * d2 / (384.0 * t2 * t2);
    const double den = 1.0 - pi2 / d2 - d2 / (12.0 * t2) + pi2 * pi2 / (12.0 * d2 * t2);
    worst = std::max(worst, num / den);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Tail sums of 1/delta^2

inline constexpr double kTailSumOneSidedBound = 1.0 / 24.0;  // (1/4pi^2) * pi^2/6
inline constexpr double kTailSumTwoSidedBound = 1.0 / 12.0;  // both sides of the peak

/// Sum of 1/delta_{k|j}^2 over every k in [0, T) with |delta| > 2 pi.
inline double tail_sum(double lambda, const HHLConfig& cfg) {
  double acc = 0.0;
  for (std::int64_t k = 0; k < cfg.T; ++k) {
    const double d = delta_of(lambda, k, cfg.t0);
    if (std::abs(d) > kTwoPi) acc += 1.0 / (d * d);
  }
  return acc;
}

/// Same sum restricted to clock values above the peak (delta < -2 pi).
/// This one-sided sum is the part bounded by 1/24 via the Basel series.
inline double tail_sum_above(double lambda, const HHLConfig& cfg) {
  double acc = 0.0;
  for (std::int64_t k = 0; k < cfg.T; ++k) {
    const double d = delta_of(lambda, k, cfg.t0);
    if (d < -kTwoPi) acc += 1.0 / (d * d);
  }
  return acc;
}

struct TailSumScan {
  double max_two_sided = 0.0;
  double argmax_two_sided = 0.0;
  double max_above = 0.0;
  double argmax_above = 0.0;
};

inline TailSumScan scan_tail_sums(std::span<const double> lambdas, const HHLConfig& cfg) {
  TailSumScan out;
  for (double l : lambdas) {
    const double two = tail_sum(l, cfg);
    const double up = tail_sum_above(l, cfg);
    if (two > out.max_two_sided) {
      out.max_two_sided = two;
      out.argmax_two_sided = l;
    }
    if (up > out.max_above) {
      out.max_above = up;
      out.argmax_above = l;
    }
  }
  return out;
}

/// Evenly spaced eigenvalues across the admissible window, endpoints included.
inline std::vector<double> window_grid(const HHLConfig& cfg, int points) {
  const auto w = spectrum_window(cfg.kappa, cfg.T);
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = w.lo + (w.hi - w.lo) * i / (points - 1);
  return out;
}

}  // namespace hhl_lab

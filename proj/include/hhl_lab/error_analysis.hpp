#pragma once

// Practical-vs-ideal error quantities: inner products by statevector and by
// closed form, the near/far split of the full-state overlap, expectation
// operators under |beta_j|^2 |alpha_{k|j}|^2, and the three error claims.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hhl_lab/amplitudes.hpp"
#include "hhl_lab/circuit.hpp"
#include "hhl_lab/error.hpp"
#include "hhl_lab/filters.hpp"
#include "hhl_lab/linalg.hpp"
#include "hhl_lab/tolerances.hpp"

namespace hhl_lab {

/// sqrt(20/3) pi c, the constant in err_full <= C kappa / t0.
inline double full_error_constant() { return std::sqrt(20.0 / 3.0) * kPi * lipschitz_constant(); }

inline double full_error_bound(double kappa, double t0) { return full_error_constant() * kappa / t0; }

/// Flag state written into clock sector k: h(min(2 pi k / t0, 1)) for k <= K,
/// |nothing> above K.
inline FlagState approx_flag_state(std::int64_t k, const FilterParams& p, const HHLConfig& cfg) {
  if (k > cfg.K) return {};
  return h_state(std::min(1.0, approx_eigenvalue(k, cfg.t0)), p);
}

/// Clock values with |delta_{k|j}| <= 2 pi.
inline std::vector<std::int64_t> near_clock_values(double lambda, const HHLConfig& cfg) {
  std::vector<std::int64_t> out;
  for (std::int64_t k = 0; k < cfg.T; ++k)
    if (std::abs(delta_of(lambda, k, cfg.t0)) <= kTwoPi) out.push_back(k);
  return out;
}

class ExpectationContext {
 public:
  ExpectationContext(std::span<const double> eigenvalues, std::span<const Complex> beta, const HHLConfig& cfg)
      : eigenvalues_(eigenvalues.begin(), eigenvalues.end()), cfg_(cfg) {
    if (eigenvalues.size() != beta.size()) throw Error(ErrorKind::DimensionMismatch, "beta and spectrum sizes differ");
    if (!is_normalized(beta)) throw Error(ErrorKind::NotNormalized, "beta must be a unit vector");
    const auto t = static_cast<std::size_t>(cfg.T);
    beta_sq_.resize(beta.size());
    alpha_sq_.assign(beta.size(), std::vector<double>(t));
    for (std::size_t j = 0; j < beta.size(); ++j) {
      beta_sq_[j] = std::norm(beta[j]);
      for (std::size_t k = 0; k < t; ++k) {
        alpha_sq_[j][k] = std::norm(alpha_closed(delta_of(eigenvalues_[j], static_cast<std::int64_t>(k), cfg.t0), cfg.T));
      }
    }
  }

  std::size_t size() const noexcept { return beta_sq_.size(); }
  const HHLConfig& config() const noexcept { return cfg_; }
  double eigenvalue(std::size_t j) const { return eigenvalues_[j]; }
  double beta_sq(std::size_t j) const { return beta_sq_[j]; }
  double alpha_sq(std::size_t k, std::size_t j) const { return alpha_sq_[j][k]; }
  double delta(std::size_t k, std::size_t j) const {
    return delta_of(eigenvalues_[j], static_cast<std::int64_t>(k), cfg_.t0);
  }

 private:
  std::vector<double> eigenvalues_;
  HHLConfig cfg_;
  std::vector<double> beta_sq_;
  std::vector<std::vector<double>> alpha_sq_;  // [j][k]
};

/// E(X_j) = sum_j |beta_j|^2 X_j.
inline double expectation_j(const ExpectationContext& ctx, const std::function<double(std::size_t)>& x) {
  double acc = 0.0;
  for (std::size_t j = 0; j < ctx.size(); ++j)
    if (ctx.beta_sq(j) != 0.0) acc += ctx.beta_sq(j) * x(j);
  return acc;
}

/// E(X_{k,j}) = sum_j |beta_j|^2 sum_k |alpha_{k|j}|^2 X_{k,j}.
inline double expectation_kj(const ExpectationContext& ctx,
                             const std::function<double(std::size_t, std::size_t)>& x) {
  double acc = 0.0;
  const auto t = static_cast<std::size_t>(ctx.config().T);
  for (std::size_t j = 0; j < ctx.size(); ++j) {
    if (ctx.beta_sq(j) == 0.0) continue;
    double inner_acc = 0.0;
    for (std::size_t k = 0; k < t; ++k) {
      const double w = ctx.alpha_sq(k, j);
      if (w != 0.0) inner_acc += w * x(k, j);
    }
    acc += ctx.beta_sq(j) * inner_acc;
  }
  return acc;
}

/// Per-sector flag states h(lambda~_k) and h(lambda_j), cached for one run.
struct FlagTables {
  std::vector<FlagState> approx;  // index k
  std::vector<FlagState> exact;   // index j

  FlagTables(const ExpectationContext& ctx, const FilterParams& p) {
    const auto& cfg = ctx.config();
    approx.resize(static_cast<std::size_t>(cfg.T));
    for (std::int64_t k = 0; k < cfg.T; ++k) approx[static_cast<std::size_t>(k)] = approx_flag_state(k, p, cfg);
    exact.resize(ctx.size());
    for (std::size_t j = 0; j < ctx.size(); ++j) exact[j] = h_state(ctx.eigenvalue(j), p);
  }
};

/// Closed form sum |beta_j|^2 |alpha_{k|j}|^2 <h(lambda~_k)|h(lambda_j)>.
inline double analytic_inner_full(const ExpectationContext& ctx, const FlagTables& h) {
  return expectation_kj(ctx, [&](std::size_t k, std::size_t j) { return h.approx[k].dot(h.exact[j]); });
}

/// p = E(f~^2 + g~^2).
inline double analytic_p(const ExpectationContext& ctx, const FlagTables& h) {
  return expectation_kj(ctx, [&](std::size_t k, std::size_t) {
    return h.approx[k].well_amp * h.approx[k].well_amp + h.approx[k].ill_amp * h.approx[k].ill_amp;
  });
}

/// p_bar = E(f^2 + g^2).
inline double analytic_p_bar(const ExpectationContext& ctx, const FlagTables& h) {
  return expectation_j(ctx, [&](std::size_t j) {
    return h.exact[j].well_amp * h.exact[j].well_amp + h.exact[j].ill_amp * h.exact[j].ill_amp;
  });
}

/// <x|x_bar> after the first post-selection: E(f~ f + g~ g) / sqrt(p p_bar).
inline double analytic_inner_ps1(const ExpectationContext& ctx, const FlagTables& h) {
  const double num = expectation_kj(ctx, [&](std::size_t k, std::size_t j) {
    return h.approx[k].well_amp * h.exact[j].well_amp + h.approx[k].ill_amp * h.exact[j].ill_amp;
  });
  return num / std::sqrt(analytic_p(ctx, h) * analytic_p_bar(ctx, h));
}

/// <x|x_bar> after both post-selections: E(f~ f) / sqrt(E(f~^2) E(f^2)).
inline double analytic_inner_ps2(const ExpectationContext& ctx, const FlagTables& h) {
  const double num =
      expectation_kj(ctx, [&](std::size_t k, std::size_t j) { return h.approx[k].well_amp * h.exact[j].well_amp; });
  const double pw =
      expectation_kj(ctx, [&](std::size_t k, std::size_t) { return h.approx[k].well_amp * h.approx[k].well_amp; });
  const double pw_bar = expectation_j(ctx, [&](std::size_t j) { return h.exact[j].well_amp * h.exact[j].well_amp; });
  return num / std::sqrt(pw * pw_bar);
}

struct InnerProductCheck {
  Complex simulated;
  double analytic = 0.0;
  double discrepancy = 0.0;
};

inline InnerProductCheck compare_routes(Complex simulated, double analytic, const std::string& what) {
  InnerProductCheck out{simulated, analytic, std::abs(simulated - Complex{analytic, 0.0})};
  if (!(out.discrepancy <= Tolerances::formula_agreement)) {
    throw Error(ErrorKind::FormulaMismatch, what + ": statevector and closed form differ by " +
                                                std::to_string(out.discrepancy));
  }
  return out;
}

/// <Phi_f|Phi_bar_f> from both statevectors, cross-checked against the closed form.
inline InnerProductCheck inner_product_final(const CircuitState& phi_f, const CircuitState& phi_bar,
                                             const ExpectationContext& ctx, const FilterParams& p) {
  const FlagTables h(ctx, p);
  return compare_routes(inner(phi_f, phi_bar), analytic_inner_full(ctx, h), "<Phi_f|Phi_bar_f>");
}

struct TermDecomposition {
  double term1 = 0.0;        // pairs with |delta| <= 2 pi
  double term2 = 0.0;        // the rest
  double near_weight = 0.0;  // sum over the same pairs of |beta|^2 |alpha|^2
  double term1_lower = 0.0;  // near_weight - 2 pi^2 c^2 kappa^2 / t0^2
};

inline TermDecomposition term_decomposition(const ExpectationContext& ctx, const FilterParams& p) {
  const FlagTables h(ctx, p);
  const auto& cfg = ctx.config();
  auto near = [&](std::size_t k, std::size_t j) { return std::abs(ctx.delta(k, j)) <= kTwoPi; };
  TermDecomposition out;
  out.term1 = expectation_kj(ctx, [&](std::size_t k, std::size_t j) { return near(k, j) ? h.approx[k].dot(h.exact[j]) : 0.0; });
  out.term2 = expectation_kj(ctx, [&](std::size_t k, std::size_t j) { return near(k, j) ? 0.0 : h.approx[k].dot(h.exact[j]); });
  out.near_weight = expectation_kj(ctx, [&](std::size_t k, std::size_t j) { return near(k, j) ? 1.0 : 0.0; });
  const double c = lipschitz_constant();
  out.term1_lower = out.near_weight - 2.0 * kPi * kPi * c * c * (cfg.kappa * cfg.kappa) / (cfg.t0 * cfg.t0);
  return out;
}

struct DeltaMoments {
  double e_abs_delta = 0.0;
  double e_delta_sq = 0.0;
};

inline DeltaMoments delta_moment_check(const ExpectationContext& ctx) {
  return {expectation_kj(ctx, [&](std::size_t k, std::size_t j) { return std::abs(ctx.delta(k, j)); }),
          expectation_kj(ctx, [&](std::size_t k, std::size_t j) {
            const double d = ctx.delta(k, j);
            return d * d;
          })};
}

/// Smallest slack of Re<h(lambda~_k)|h(lambda_j)> >= 1 - (c^2/2)(kappa/t0)^2 delta^2
/// over the support with k <= K. Negative means a violation.
inline double h_overlap_min_slack(const ExpectationContext& ctx, const FilterParams& p) {
  const FlagTables h(ctx, p);
  const auto& cfg = ctx.config();
  const double c = lipschitz_constant();
  const double scale = 0.5 * c * c * (cfg.kappa / cfg.t0) * (cfg.kappa / cfg.t0);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < ctx.size(); ++j) {
    if (ctx.beta_sq(j) == 0.0) continue;
    for (std::int64_t k = 0; k <= cfg.K; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      const double d = ctx.delta(kk, j);
      worst = std::min(worst, h.approx[kk].dot(h.exact[j]) - (1.0 - scale * d * d));
    }
  }
  return worst;
}

/// True when beta has no weight on eigenvectors with lambda_j < 1/kappa_tilde.
inline bool in_well_conditioned_subspace(std::span<const double> eigenvalues, std::span<const Complex> beta,
                                         const FilterParams& p) {
  for (std::size_t j = 0; j < beta.size(); ++j)
    if (eigenvalues[j] < 1.0 / p.kappa_tilde && std::abs(beta[j]) > Tolerances::arithmetic) return false;
  return true;
}

/// Classical reference A^{-1} b / ||A^{-1} b||, returned in the eigenbasis.
inline ComplexVector classical_solution(const HermitianSystem& sys, std::span<const Complex> beta) {
  const ComplexVector b = sys.to_computational(beta);
  return sys.to_eigenbasis(normalized(solve(sys.matrix(), b)));
}

inline CircuitState embed_solution(std::span<const Complex> coeffs, const HHLConfig& cfg) {
  CircuitState st(coeffs.size(), cfg.T);
  for (std::size_t i = 0; i < coeffs.size(); ++i) st.at(i, 0, static_cast<std::size_t>(FlagLevel::well)) = coeffs[i];
  return st;
}

struct ErrorReport {
  // configuration echo
  double kappa = 0.0;
  double kappa_tilde = 0.0;
  double gamma = 0.0;
  double t0 = 0.0;
  std::int64_t T = 0;
  int n_t = 0;

  // full states
  double err_full = 0.0;
  Complex inner_full_sim;
  double inner_full = 0.0;  // closed form
  double bound_full = 0.0;
  double chain_lower = 0.0;  // 1 - (10 pi^2 c^2 / 3)(kappa/t0)^2
  TermDecomposition terms;
  double h_overlap_slack = 0.0;
  DeltaMoments moments;

  // first post-selection
  double p = 0.0;      // statevector
  double p_bar = 0.0;  // statevector
  double p_analytic = 0.0;
  double p_bar_analytic = 0.0;
  double p1 = 0.0;  // = p; the practical PS1 success probability
  double err_ps1 = 0.0;
  Complex inner_ps1_sim;
  double inner_ps1 = 0.0;  // closed form

  // second post-selection (well-conditioned b only)
  bool well_conditioned = false;
  double p2 = std::numeric_limits<double>::quiet_NaN();
  double p2_bar = std::numeric_limits<double>::quiet_NaN();
  double err_ps2 = std::numeric_limits<double>::quiet_NaN();
  Complex inner_ps2_sim{std::numeric_limits<double>::quiet_NaN(), 0.0};
  double inner_ps2 = std::numeric_limits<double>::quiet_NaN();
  double err_ideal_solution = std::numeric_limits<double>::quiet_NaN();
  double err_solution = std::numeric_limits<double>::quiet_NaN();  // after clock-|0> projection
  double clock_zero_probability = std::numeric_limits<double>::quiet_NaN();

  double max_route_discrepancy = 0.0;
  double max_imag = 0.0;

  bool bound_ok() const { return err_full <= bound_full; }
  bool chain_ok() const { return inner_full_sim.real() >= chain_lower; }
  bool term1_ok() const { return terms.term1 >= terms.term1_lower; }
  bool h_overlap_ok() const { return h_overlap_slack >= -Tolerances::arithmetic; }
};

/// Runs both circuits and fills every quantity. Throws FormulaMismatch when a
/// statevector value and its closed form disagree, ZeroProbability when a
/// post-selection is empty.
inline ErrorReport analyze(const HermitianSystem& sys, std::span<const Complex> beta, const FilterParams& p,
                           const HHLConfig& cfg) {
  ErrorReport r;
  r.kappa = cfg.kappa;
  r.kappa_tilde = p.kappa_tilde;
  r.gamma = cfg.gamma;
  r.t0 = cfg.t0;
  r.T = cfg.T;
  r.n_t = cfg.n_t;

  const CircuitState phi_f = run_practical(sys, beta, p, cfg);
  const CircuitState phi_bar = run_ideal(sys, beta, p, cfg);
  const ExpectationContext ctx(sys.eigenvalues(), beta, cfg);
  const FlagTables h(ctx, p);

  auto track = [&r](const InnerProductCheck& c) {
    r.max_route_discrepancy = std::max(r.max_route_discrepancy, c.discrepancy);
    r.max_imag = std::max(r.max_imag, std::abs(c.simulated.imag()));
  };

  const auto full = compare_routes(inner(phi_f, phi_bar), analytic_inner_full(ctx, h), "<Phi_f|Phi_bar_f>");
  track(full);
  r.inner_full_sim = full.simulated;
  r.inner_full = full.analytic;
  r.err_full = distance(phi_f, phi_bar);
  r.bound_full = full_error_bound(cfg.kappa, cfg.t0);
  const double c = lipschitz_constant();
  r.chain_lower = 1.0 - (10.0 * kPi * kPi * c * c / 3.0) * (cfg.kappa / cfg.t0) * (cfg.kappa / cfg.t0);
  r.terms = term_decomposition(ctx, p);
  r.h_overlap_slack = h_overlap_min_slack(ctx, p);
  r.moments = delta_moment_check(ctx);

  const auto ps1 = post_select_well_ill(phi_f);
  const auto ps1_bar = post_select_well_ill(phi_bar);
  r.p = ps1.probability;
  r.p1 = ps1.probability;
  r.p_bar = ps1_bar.probability;
  r.p_analytic = analytic_p(ctx, h);
  r.p_bar_analytic = analytic_p_bar(ctx, h);
  r.max_route_discrepancy = std::max({r.max_route_discrepancy, std::abs(r.p - r.p_analytic),
                                      std::abs(r.p_bar - r.p_bar_analytic)});
  if (r.max_route_discrepancy > Tolerances::formula_agreement) {
    throw Error(ErrorKind::FormulaMismatch, "post-selection probability differs from its expectation form");
  }
  r.err_ps1 = distance(ps1.state, ps1_bar.state);
  const auto in1 = compare_routes(inner(ps1.state, ps1_bar.state), analytic_inner_ps1(ctx, h), "<x|x_bar> (PS1)");
  track(in1);
  r.inner_ps1_sim = in1.simulated;
  r.inner_ps1 = in1.analytic;

  r.well_conditioned = in_well_conditioned_subspace(sys.eigenvalues(), beta, p);
  if (r.well_conditioned) {
    const auto ps2 = post_select_well(ps1);
    const auto ps2_bar = post_select_well(ps1_bar);
    r.p2 = ps2.probability;
    r.p2_bar = ps2_bar.probability;
    const ComplexVector x_classical = classical_solution(sys, beta);
    const CircuitState reference = embed_solution(x_classical, cfg);
    r.err_ps2 = distance(ps2.state, reference);
    r.err_ideal_solution = distance(extract_solution(ps2_bar.state).coefficients, x_classical);
    const auto in2 = compare_routes(inner(ps2.state, ps2_bar.state), analytic_inner_ps2(ctx, h), "<x|x_bar> (PS2)");
    track(in2);
    r.inner_ps2_sim = in2.simulated;
    r.inner_ps2 = in2.analytic;
    const auto extracted = extract_solution(ps2.state);
    r.err_solution = distance(extracted.coefficients, x_classical);
    r.clock_zero_probability = extracted.clock_zero_probability;
  }
  return r;
}

/// err_full against sqrt(20/3) pi c kappa / t0; BoundViolation on failure.
inline ErrorReport claim1_report(const HermitianSystem& sys, std::span<const Complex> beta, const FilterParams& p,
                                 const HHLConfig& cfg) {
  ErrorReport r = analyze(sys, beta, p, cfg);
  if (!r.bound_ok()) {
    throw Error(ErrorKind::BoundViolation, "err_full " + std::to_string(r.err_full) + " exceeds " +
                                               std::to_string(r.bound_full));
  }
  return r;
}

inline ErrorReport claim2_report(const HermitianSystem& sys, std::span<const Complex> beta, const FilterParams& p,
                                 const HHLConfig& cfg) {
  return analyze(sys, beta, p, cfg);
}

inline ErrorReport claim3_report(const HermitianSystem& sys, std::span<const Complex> beta_well,
                                 const FilterParams& p, const HHLConfig& cfg) {
  if (!in_well_conditioned_subspace(sys.eigenvalues(), beta_well, p)) {
    throw Error(ErrorKind::IllConditionedInput, "b has weight on eigenvalues below 1/kappa_tilde");
  }
  return analyze(sys, beta_well, p, cfg);
}

/// Least-squares slope of log y against log x.
inline double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorKind::BadParameter, "slope fit needs >= 2 paired points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error(ErrorKind::DomainError, "slope fit needs positive data");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(x.size());
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw Error(ErrorKind::DomainError, "slope fit needs distinct x values");
  return (n * sxy - sx * sy) / den;
}

}  // namespace hhl_lab

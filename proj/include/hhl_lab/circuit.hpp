#pragma once

// Dense statevector simulation over registers I (eigenbasis of A), C (clock,
// dimension T) and S (flag qutrit {nothing, well, ill}).

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hhl_lab/amplitudes.hpp"
#include "hhl_lab/error.hpp"
#include "hhl_lab/filters.hpp"
#include "hhl_lab/linalg.hpp"
#include "hhl_lab/tolerances.hpp"

namespace hhl_lab {

template <class F>
concept FlagMap = std::invocable<const F&, double> &&
                  std::convertible_to<std::invoke_result_t<const F&, double>, FlagState>;

/// Amplitude layout: index = ((i * T) + c) * 3 + s.
class CircuitState {
 public:
  static constexpr std::size_t kFlagDim = 3;

  CircuitState(std::size_t input_dim, std::int64_t clock_dim)
      : n_(input_dim), t_(static_cast<std::size_t>(clock_dim)), amps_(input_dim * t_ * kFlagDim) {}

  std::size_t input_dim() const noexcept { return n_; }
  std::size_t clock_dim() const noexcept { return t_; }
  std::size_t size() const noexcept { return amps_.size(); }

  std::size_t index(std::size_t i, std::size_t c, std::size_t s) const noexcept { return (i * t_ + c) * kFlagDim + s; }

  Complex& at(std::size_t i, std::size_t c, std::size_t s) { return amps_[index(i, c, s)]; }
  const Complex& at(std::size_t i, std::size_t c, std::size_t s) const { return amps_[index(i, c, s)]; }

  std::span<Complex> amplitudes() noexcept { return amps_; }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }

  double norm() const { return hhl_lab::norm(amps_); }

  /// Total weight on clock value c.
  double clock_weight(std::size_t c) const {
    double w = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t s = 0; s < kFlagDim; ++s) w += std::norm(at(i, c, s));
    return w;
  }

  /// Total weight on flag level s.
  double flag_weight(FlagLevel level) const {
    const auto s = static_cast<std::size_t>(level);
    double w = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t c = 0; c < t_; ++c) w += std::norm(at(i, c, s));
    return w;
  }

 private:
  std::size_t n_;
  std::size_t t_;
  std::vector<Complex> amps_;
};

inline Complex inner(const CircuitState& a, const CircuitState& b) {
  if (a.input_dim() != b.input_dim() || a.clock_dim() != b.clock_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "circuit states have different register sizes");
  }
  return inner(a.amplitudes(), b.amplitudes());
}

inline double distance(const CircuitState& a, const CircuitState& b) {
  if (a.input_dim() != b.input_dim() || a.clock_dim() != b.clock_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "circuit states have different register sizes");
  }
  return distance(a.amplitudes(), b.amplitudes());
}

namespace detail {

inline void require_circuit_config(const HHLConfig& cfg, std::size_t input_dim) {
  if (!cfg.power_of_two()) throw Error(ErrorKind::BadParameter, "circuit runs need T = 2^n_t");
  if (cfg.dim() != input_dim) throw Error(ErrorKind::DimensionMismatch, "input register size differs from 2^n");
}

inline void require_same_clock(const CircuitState& st, const HHLConfig& cfg) {
  if (st.clock_dim() != static_cast<std::size_t>(cfg.T)) {
    throw Error(ErrorKind::DimensionMismatch, "state clock dimension differs from config T");
  }
}

}  // namespace detail

/// |Phi_0> = sum_j beta_j |u_j>|0>|nothing>, beta in the eigenbasis of A.
inline CircuitState init_state(std::span<const Complex> beta, const HHLConfig& cfg) {
  detail::require_circuit_config(cfg, beta.size());
  if (!is_normalized(beta)) throw Error(ErrorKind::NotNormalized, "beta must be a unit vector");
  CircuitState st(beta.size(), cfg.T);
  for (std::size_t j = 0; j < beta.size(); ++j) st.at(j, 0, 0) = beta[j];
  return st;
}

/// Householder reflection on the clock exchanging |0> and the sine state
/// |Phi> = sqrt(2/T) sum_tau sin(pi(tau+1/2)/T)|tau>. It is its own inverse,
/// so it serves for both the preparation and its adjoint.
inline CircuitState apply_sine_reflection(CircuitState st) {
  const auto t = static_cast<std::int64_t>(st.clock_dim());
  std::vector<double> w(st.clock_dim());
  for (std::int64_t tau = 0; tau < t; ++tau) w[static_cast<std::size_t>(tau)] = -sine_state_amplitude(tau, t);
  w[0] += 1.0;
  double ww = 0.0;
  for (double x : w) ww += x * x;

  for (std::size_t i = 0; i < st.input_dim(); ++i) {
    for (std::size_t s = 0; s < CircuitState::kFlagDim; ++s) {
      Complex proj{0.0, 0.0};
      for (std::size_t c = 0; c < st.clock_dim(); ++c) proj += w[c] * st.at(i, c, s);
      const Complex scale = 2.0 * proj / ww;
      for (std::size_t c = 0; c < st.clock_dim(); ++c) st.at(i, c, s) -= scale * w[c];
    }
  }
  return st;
}

inline CircuitState clock_sine_prepare(CircuitState st, const HHLConfig& cfg) {
  detail::require_same_clock(st, cfg);
  for (std::size_t i = 0; i < st.input_dim(); ++i)
    for (std::size_t c = 1; c < st.clock_dim(); ++c)
      for (std::size_t s = 0; s < CircuitState::kFlagDim; ++s)
        if (std::abs(st.at(i, c, s)) > Tolerances::flag_clean) {
          throw Error(ErrorKind::ClockNotZero, "clock register is not in |0> before sine preparation");
        }
  return apply_sine_reflection(std::move(st));
}

/// sum_tau e^{i A (t0/T) tau} (x) |tau><tau|, applied as exact phases in the
/// eigenbasis. The inverse uses the conjugate phases.
inline CircuitState conditioned_hamiltonian(CircuitState st, std::span<const double> eigenvalues,
                                            const HHLConfig& cfg, bool inverse = false) {
  detail::require_same_clock(st, cfg);
  if (eigenvalues.size() != st.input_dim()) throw Error(ErrorKind::DimensionMismatch, "eigenvalue count");
  const double sign = inverse ? -1.0 : 1.0;
  const double step = cfg.t0 / static_cast<double>(cfg.T);
  for (std::size_t j = 0; j < st.input_dim(); ++j) {
    for (std::size_t tau = 0; tau < st.clock_dim(); ++tau) {
      const Complex phase = std::polar(1.0, sign * eigenvalues[j] * step * static_cast<double>(tau));
      for (std::size_t s = 0; s < CircuitState::kFlagDim; ++s) st.at(j, tau, s) *= phase;
    }
  }
  return st;
}

/// |tau> -> T^{-1/2} sum_k e^{-i 2 pi k tau / T} |k>; `inverse` applies the adjoint.
inline CircuitState clock_qft(CircuitState st, const HHLConfig& cfg, bool inverse = false) {
  detail::require_same_clock(st, cfg);
  const std::size_t t = st.clock_dim();
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<Complex> twiddle(t);
  for (std::size_t m = 0; m < t; ++m)
    twiddle[m] = std::polar(1.0, sign * kTwoPi * static_cast<double>(m) / static_cast<double>(t));
  const double scale = 1.0 / std::sqrt(static_cast<double>(t));

  std::vector<Complex> in(t);
  for (std::size_t i = 0; i < st.input_dim(); ++i) {
    for (std::size_t s = 0; s < CircuitState::kFlagDim; ++s) {
      bool any = false;
      for (std::size_t c = 0; c < t; ++c) {
        in[c] = st.at(i, c, s);
        any = any || in[c] != Complex{0.0, 0.0};
      }
      if (!any) continue;
      for (std::size_t k = 0; k < t; ++k) {
        Complex acc{0.0, 0.0};
        std::size_t m = 0;  // (k * tau) mod t
        for (std::size_t tau = 0; tau < t; ++tau) {
          acc += twiddle[m] * in[tau];
          m += k;
          if (m >= t) m -= t;
        }
        st.at(i, k, s) = acc * scale;
      }
    }
  }
  return st;
}

inline CircuitState qpe(CircuitState st, const HermitianSystem& sys, const HHLConfig& cfg) {
  st = clock_sine_prepare(std::move(st), cfg);
  st = conditioned_hamiltonian(std::move(st), sys.eigenvalues(), cfg);
  return clock_qft(std::move(st), cfg);
}

/// P^†: adjoints of the three phase-estimation steps in reverse order.
inline CircuitState inverse_qpe(CircuitState st, const HermitianSystem& sys, const HHLConfig& cfg) {
  st = clock_qft(std::move(st), cfg, true);
  st = conditioned_hamiltonian(std::move(st), sys.eigenvalues(), cfg, true);
  return apply_sine_reflection(std::move(st));
}

/// Rotates |nothing> -> |h(2 pi k / t0)> in every clock sector k <= K and
/// leaves sectors k > K untouched.
template <FlagMap Map>
CircuitState flag_rotation(CircuitState st, const Map& flag_map, const HHLConfig& cfg) {
  detail::require_same_clock(st, cfg);
  for (std::size_t idx = 0; idx < st.size(); ++idx) {
    if (idx % CircuitState::kFlagDim != 0 && std::abs(st.amplitudes()[idx]) > Tolerances::flag_clean) {
      throw Error(ErrorKind::FlagNotClean, "flag register carries weight outside |nothing>");
    }
  }
  const auto last = static_cast<std::size_t>(std::min<std::int64_t>(cfg.K, cfg.T - 1));
  for (std::size_t k = 0; k <= last; ++k) {
    const double approx = std::min(1.0, approx_eigenvalue(static_cast<std::int64_t>(k), cfg.t0));
    const FlagRotation rot = flag_rotation_matrix(flag_map(approx));
    for (std::size_t i = 0; i < st.input_dim(); ++i) {
      const Complex x0 = st.at(i, k, 0);
      const Complex x1 = st.at(i, k, 1);
      const Complex x2 = st.at(i, k, 2);
      for (std::size_t r = 0; r < 3; ++r) st.at(i, k, r) = rot[r][0] * x0 + rot[r][1] * x1 + rot[r][2] * x2;
    }
  }
  return st;
}

inline CircuitState flag_rotation(CircuitState st, const FilterParams& p, const HHLConfig& cfg) {
  return flag_rotation(std::move(st), [&p](double l) { return h_state(l, p); }, cfg);
}

template <FlagMap Map>
CircuitState run_practical(const HermitianSystem& sys, std::span<const Complex> beta, const Map& flag_map,
                           const HHLConfig& cfg) {
  CircuitState st = init_state(beta, cfg);
  st = qpe(std::move(st), sys, cfg);
  st = flag_rotation(std::move(st), flag_map, cfg);
  return inverse_qpe(std::move(st), sys, cfg);
}

inline CircuitState run_practical(const HermitianSystem& sys, std::span<const Complex> beta, const FilterParams& p,
                                  const HHLConfig& cfg) {
  return run_practical(sys, beta, [&p](double l) { return h_state(l, p); }, cfg);
}

/// sum_j beta_j |u_j>|0>|h(lambda_j)>, the exact-readout circuit.
template <FlagMap Map>
CircuitState run_ideal(const HermitianSystem& sys, std::span<const Complex> beta, const Map& flag_map,
                       const HHLConfig& cfg) {
  CircuitState st = init_state(beta, cfg);
  for (std::size_t j = 0; j < beta.size(); ++j) {
    const auto h = flag_map(sys.eigenvalues()[j]).as_array();
    for (std::size_t s = 0; s < 3; ++s) st.at(j, 0, s) = beta[j] * h[s];
  }
  return st;
}

inline CircuitState run_ideal(const HermitianSystem& sys, std::span<const Complex> beta, const FilterParams& p,
                              const HHLConfig& cfg) {
  return run_ideal(sys, beta, [&p](double l) { return h_state(l, p); }, cfg);
}

// ---------------------------------------------------------------------------
// Post-selection

struct PostSelectionResult {
  CircuitState state;
  double probability = 0.0;
};

namespace detail {

inline PostSelectionResult project_flags(const CircuitState& in, bool keep_nothing, bool keep_well, bool keep_ill) {
  CircuitState out(in.input_dim(), static_cast<std::int64_t>(in.clock_dim()));
  const bool keep[3] = {keep_nothing, keep_well, keep_ill};
  double p = 0.0;
  for (std::size_t idx = 0; idx < in.size(); ++idx) {
    if (keep[idx % CircuitState::kFlagDim]) {
      out.amplitudes()[idx] = in.amplitudes()[idx];
      p += std::norm(in.amplitudes()[idx]);
    }
  }
  if (p < Tolerances::zero_probability) {
    throw Error(ErrorKind::ZeroProbability, "post-selection probability " + std::to_string(p));
  }
  const double scale = 1.0 / std::sqrt(p);
  for (auto& z : out.amplitudes()) z *= scale;
  return {std::move(out), p};
}

}  // namespace detail

/// PS1: flag onto span{|well>, |ill>}.
inline PostSelectionResult post_select_well_ill(const CircuitState& st) {
  return detail::project_flags(st, false, true, true);
}

/// PS2: flag onto |well>, applied to the PS1 output; probability is p2.
inline PostSelectionResult post_select_well(const PostSelectionResult& ps1) {
  return detail::project_flags(ps1.state, false, true, false);
}

struct ExtractedSolution {
  ComplexVector coefficients;  // normalized, eigenbasis of A
  double clock_zero_probability = 0.0;
};

/// Projects the clock onto |0> (flag |well>) and returns the normalized
/// register-I vector in the eigenbasis.
inline ExtractedSolution extract_solution(const CircuitState& st) {
  ExtractedSolution out;
  out.coefficients.resize(st.input_dim());
  double p = 0.0;
  for (std::size_t i = 0; i < st.input_dim(); ++i) {
    out.coefficients[i] = st.at(i, 0, static_cast<std::size_t>(FlagLevel::well));
    p += std::norm(out.coefficients[i]);
  }
  const double total = norm_squared(st.amplitudes());
  if (p < Tolerances::zero_probability * std::max(total, 1.0)) {
    throw Error(ErrorKind::ZeroProbability, "no weight on clock |0> with flag |well>");
  }
  out.clock_zero_probability = p / total;
  const double scale = 1.0 / std::sqrt(p);
  for (auto& z : out.coefficients) z *= scale;
  return out;
}

}  // namespace hhl_lab

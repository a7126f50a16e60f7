#pragma once

namespace hhl_lab {

// Every numerical threshold used by the library lives here.
struct Tolerances {
  static constexpr double structural = 1e-10;
  static constexpr double arithmetic = 1e-12;
  static constexpr double hermitian = 1e-12;
  static constexpr double normalization = 1e-10;
  static constexpr double flag_clean = 1e-12;
  static constexpr double zero_probability = 1e-14;
  static constexpr double formula_agreement = 1e-8;
  static constexpr double removable_singularity = 1e-8;
  // Relative slack for the clock-size condition T >= kappa/gamma + 1 so that
  // boundary choices such as T = 2*kappa + 1 are accepted.
  static constexpr double condition_slack = 1e-12;
  static constexpr int jacobi_max_sweeps = 100;
};

}  // namespace hhl_lab

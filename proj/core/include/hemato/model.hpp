#pragma once

#include <vector>

#include "hemato/rates.hpp"
#include "hemato/state.hpp"

namespace hemato {

/// Scalar rates of the three-compartment delayed system (units: days).
struct ModelParams {
  double delta = 0.01;  ///< G0-phase death rate
  double gamma = 0.2;   ///< apoptosis rate during proliferation
  double tau = 0.0;     ///< cell cycle duration
  double mu = 0.02;     ///< mature-cell degradation rate
  double k = 2.8;       ///< growth-factor disappearance rate
  RatesPtr rates;

  ModelParams with_tau(double t) const {
    ModelParams copy = *this;
    copy.tau = t;
    return copy;
  }

  const RateFunctions& r() const { return *rates; }
};

/// Parameter set used for the long-period oscillation study (Hill rates).
ModelParams reference_params(double tau = 0.0);

/// 2 e^{-gamma tau}: fraction of cells surviving the proliferating phase, times two.
double division_factor(const ModelParams& p, double tau);

/// 2 e^{-gamma tau} - 1.
double net_amplification(const ModelParams& p, double tau);

/// Time derivative of (Q, M, E) given the current and tau-delayed states.
/// Throws InvalidStateError on non-finite input.
SystemState rhs(const SystemState& now, const SystemState& delayed, const ModelParams& p);

/// Structural assumptions that `p` violates; empty when the analysis applies.
std::vector<Violation> validate(const ModelParams& p);

}  // namespace hemato

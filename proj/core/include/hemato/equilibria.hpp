#pragma once

#include <optional>

#include "hemato/model.hpp"
#include "hemato/state.hpp"

namespace hemato {

enum class EquilibriumKind { trivial, positive };

struct Equilibrium {
  EquilibriumKind kind = EquilibriumKind::trivial;
  SystemState state;
  double tau = 0.0;
};

const char* to_string(EquilibriumKind kind);

/// Upper bound on the delay below which the positive equilibrium exists.
/// Returns nullopt when delta + g'(0) >= beta(0, f(0)/k) (no positive
/// equilibrium for any delay) and +infinity when gamma == 0.
std::optional<double> tau_max(const ModelParams& p);

/// True iff delta + g'(0) < (2 e^{-gamma tau} - 1) beta(0, f(0)/k).
bool positive_equilibrium_exists(const ModelParams& p, double tau);

/// (0, 0, f(0)/k).
Equilibrium trivial_equilibrium(const ModelParams& p, double tau = 0.0);

/// (2e^{-gamma tau} - 1) beta~(Q) - delta - g(Q)/Q, with
/// beta~(Q) = beta(Q, f(g(Q)/mu)/k). Zero exactly at the positive equilibrium.
double equilibrium_residual(const ModelParams& p, double q, double tau);

/// Unique positive equilibrium at `tau`, or nullopt when it does not exist.
/// Throws NumericalFailure if no sign change can be bracketed.
std::optional<Equilibrium> positive_equilibrium(const ModelParams& p, double tau);

/// Explicit formulas for Hill rates. Throws DomainError when tau >= tau_max
/// and std::invalid_argument when `p` does not carry HillRates.
Equilibrium hill_equilibrium_closed_form(const ModelParams& p, double tau);

}  // namespace hemato

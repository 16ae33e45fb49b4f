#pragma once

// Multi-term polytropic equation of state
//   P(rho, S) = exp(S) * Ptilde(rho),   Ptilde(rho) = sum_j w_j rho^gamma_j
// with strictly increasing exponents gamma_1 < gamma_2 < ..., all >= 1, and
// positive weights w_j.

#include <vector>

namespace linesol::eos {

struct PressureLaw {
  std::vector<double> gammas;   // strictly increasing, each >= 1
  std::vector<double> weights;  // positive, same length as gammas

  // Validating factory; weights default to all-ones when omitted.
  // Throws std::invalid_argument on any contract violation.
  static PressureLaw make(std::vector<double> gammas,
                          std::vector<double> weights = {});
};

// Entropy-free pressure factor Ptilde(rho); rho must be >= 0.
double pressure_tilde(const PressureLaw& law, double rho);

// d Ptilde / d rho.  Finite down to rho = 0 because every exponent is >= 1.
double dpressure_tilde_drho(const PressureLaw& law, double rho);

// Full pressure exp(S) * Ptilde(rho).
double pressure(const PressureLaw& law, double rho, double S);

// dP/drho at fixed entropy: exp(S) * dpressure_tilde_drho.  Its square root
// is the sound speed used for CFL control.
double dpressure_drho(const PressureLaw& law, double rho, double S);

}  // namespace linesol::eos

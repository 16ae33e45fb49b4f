#include "linesol/eos.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace linesol::eos {

PressureLaw PressureLaw::make(std::vector<double> gammas,
                              std::vector<double> weights) {
  if (gammas.empty()) {
    throw std::invalid_argument("PressureLaw: at least one exponent required");
  }
  if (weights.empty()) {
    weights.assign(gammas.size(), 1.0);
  }
  if (weights.size() != gammas.size()) {
    throw std::invalid_argument(
        "PressureLaw: weights and exponents must have equal length");
  }
  for (std::size_t j = 0; j < gammas.size(); ++j) {
    if (!(gammas[j] >= 1.0)) {
      throw std::invalid_argument("PressureLaw: exponent " +
                                  std::to_string(gammas[j]) + " is < 1");
    }
    if (j > 0 && !(gammas[j] > gammas[j - 1])) {
      throw std::invalid_argument(
          "PressureLaw: exponents must be strictly increasing");
    }
    if (!(weights[j] > 0.0)) {
      throw std::invalid_argument("PressureLaw: weight " +
                                  std::to_string(weights[j]) +
                                  " is not positive");
    }
  }
  PressureLaw law;
  law.gammas = std::move(gammas);
  law.weights = std::move(weights);
  return law;
}

namespace {

void require_nonneg(double rho, const char* who) {
  if (!(rho >= 0.0)) {
    throw std::invalid_argument(std::string(who) +
                                ": density must be >= 0, got " +
                                std::to_string(rho));
  }
}

}  // namespace

double pressure_tilde(const PressureLaw& law, double rho) {
  require_nonneg(rho, "pressure_tilde");
  double sum = 0.0;
  for (std::size_t j = 0; j < law.gammas.size(); ++j) {
    sum += law.weights[j] * std::pow(rho, law.gammas[j]);
  }
  return sum;
}

double dpressure_tilde_drho(const PressureLaw& law, double rho) {
  require_nonneg(rho, "dpressure_tilde_drho");
  double sum = 0.0;
  for (std::size_t j = 0; j < law.gammas.size(); ++j) {
    const double g = law.gammas[j];
    // rho^(g-1) -> 1 at rho = 0 for the linear term (g == 1), 0 otherwise.
    const double p = (g == 1.0) ? 1.0 : std::pow(rho, g - 1.0);
    sum += law.weights[j] * g * p;
  }
  return sum;
}

double pressure(const PressureLaw& law, double rho, double S) {
  return std::exp(S) * pressure_tilde(law, rho);
}

double dpressure_drho(const PressureLaw& law, double rho, double S) {
  return std::exp(S) * dpressure_tilde_drho(law, rho);
}

}  // namespace linesol::eos

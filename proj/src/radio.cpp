#include "wsn/radio.hpp"

#include <cmath>
#include <stdexcept>

namespace wsn {

double crossover_distance(double eps_fs, double eps_mp) {
  if (!(eps_fs > 0.0)) {
    throw std::invalid_argument("crossover_distance: eps_fs must be > 0");
  }
  if (!(eps_mp > 0.0)) {
    throw std::invalid_argument("crossover_distance: eps_mp must be > 0");
  }
  return std::sqrt(eps_fs / eps_mp);
}

double RadioParams::crossover() const {
  return d0_override ? *d0_override : crossover_distance(eps_fs, eps_mp);
}

double tx_energy(std::uint32_t bits, double d, const RadioParams& params) {
  if (!(d >= 0.0) || !std::isfinite(d)) {
    throw std::invalid_argument("tx_energy: distance must be finite and >= 0");
  }
  const double l = static_cast<double>(bits);
  const double d2 = d * d;
  if (d < params.crossover()) {
    return l * params.e_elec + l * params.eps_fs * d2;
  }
  return l * params.e_elec + l * params.eps_mp * (d2 * d2);
}

double rx_energy(std::uint32_t bits, const RadioParams& params) {
  return static_cast<double>(bits) * params.e_elec;
}

double aggregation_energy(std::uint32_t bits, std::uint32_t signal_count,
                          const RadioParams& params) {
  if (signal_count == 0) {
    throw std::invalid_argument(
        "aggregation_energy: signal_count must be >= 1");
  }
  return params.e_da * static_cast<double>(bits) *
         static_cast<double>(signal_count);
}

}  // namespace wsn

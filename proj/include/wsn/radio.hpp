#pragma once

#include <cstdint>
#include <optional>

namespace wsn {

// First-order radio dissipation parameters. The defaults are the usual
// 5 nJ/bit electronics, 10 pJ/bit/m^2 free-space amplifier,
// 0.0013 pJ/bit/m^4 multipath amplifier, 5 nJ/bit/signal fusion cost and
// 4000-bit data packets.
struct RadioParams {
  double e_elec = 5e-9;        // J/bit, TX/RX electronics
  double eps_fs = 10e-12;      // J/bit/m^2, free-space amplifier
  double eps_mp = 0.0013e-12;  // J/bit/m^4, multipath amplifier
  double e_da = 5e-9;          // J/bit/signal, aggregation cost at a CH
  std::uint32_t packet_bits = 4000;

  // Forces the free-space/multipath crossover distance (m). When unset the
  // crossover is derived from the amplifier constants, which keeps the
  // transmit cost continuous in distance.
  std::optional<double> d0_override;

  double crossover() const;

  friend bool operator==(const RadioParams&, const RadioParams&) = default;
};

// sqrt(eps_fs / eps_mp); rejects non-positive inputs.
double crossover_distance(double eps_fs, double eps_mp);

// Energy to transmit `bits` over distance d: electronics plus the d^2
// amplifier below the crossover, the d^4 amplifier at or above it.
double tx_energy(std::uint32_t bits, double d, const RadioParams& params);

// Energy to receive `bits`: electronics only.
double rx_energy(std::uint32_t bits, const RadioParams& params);

// Energy to fuse `signal_count` collected signals of `bits` each into one
// outgoing packet. The head's own reading counts as a signal, so
// signal_count >= 1 always.
double aggregation_energy(std::uint32_t bits, std::uint32_t signal_count,
                          const RadioParams& params);

}  // namespace wsn

#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "wsn/radio.hpp"

using namespace wsn;

TEST_SUITE("radio") {
  TEST_CASE("transmit cost at reference distances") {
    const RadioParams radio;
    // 4000 bits at 50 m sits in the free-space regime:
    // 4000*5e-9 + 4000*1e-11*2500 = 1.2e-4 J.
    CHECK(tx_energy(4000, 50.0, radio) ==
          doctest::Approx(1.2e-4).epsilon(1e-12).scale(0.0));
    // 100 m is past the crossover, multipath regime:
    // 4000*5e-9 + 4000*1.3e-15*1e8 = 5.4e-4 J.
    CHECK(tx_energy(4000, 100.0, radio) ==
          doctest::Approx(5.4e-4).epsilon(1e-12).scale(0.0));
  }

  TEST_CASE("crossover distance from amplifier constants") {
    CHECK(crossover_distance(10e-12, 0.0013e-12) ==
          doctest::Approx(87.7058).epsilon(1e-5));
    const RadioParams radio;
    CHECK(radio.crossover() == crossover_distance(10e-12, 0.0013e-12));
    CHECK_THROWS_AS(crossover_distance(0.0, 1e-12), std::invalid_argument);
    CHECK_THROWS_AS(crossover_distance(1e-12, -1.0), std::invalid_argument);
  }

  TEST_CASE("transmit cost is continuous at the derived crossover") {
    const RadioParams radio;
    const double d0 = radio.crossover();
    const double below = tx_energy(4000, std::nexttoward(d0, 0.0), radio);
    const double at = tx_energy(4000, d0, radio);
    CHECK(std::abs(below - at) / at < 1e-9);
  }

  TEST_CASE("crossover override reroutes the regime switch") {
    RadioParams radio;
    radio.d0_override = 70.0;
    CHECK(radio.crossover() == 70.0);
    // 80 m: free space under the derived d0, multipath under the override.
    const double l = 4000.0;
    CHECK(tx_energy(4000, 80.0, radio) ==
          doctest::Approx(l * 5e-9 + l * 0.0013e-12 * 80.0 * 80.0 * 80.0 *
                          80.0));
    CHECK(tx_energy(4000, 69.0, radio) ==
          doctest::Approx(l * 5e-9 + l * 10e-12 * 69.0 * 69.0));
  }

  TEST_CASE("receive cost is electronics only") {
    const RadioParams radio;
    CHECK(rx_energy(4000, radio) == doctest::Approx(2e-5).epsilon(1e-12).scale(0.0));
    CHECK(rx_energy(0, radio) == 0.0);
  }

  TEST_CASE("aggregation cost scales with fused signal count") {
    const RadioParams radio;
    CHECK(aggregation_energy(4000, 1, radio) ==
          doctest::Approx(2e-5).epsilon(1e-12).scale(0.0));
    CHECK(aggregation_energy(4000, 4, radio) ==
          doctest::Approx(8e-5).epsilon(1e-12).scale(0.0));
    CHECK_THROWS_AS(aggregation_energy(4000, 0, radio),
                    std::invalid_argument);
  }

  TEST_CASE("transmit rejects bad distances") {
    const RadioParams radio;
    CHECK_THROWS_AS(tx_energy(4000, -1.0, radio), std::invalid_argument);
    CHECK_THROWS_AS(tx_energy(4000, std::nan(""), radio),
                    std::invalid_argument);
    CHECK(tx_energy(4000, 0.0, radio) == doctest::Approx(2e-5));
  }
}

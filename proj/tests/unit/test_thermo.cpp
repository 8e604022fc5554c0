#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gibbslab/errors.hpp"
#include "gibbslab/thermo.hpp"

using namespace gibbslab;
using std::numbers::ln2;

namespace {
GasSpecimen gas(std::int64_t n, double v, double t, std::string tag = "A") {
  return GasSpecimen{{std::move(tag), 0.0}, n, v, t};
}
// Closed-form S = 5/2 N ln T - N ln P + cN, written out again here.
double entropy_oracle(std::int64_t n, double v, double t, double c) {
  if (n == 0) return 0.0;
  const double nn = static_cast<double>(n);
  return 2.5 * nn * std::log(t) - nn * std::log(nn * t / v) + c * nn;
}
}  // namespace

TEST_CASE("GasSpecimen derives pressure and validates") {
  const auto g = gas(10, 2.0, 3.0);
  CHECK(g.pressure() * g.volume == doctest::Approx(double(g.n) * g.temperature));
  CHECK_NOTHROW(g.validate());
  CHECK_THROWS_AS(gas(-1, 1, 1).validate(), DomainError);
  CHECK_THROWS_AS(gas(1, 0, 1).validate(), DomainError);
  CHECK_THROWS_AS(gas(1, 1, -2).validate(), DomainError);
}

TEST_CASE("ideal_gas_entropy closed form") {
  CHECK(ideal_gas_entropy(gas(7, 2.0, 3.0)) == doctest::Approx(entropy_oracle(7, 2.0, 3.0, 0.0)));
  const double n = 1000;
  // Doubling V and T together keeps P fixed.
  CHECK(ideal_gas_entropy(gas(1000, 2.0, 2.0)) - ideal_gas_entropy(gas(1000, 1.0, 1.0)) ==
        doctest::Approx(2.5 * n * ln2));
  CHECK(ideal_gas_entropy(gas(1000, 2.0, 1.0)) - ideal_gas_entropy(gas(1000, 1.0, 1.0)) ==
        doctest::Approx(n * ln2));
  CHECK(ideal_gas_entropy(gas(0, 1.0, 1.0)) == 0.0);
}

TEST_CASE("entropy differences do not depend on c") {
  EntropyConvention a, b;
  b.default_c = 17.25;
  b.c_by_species["B"] = -3.0;
  for (const char* tag : {"A", "B"}) {
    const auto g1 = gas(50, 1.0, 1.0, tag), g2 = gas(50, 3.0, 2.0, tag);
    CHECK(ideal_gas_entropy(g2, a) - ideal_gas_entropy(g1, a) ==
          doctest::Approx(ideal_gas_entropy(g2, b) - ideal_gas_entropy(g1, b)).epsilon(1e-12));
  }
  CHECK(b.c_for(Species{"B", 0.0}) == -3.0);
  CHECK(b.c_for(Species{"Z", 0.0}) == 17.25);
}

TEST_CASE("entropy_difference_by_path converges to the closed form") {
  const auto start = gas(100, 1.0, 1.0);
  SUBCASE("degenerate path") {
    const std::vector<ThermoState> path{{start.pressure(), 1.0}};
    CHECK(entropy_difference_by_path(start, start, path, 10) == 0.0);
  }
  SUBCASE("isothermal doubling") {
    const auto end = gas(100, 2.0, 1.0);
    const std::vector<ThermoState> path{{100.0, 1.0}, {50.0, 1.0}};
    const double ds = entropy_difference_by_path(start, end, path, 10000);
    CHECK(std::abs(ds - 100.0 * ln2) / (100.0 * ln2) < 1e-6);
  }
  SUBCASE("two paths agree") {
    const auto end = gas(100, 3.0, 2.0);
    const double exact = ideal_gas_entropy(end) - ideal_gas_entropy(start);
    const std::vector<ThermoState> heat_first{{100.0, 1.0}, {200.0, 2.0}, {end.pressure(), 2.0}};
    const std::vector<ThermoState> expand_first{{100.0, 1.0}, {end.pressure() / 2.0, 1.0},
                                                {end.pressure(), 2.0}};
    const double a = entropy_difference_by_path(start, end, heat_first, 10000);
    const double b = entropy_difference_by_path(start, end, expand_first, 10000);
    CHECK(std::abs(a - b) / std::abs(exact) < 1e-6);
    CHECK(std::abs(a - exact) / std::abs(exact) < 1e-6);
    // Coarse quadrature is visibly off: the result is computed, not copied.
    const double coarse = entropy_difference_by_path(start, end, heat_first, 1);
    CHECK(std::abs(coarse - exact) > 1e-6 * std::abs(exact));
  }
  SUBCASE("endpoint mismatch") {
    const std::vector<ThermoState> path{{100.0, 1.0}, {60.0, 1.0}};
    CHECK_THROWS_AS(entropy_difference_by_path(start, gas(100, 2.0, 1.0), path, 10), PreconditionError);
  }
}

TEST_CASE("thermo_mixing_entropy") {
  const auto l = gas(1000, 1.0, 1.0, "A"), r = gas(1000, 1.0, 1.0, "B");
  CHECK(thermo_mixing_entropy(l, r, true) == doctest::Approx(2000.0 * ln2));
  CHECK(thermo_mixing_entropy(l, r, true) == doctest::Approx(1386.2943611198906));
  CHECK(thermo_mixing_entropy(l, r, false) == 0.0);
  CHECK(thermo_mixing_entropy(gas(0, 1, 1), gas(0, 1, 1), true) == 0.0);
  // Unequal but pressure-matched volumes.
  CHECK(thermo_mixing_entropy(gas(100, 1.0, 1.0), gas(300, 3.0, 1.0), true) ==
        doctest::Approx(100 * std::log(4.0) + 300 * std::log(4.0 / 3.0)));
  CHECK_THROWS_AS(thermo_mixing_entropy(l, gas(1000, 1.0, 2.0), true), PreconditionError);
  CHECK_THROWS_AS(thermo_mixing_entropy(l, gas(1000, 2.0, 1.0), true), PreconditionError);
}

TEST_CASE("isothermal_membrane_work") {
  CHECK(isothermal_membrane_work(500, 1.0, 1.0, 1.0) == 0.0);
  CHECK(isothermal_membrane_work(500, 1.0, 1.0, 2.0) == doctest::Approx(500 * ln2));
  CHECK(isothermal_membrane_work(500, 1.0, 1.0, 2.0) == doctest::Approx(346.57359027997264));
  const double both = isothermal_membrane_work(500, 2.0, 1.0, 2.0) * 2.0;
  CHECK(both / 2.0 == doctest::Approx(1000 * ln2));
}

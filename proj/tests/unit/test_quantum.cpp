#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gibbslab/counting.hpp"
#include "gibbslab/errors.hpp"
#include "gibbslab/mixing.hpp"
#include "gibbslab/quantum.hpp"
#include "oracles.hpp"

using namespace gibbslab;
using namespace gibbslab::quantum;
using cd = std::complex<double>;

TEST_CASE("enumeration matches independent oracles and closed forms") {
  CHECK(enumerate_states(2, ModeBasis::split(3), Statistics::Bose) == 6);
  CHECK(enumerate_states(2, ModeBasis::split(3), Statistics::Fermi) == 3);
  for (auto st : {Statistics::Bose, Statistics::Fermi, Statistics::Distinguishable})
    CHECK(enumerate_states(1, ModeBasis::split(5), st) == 5);
  for (int n = 0; n <= 6; ++n)
    for (int x = 1; x <= 8; ++x) {
      const auto b = ModeBasis::split(x);
      CHECK(enumerate_states(n, b, Statistics::Distinguishable) == oracle::count_labelled(n, x));
      CHECK(enumerate_states(n, b, Statistics::Bose) == oracle::count_occupations(n, x, -1));
      if (n <= x) CHECK(enumerate_states(n, b, Statistics::Fermi) == oracle::count_occupations(n, x, 1));
    }
  CHECK_THROWS_AS(enumerate_states(7, ModeBasis::split(3), Statistics::Bose), SizeLimitError);
  CHECK_THROWS_AS(enumerate_states(2, ModeBasis::split(9), Statistics::Bose), SizeLimitError);
  CHECK_THROWS_AS(enumerate_states(4, ModeBasis::split(3), Statistics::Fermi), InfeasibleStateError);
}

TEST_CASE("mode basis split") {
  const auto b = ModeBasis::split(5);
  CHECK(b.size() == 5);
  CHECK(b.partition_map[0] == Compartment::Left);
  CHECK(b.partition_map[4] == Compartment::Right);
}

TEST_CASE("symmetrization bookkeeping") {
  SUBCASE("N = X = 1") {
    const auto l = symmetrization_bookkeeping(1, 1, 1, 1);
    // Four closed forms evaluated by hand: flawed 0 -> ln 2 - ln 2, correct -ln 2 -> ln 4 - ln 2.
    CHECK(l.flawed_before.ln_value() == doctest::Approx(0.0));
    CHECK(l.flawed_after.ln_value() == doctest::Approx(std::log(4.0) - std::log(2.0)));
    CHECK(l.correct_delta() - l.flawed_delta() == doctest::Approx(std::numbers::ln2));
  }
  SUBCASE("N = 0") {
    const auto l = symmetrization_bookkeeping(0, 0, 3, 3);
    CHECK(l.flawed_before.ln_value() == 0.0);
    CHECK(l.flawed_after.ln_value() == 0.0);
    CHECK(l.correct_before.ln_value() == 0.0);
    CHECK(l.correct_after.ln_value() == 0.0);
  }
  SUBCASE("N = 4, X = 6") {
    const auto l = symmetrization_bookkeeping(4, 4, 6, 6);
    CHECK(l.correct_delta() - l.flawed_delta() == doctest::Approx(std::log(70.0)));
  }
  SUBCASE("matches by-origin mixing at leading order") {
    for (std::int64_t n : {1, 10, 300}) {
      MixingScenario s;
      s.left = {{"A", 0.0}, n, 1.0, 1.0};
      s.right = s.left;
      s.policy = DiscriminationPolicy::ByOrigin;
      s.states_per_volume = 7.0;
      const auto l = symmetrization_bookkeeping(n, n, 7, 7);
      CHECK(l.correct_delta() == doctest::Approx(boltzmann_mixing_entropy(s).leading).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(symmetrization_bookkeeping(-1, 1, 1, 1), DomainError);
}

TEST_CASE("antisymmetrize") {
  const auto phi = mode_state(3, 1), psi = mode_state(3, 2);
  const auto s = antisymmetrize(phi, psi);
  CHECK(s.symmetry() == Symmetry::Antisymmetric);
  CHECK(std::abs(s.amplitudes()(1, 2) - cd(1 / std::sqrt(2.0))) < 1e-15);
  CHECK(std::abs(s.amplitudes()(2, 1) + cd(1 / std::sqrt(2.0))) < 1e-15);
  const auto swapped = antisymmetrize(psi, phi);
  CHECK((swapped.amplitudes() + s.amplitudes()).norm() < 1e-15);
  CHECK_THROWS_AS(antisymmetrize(phi, phi), DomainError);
  CHECK_THROWS_AS(antisymmetrize(phi, (phi + psi).normalized()), DomainError);
  CHECK_NOTHROW(s.validate());
}

TEST_CASE("reduced density matrices") {
  const auto phi = mode_state(2, 0), psi = mode_state(2, 1);
  const auto s = antisymmetrize(phi, psi);
  const OperatorXcd half = 0.5 * OperatorXcd::Identity(2, 2);
  for (Label which : {Label::First, Label::Second})
    CHECK((reduced_density_matrix(s, which).matrix() - half).cwiseAbs().maxCoeff() <= 1e-12);
  const auto prod = product_state(phi, psi);
  CHECK((reduced_density_matrix(prod, Label::First).matrix() - phi * phi.adjoint()).norm() < 1e-15);
  CHECK((reduced_density_matrix(prod, Label::Second).matrix() - psi * psi.adjoint()).norm() < 1e-15);

  // Fuzz: random normalized two-particle amplitudes, explicit partial trace oracle.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const int x = 2 + trial % 5;
    OperatorXcd a(x, x);
    std::normal_distribution<double> g;
    for (int i = 0; i < x; ++i)
      for (int j = 0; j < x; ++j) a(i, j) = {g(rng), g(rng)};
    a /= a.norm();
    const TwoParticleState st(a, Symmetry::None);
    const auto rho = reduced_density_matrix(st, Label::First);
    CHECK_NOTHROW(rho.validate());
    OperatorXcd ref = OperatorXcd::Zero(x, x);
    for (int i = 0; i < x; ++i)
      for (int k = 0; k < x; ++k)
        for (int j = 0; j < x; ++j) ref(i, k) += a(i, j) * std::conj(a(k, j));
    CHECK((rho.matrix() - ref).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(rho.matrix().trace() - cd(1.0)) < 1e-12);
    CHECK_NOTHROW(reduced_density_matrix(st, Label::Second).validate());
  }
}

TEST_CASE("U (x) U preserves antisymmetry") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = haar_unitary(6, rng);
    auto phi = random_state(6, rng);
    auto psi = random_state(6, rng);
    psi = (psi - phi * phi.dot(psi)).normalized();
    const auto evolved = apply_one_particle_unitary(antisymmetrize(phi, psi), u);
    CHECK(evolved.symmetry() == Symmetry::Antisymmetric);
    CHECK_NOTHROW(evolved.validate(1e-12));
    CHECK((evolved.amplitudes() + evolved.amplitudes().transpose()).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("orthogonality under unitary evolution") {
  const auto basis = ModeBasis::split(8);
  const auto l = compartment_state(basis, Compartment::Left);
  const auto r = compartment_state(basis, Compartment::Right);
  CHECK(evolve_and_check_orthogonality(l, r, OperatorXcd::Identity(8, 8), 100) == 0.0);
  OperatorXcd d = OperatorXcd::Zero(8, 8);
  for (int i = 0; i < 8; ++i) d(i, i) = std::polar(1.0, 0.37 * i);
  CHECK(evolve_and_check_orthogonality(l, r, d, 1000) <= 1e-14);
  std::mt19937_64 rng(2024);
  const auto u = haar_unitary(8, rng);
  CHECK((u.adjoint() * u - OperatorXcd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(evolve_and_check_orthogonality(l, r, u, 1000) < 1e-10);
  CHECK(evolve_and_check_orthogonality(l, r, u, 10000) < 1e-10);
  OperatorXcd bad = u;
  bad(0, 0) += 1e-6;
  CHECK_THROWS_AS(evolve_and_check_orthogonality(l, r, bad, 10), DomainError);
  CHECK_THROWS_AS(evolve_and_check_orthogonality(l, l, u, 10), DomainError);
}

TEST_CASE("quantum inertness: Bose or Fermi total constant") {
  for (std::int64_t n : {1, 3, 10}) {
    MixingScenario s;
    s.left = {{"A", 0.0}, n, 1.0, 1.0};
    s.right = s.left;
    s.policy = DiscriminationPolicy::ByOrigin;
    s.states_per_volume = 20.0;
    const double base = convention_shift_inertness(s).delta_without;
    for (auto c : {CountingConvention::Bose, CountingConvention::Fermi}) {
      const auto constant = ln_microstate_count({2 * n, 40}, c);
      const auto r = convention_shift_inertness(s, constant);
      CHECK(std::abs(r.delta_with - base) <= 1e-12);
    }
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rhex/plant.hpp"
#include "rhex/rng.hpp"
#include "rhex/surrogate.hpp"

using namespace rhex;

namespace {

PlantParams lti_params(double a, double b) {
  PlantParams p;
  p.kind = PlantKind::kLti;
  p.nonlinearity = Nonlinearity::kIdentity;
  p.a = a;
  p.b = b;
  return p;
}

PlantParams hammerstein_params() {
  PlantParams p;  // defaults: a=0.8, b=0.2, atan steepness 3
  return p;
}

}  // namespace

TEST_CASE("zero input keeps the zero equilibrium") {
  PlantModel plant(hammerstein_params());
  for (int k = 0; k < 50; ++k) CHECK(plant.step(0.0) == 0.0);
}

TEST_CASE("lti step response 0.2, 0.36, 0.488") {
  PlantModel plant(lti_params(0.8, 0.2));
  CHECK(plant.step(1.0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(plant.step(1.0) == doctest::Approx(0.36).epsilon(1e-15));
  CHECK(plant.step(1.0) == doctest::Approx(0.488).epsilon(1e-15));
}

TEST_CASE("hammerstein steady state at u=1 is b/(1-a) since f(1)=1") {
  PlantModel plant(hammerstein_params());
  CHECK(plant.static_map(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(plant.static_map(-1.0) == doctest::Approx(-1.0).epsilon(1e-15));
  double y = 0.0;
  for (int k = 0; k < 200; ++k) y = plant.step(1.0);
  CHECK(std::abs(y - plant.steady_state(1.0)) < 1e-6);
  CHECK(plant.steady_state(1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("steady-state map is monotone and long runs converge to it") {
  const PlantModel plant(hammerstein_params());
  double prev = plant.steady_state(-1.0);
  for (int i = 1; i <= 40; ++i) {
    const double u = -1.0 + 2.0 * i / 40.0;
    const double ss = plant.steady_state(u);
    CHECK(ss > prev);
    prev = ss;
  }
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const double u = rng.uniform(-1.0, 1.0);
    PlantModel sim(hammerstein_params());
    double y = 0.0;
    for (int k = 0; k < 200; ++k) y = sim.step(u);
    CHECK(std::abs(y - sim.steady_state(u)) < 1e-6);
  }
}

TEST_CASE("process distribution matches the surrogate for matched lti parameters") {
  const PlantModel plant(lti_params(0.8, 0.2));
  const auto surrogate = SurrogateModel::validated(0.8, 0.2, {0.0, 0.0});
  Rng rng(11);
  ExcitationSignal u;
  for (int i = 0; i < 200; ++i) u.append(rng.uniform(-1.0, 1.0));

  const Distribution from_plant = process_distribution(plant, u);
  const Distribution from_surrogate = simulate(surrogate, u.samples());
  REQUIRE(from_plant.size() == from_surrogate.size());
  for (std::size_t j = 0; j < from_plant.size(); ++j) {
    CHECK(std::abs(from_plant[j][0] - from_surrogate[j][0]) < 1e-12);
    CHECK(std::abs(from_plant[j][1] - from_surrogate[j][1]) < 1e-12);
  }
}

TEST_CASE("zero signal collapses onto the u=0 axis with y decaying to 0") {
  PlantParams p = hammerstein_params();
  p.y0 = 0.9;
  const PlantModel plant(p);
  ExcitationSignal u(std::vector<double>(100, 0.0));
  const Distribution d = process_distribution(plant, u);
  REQUIRE(d.size() == 101);
  for (std::size_t j = 1; j < d.size(); ++j) {
    CHECK(d[j][0] == 0.0);
  }
  CHECK(std::abs(d[100][1]) < 1e-9);
}

TEST_CASE("count contract: N samples give N+1 points including z(0)") {
  const PlantModel plant(hammerstein_params());
  Rng rng(3);
  ExcitationSignal u;
  for (int i = 0; i < 100; ++i) u.append(rng.uniform(-1.0, 1.0));
  const Distribution d = process_distribution(plant, u);
  CHECK(d.size() == 101);
  CHECK(d[0][0] == 0.0);
  CHECK(d[0][1] == 0.0);
}

TEST_CASE("initial condition overrides are honored") {
  const PlantModel plant(hammerstein_params());
  ExcitationSignal u(std::vector<double>{0.5});
  const Distribution d = process_distribution(plant, u, 0.4, -0.3);
  CHECK(d[0][0] == -0.3);
  CHECK(d[0][1] == 0.4);
  CHECK(d[1][1] == doctest::Approx(0.8 * 0.4 + 0.2 * plant.static_map(0.5)));
}

TEST_CASE("seeded measurement noise is reproducible and off by default") {
  PlantParams noisy = hammerstein_params();
  noisy.noise_std = 0.05;
  noisy.noise_seed = 99;
  PlantModel a(noisy), b(noisy);
  bool all_equal = true;
  bool any_noise = false;
  for (int k = 0; k < 50; ++k) {
    const double ya = a.step(0.5);
    const double yb = b.step(0.5);
    all_equal &= (ya == yb);
    any_noise |= (ya != a.output());
  }
  CHECK(all_equal);
  CHECK(any_noise);

  PlantModel clean(hammerstein_params());
  const double measured = clean.step(0.5);
  CHECK(measured == clean.output());
}

TEST_CASE("plant divergence raises an error") {
  PlantParams p = lti_params(0.9, 1e200);
  PlantModel plant(p);
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 10; ++i) plant.step(1e200);
      }(),
      DivergenceError);
}

TEST_CASE("parameter validation") {
  PlantParams bad = hammerstein_params();
  bad.a = 1.0;
  CHECK_THROWS_AS(PlantModel{bad}, ConfigError);

  PlantParams bad_nl = lti_params(0.5, 1.0);
  bad_nl.nonlinearity = Nonlinearity::kAtan;
  CHECK_THROWS_AS(PlantModel{bad_nl}, ConfigError);

  PlantParams bad_steep = hammerstein_params();
  bad_steep.steepness = 0.0;
  CHECK_THROWS_AS(PlantModel{bad_steep}, ConfigError);
}

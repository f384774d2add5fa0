#include "doctest.h"

#include <cmath>

#include "crossim/errors.hpp"
#include "crossim/fitness.hpp"
#include "crossim/rng.hpp"
#include "crossim/ttc.hpp"
#include "oracle.hpp"

using namespace crossim;

TEST_CASE("closed-form time to collision on hand-checked states") {
  // Straight shot: 20 m gap closing at 10 m/s, point target.
  CHECK(time_to_collision({20.0, 0.0}, {-10.0, 0.0}, 0.0) == doctest::Approx(2.0));
  // Separating objects never collide.
  CHECK(time_to_collision({10.0, 0.0}, {5.0, 0.0}, 1.2) == kTtcCap);
  // Already overlapping counts as zero time left.
  CHECK(time_to_collision({0.5, 0.0}, {3.0, 1.0}, 1.2) == 0.0);
  // No relative motion.
  CHECK(time_to_collision({10.0, 0.0}, {0.0, 0.0}, 1.2) == kTtcCap);
  // A real root beyond the cap still reads as the cap.
  CHECK(time_to_collision({100.0, 0.0}, {-10.0, 0.0}, 0.0) == kTtcCap);
  // Crossing pedestrian that misses: the quadratic has no real root and the
  // brute stepper agrees there is no contact.
  CHECK(time_to_collision({30.0, -3.0}, {-20.0, 1.5}, 0.3) == kTtcCap);
  CHECK(!oracle::brute_first_contact(30.0, -3.0, -20.0, 1.5, 0.3).has_value());
}

TEST_CASE("closed form matches the 1 ms brute-force stepper on random states") {
  Rng rng = make_rng(1234);
  int contacts = 0;
  for (int i = 0; i < 100; ++i) {
    double dx = uniform_in(rng, -50.0, 50.0);
    double dy = uniform_in(rng, -50.0, 50.0);
    double ux, uy;
    if (i % 2 == 0) {
      ux = uniform_in(rng, -30.0, 30.0);
      uy = uniform_in(rng, -30.0, 30.0);
    } else {
      // aim roughly at the origin so contact cases are well represented
      double k = uniform_in(rng, 0.3, 1.5);
      ux = -k * dx + uniform_in(rng, -2.0, 2.0);
      uy = -k * dy + uniform_in(rng, -2.0, 2.0);
    }
    double closed = time_to_collision({dx, dy}, {ux, uy}, 1.2);
    auto brute = oracle::brute_first_contact(dx, dy, ux, uy, 1.2);
    if (brute) {
      ++contacts;
      CHECK(std::abs(closed - *brute) <= 0.002);
    } else {
      CHECK(closed == kTtcCap);
    }
  }
  CHECK(contacts >= 20);
}

TEST_CASE("a pedestrian the sensor never sees scores the TTC cap") {
  TestInput in{10.0, -10.0, -5.0, 90.0, 1.0};  // starts behind the car
  ScenarioOutcome out = evaluate(in, SceneConfig{}, BackendConfig::alpha(), DetectorConfig{});
  CHECK(out.ff3 == kTtcCap);
  CHECK(!out.detected);
  CHECK(!out.detection_time.has_value());
  CHECK(out.backend == "alpha");
}

TEST_CASE("collision outcomes stay geometrically consistent") {
  TestInput in{10.0, 20.0, 0.0, 90.0, 0.0};  // standing on the path
  SceneConfig scene;
  ScenarioOutcome out = evaluate(in, scene, BackendConfig::alpha(), DetectorConfig{});
  CHECK(out.collision);
  CHECK(out.ff1 <= scene.ped_radius + 0.5 * scene.car_width);
  Classification cls = classify(out);
  CHECK(cls.critical);
}

TEST_CASE("ff1 is the minimum of the trace distance column") {
  InputSpace space = default_input_space(SceneConfig{});
  Rng rng = make_rng(77);
  for (int i = 0; i < 20; ++i) {
    TestInput in = space.sample(rng);
    ScenarioOutcome out = evaluate(in, SceneConfig{}, BackendConfig::alpha(), DetectorConfig{});
    SimulationTrace trace = simulate(in, SceneConfig{}, BackendConfig::alpha());
    double best = trace.samples.front().distance;
    for (const TraceSample& s : trace.samples) best = std::min(best, s.distance);
    CHECK(out.ff1 == best);
    CHECK(out.ff1 >= 0.0);
    CHECK(out.ff2 >= 0.0);
    CHECK(out.ff3 >= 0.0);
    CHECK(out.ff3 <= kTtcCap);
  }
}

TEST_CASE("a warning with zero margin forces ff2 to zero") {
  DetectorConfig strict;
  strict.awa_margin = 0.0;  // in-area only
  TestInput in{10.0, 15.0, -3.0, 90.0, 1.5};
  ScenarioOutcome out = evaluate(in, SceneConfig{}, BackendConfig::alpha(), strict);
  REQUIRE(out.detected);
  CHECK(out.ff2 == 0.0);
}

TEST_CASE("a zero-loss single-repeat channel equals the lossless path") {
  LossyChannelConfig channel;
  channel.loss_probability = 0.0;
  channel.repeats = 1;
  InputSpace space = default_input_space(SceneConfig{});
  Rng rng = make_rng(11);
  for (int i = 0; i < 10; ++i) {
    TestInput in = space.sample(rng);
    ScenarioOutcome plain = evaluate(in, SceneConfig{}, BackendConfig::alpha(), DetectorConfig{});
    ScenarioOutcome piped =
        evaluate(in, SceneConfig{}, BackendConfig::alpha(), DetectorConfig{}, channel, 5);
    CHECK(piped.ff1 == plain.ff1);
    CHECK(piped.ff2 == plain.ff2);
    CHECK(piped.ff3 == plain.ff3);
    CHECK(piped.collision == plain.collision);
    CHECK(piped.detected == plain.detected);
    CHECK(piped.termination == plain.termination);
  }
}

TEST_CASE("channel evaluation is deterministic in the seed") {
  LossyChannelConfig channel;  // defaults: 20% loss, 20 repeats
  TestInput in{18.0, 40.0, -6.0, 100.0, 3.0};
  ScenarioOutcome a =
      evaluate(in, SceneConfig{}, BackendConfig::alpha(), DetectorConfig{}, channel, 42);
  ScenarioOutcome b =
      evaluate(in, SceneConfig{}, BackendConfig::alpha(), DetectorConfig{}, channel, 42);
  CHECK(a.ff1 == b.ff1);
  CHECK(a.ff2 == b.ff2);
  CHECK(a.ff3 == b.ff3);
  CHECK(a.collision == b.collision);
  CHECK(a.detected == b.detected);
}

TEST_CASE("ground-truth TTC scoring exposes what the sensor missed") {
  // Pedestrian approaching on a collision course exactly along the edge of
  // an off-axis bearing: the 40-degree cone never contains it, so the
  // sensor-based ff3 stays at the cap while the ground-truth ff3 collapses.
  TestInput in{10.0, 20.0, -10.0, 90.0, 5.0};
  SceneConfig scene;

  DetectorConfig sensor_based;
  ScenarioOutcome reported = evaluate(in, scene, BackendConfig::alpha(), sensor_based);
  CHECK(reported.collision);
  CHECK(!reported.detected);
  CHECK(reported.ff3 == kTtcCap);

  DetectorConfig oracle_cfg;
  oracle_cfg.oracle_ttc = true;
  ScenarioOutcome truth = evaluate(in, scene, BackendConfig::alpha(), oracle_cfg);
  CHECK(truth.collision);
  CHECK(truth.ff3 <= 0.5);

  Classification cls = classify(reported);
  CHECK(cls.critical);
  CHECK(cls.violation);
}

TEST_CASE("classification thresholds") {
  ScenarioOutcome o;
  o.ff1 = 0.5;
  o.ff3 = 3.0;
  o.detected = true;
  Classification c = classify(o);
  CHECK(c.critical);  // near miss in space
  CHECK(!c.violation);

  o = ScenarioOutcome{};
  o.ff1 = 2.0;
  o.ff3 = 0.4;
  o.detected = false;
  c = classify(o);
  CHECK(c.critical);  // near miss in time
  CHECK(c.violation);

  o = ScenarioOutcome{};
  o.ff1 = 5.0;
  o.ff3 = 3.0;
  o.detected = false;
  c = classify(o);
  CHECK(!c.critical);
  CHECK(!c.violation);

  o = ScenarioOutcome{};
  o.ff1 = 1.0;  // boundary counts as critical
  o.ff3 = 4.0;
  c = classify(o);
  CHECK(c.critical);

  o = ScenarioOutcome{};
  o.ff1 = 3.0;
  o.ff3 = 0.5;  // boundary counts as critical
  c = classify(o);
  CHECK(c.critical);

  o = ScenarioOutcome{};
  o.ff1 = 9.0;
  o.ff3 = 4.0;
  o.collision = true;  // collision alone is critical
  c = classify(o);
  CHECK(c.critical);
}

TEST_CASE("scoring an empty trace is a data error") {
  SimulationTrace empty;
  CHECK_THROWS_AS(outcome_from_trace(empty, TestInput{}, SceneConfig{}, BackendConfig::alpha(),
                                     DetectorConfig{}),
                  DataError);
}

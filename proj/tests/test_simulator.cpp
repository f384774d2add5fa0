#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <vector>

#include "crossim/errors.hpp"
#include "crossim/simulator.hpp"
#include "oracle.hpp"

using namespace crossim;

namespace {

double min_trace_distance(const SimulationTrace& trace) {
  double best = trace.samples.front().distance;
  for (const TraceSample& s : trace.samples) best = std::min(best, s.distance);
  return best;
}

}  // namespace

TEST_CASE("backend presets and validation") {
  BackendConfig a = BackendConfig::alpha();
  CHECK(a.id == "alpha");
  CHECK(a.integrator == Integrator::ForwardEuler);
  CHECK(a.sample_period == doctest::Approx(0.04));
  CHECK(a.sensor_latency == 0);
  CHECK(a.frame.is_identity());
  CHECK_NOTHROW(a.validate());

  BackendConfig b = BackendConfig::beta();
  CHECK(b.id == "beta");
  CHECK(b.integrator == Integrator::SemiImplicit);
  CHECK(b.sensor_latency == 1);
  CHECK(b.position_quantum == doctest::Approx(0.1));
  CHECK(b.gait_amplitude > 0.0);
  CHECK(!b.frame.is_identity());
  CHECK(b.frame.speed_unit == SpeedUnit::KilometersPerHour);
  CHECK_NOTHROW(b.validate());

  CHECK(backend_by_id("alpha").id == "alpha");
  CHECK(backend_by_id("beta").id == "beta");
  CHECK_THROWS_AS(backend_by_id("gamma"), ConfigError);
  CHECK_THROWS_WITH_AS(backend_by_id("gamma"),
                       "unknown backend 'gamma' (valid backends: alpha, beta)", ConfigError);

  BackendConfig bad = a;
  bad.internal_dt = 0.03;  // does not divide the 0.04 sample period
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = a;
  bad.internal_dt = 0.08;  // bigger than the sample period
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = a;
  bad.sensor_fov_deg = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = a;
  bad.gait_amplitude = 1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("car advances at constant speed on the sample grid") {
  TestInput in{10.0, 85.0, -15.0, 90.0, 0.5};
  SimulationTrace trace = simulate(in, SceneConfig{}, BackendConfig::alpha());
  REQUIRE(trace.samples.size() > 25);
  const TraceSample& s = trace.samples[25];
  CHECK(s.t == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.car_pos.x == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(s.car_pos.y == 0.0);
  CHECK(s.car_vel.x == 10.0);
  for (std::size_t k = 0; k < trace.samples.size(); ++k) {
    CHECK(trace.samples[k].t == doctest::Approx(0.04 * k).epsilon(1e-12));
    CHECK(trace.samples[k].distance >= 0.0);
  }
}

TEST_CASE("a full-length run ends at the road end after exactly 4 seconds") {
  TestInput in{25.0, 85.0, -15.0, 40.0, 5.0};
  SimulationTrace trace = simulate(in, SceneConfig{}, BackendConfig::alpha());
  CHECK(trace.termination == Termination::RoadEnd);
  CHECK(trace.samples.size() == 101);  // 0..4 s at 25 Hz
  const TraceSample& last = trace.samples.back();
  CHECK(last.t == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(last.car_pos.x == doctest::Approx(100.0).epsilon(1e-9));
}

TEST_CASE("head-on collision time matches a 1 ms brute-force stepper") {
  // Car at 10 m/s, pedestrian standing on its path 20 m ahead. The brute
  // oracle steps the same kinematics on a fine grid and reports first
  // contact of the body disc with the footprint rectangle.
  const double v = 10.0, px = 20.0, py = 0.0, r = 0.3;
  const double half_len = 2.0, half_wid = 0.9;
  double contact = -1.0;
  for (int i = 0; i <= 4000; ++i) {
    double t = i * 0.001;
    double dx = std::max(std::abs(px - v * t) - half_len, 0.0);
    double dy = std::max(std::abs(py) - half_wid, 0.0);
    if (std::sqrt(dx * dx + dy * dy) <= r) {
      contact = t;
      break;
    }
  }
  REQUIRE(contact > 0.0);
  // analytic first touch: (20 - 2 - 0.3) / 10, up to one oracle step
  CHECK(std::abs(contact - 1.77) <= 1.5e-3);

  TestInput in{v, px, py, 90.0, 0.0};
  SimulationTrace trace = simulate(in, SceneConfig{}, BackendConfig::alpha());
  double first_flagged = -1.0;
  for (const TraceSample& s : trace.samples) {
    if (s.collision) {
      first_flagged = s.t;
      break;
    }
  }
  REQUIRE(first_flagged >= 0.0);
  // First flagged output sample is the first 40 ms tick at or after contact.
  CHECK(first_flagged == doctest::Approx(1.80).epsilon(1e-9));
  CHECK(first_flagged >= contact - 1e-9);
  CHECK(first_flagged - contact < 0.04 + 1e-3);
  CHECK(trace.termination == Termination::Passed);
}

TEST_CASE("crossing pedestrian terminates the run at the far edge") {
  TestInput in{5.0, 50.0, -2.0, 90.0, 5.0};
  SceneConfig scene;
  SimulationTrace trace = simulate(in, scene, BackendConfig::alpha());
  CHECK(trace.termination == Termination::Crossed);
  CHECK(trace.samples.back().t == doctest::Approx(0.76).epsilon(1e-9));
  CHECK(trace.samples.back().ped_pos.y >= scene.crossed_y() - 1e-9);
}

TEST_CASE("car passing the pedestrian terminates the run") {
  TestInput in{25.0, 25.0, -10.0, 270.0, 1.0};
  SceneConfig scene;
  SimulationTrace trace = simulate(in, scene, BackendConfig::alpha());
  CHECK(trace.termination == Termination::Passed);
  CHECK(trace.samples.back().t == doctest::Approx(1.12).epsilon(1e-9));
  const TraceSample& last = trace.samples.back();
  CHECK(last.car_pos.x - 0.5 * scene.car_length > last.ped_pos.x + scene.ped_radius);
}

TEST_CASE("simulate rejects non-positive car speed and negative walking speed") {
  CHECK_THROWS_AS(simulate({0.0, 40.0, -5.0, 90.0, 2.0}, SceneConfig{}, BackendConfig::alpha()),
                  DataError);
  CHECK_THROWS_AS(simulate({-5.0, 40.0, -5.0, 90.0, 2.0}, SceneConfig{}, BackendConfig::alpha()),
                  DataError);
  CHECK_THROWS_AS(simulate({10.0, 40.0, -5.0, 90.0, -1.0}, SceneConfig{}, BackendConfig::alpha()),
                  DataError);
}

TEST_CASE("simulation is deterministic") {
  TestInput in{14.0, 42.0, -6.0, 110.0, 3.0};
  SimulationTrace a = simulate(in, SceneConfig{}, BackendConfig::beta());
  SimulationTrace b = simulate(in, SceneConfig{}, BackendConfig::beta());
  REQUIRE(a.samples.size() == b.samples.size());
  CHECK(a.termination == b.termination);
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].ped_pos.x == b.samples[i].ped_pos.x);
    CHECK(a.samples[i].ped_pos.y == b.samples[i].ped_pos.y);
    CHECK(a.samples[i].sensor.visible == b.samples[i].sensor.visible);
  }
}

TEST_CASE("the car never overshoots the road by more than one sample") {
  InputSpace space = default_input_space(SceneConfig{});
  Rng rng = make_rng(5);
  SceneConfig scene;
  for (int i = 0; i < 50; ++i) {
    TestInput in = space.sample(rng);
    SimulationTrace trace = simulate(in, scene, BackendConfig::alpha());
    double travelled = trace.samples.back().car_pos.x - scene.car_x;
    CHECK(travelled <= scene.road_length + in.car_speed * 0.04 + 1e-9);
    if (trace.termination == Termination::Crossed)
      CHECK(trace.samples.back().ped_pos.y >= scene.crossed_y() - 1e-9);
  }
}

TEST_CASE("the two backends disagree on closest approach") {
  InputSpace space = default_input_space(SceneConfig{});
  BackendConfig alpha = BackendConfig::alpha();
  BackendConfig beta = BackendConfig::beta();
  Rng rng = make_rng(31);
  int differing = 0;
  for (int i = 0; i < 100; ++i) {
    TestInput in = space.sample(rng);
    double da = min_trace_distance(simulate(in, SceneConfig{}, alpha));
    TestInput in_beta = translate_input(in, FrameSpec::canonical(), beta.frame);
    double db = min_trace_distance(simulate(in_beta, SceneConfig{}, beta));
    if (std::abs(da - db) > 1e-9) ++differing;
  }
  CHECK(differing >= 1);
  CHECK(differing > 50);  // engineered divergence is not marginal
}

TEST_CASE("beta gait modulates the walking speed sinusoidally") {
  BackendConfig beta = BackendConfig::beta();
  TestInput canonical{10.0, 40.0, -5.0, 90.0, 2.0};
  TestInput in = translate_input(canonical, FrameSpec::canonical(), beta.frame);
  SimulationTrace trace = simulate(in, SceneConfig{}, beta);
  REQUIRE(trace.samples.size() > 10);
  for (int k : {1, 3, 7, 10}) {
    double t = trace.samples[k].t;
    double expected = 2.0 * (1.0 + beta.gait_amplitude * std::sin(2.0 * kPi * beta.gait_frequency * t));
    CHECK(trace.samples[k].ped_vel.norm() == doctest::Approx(expected).epsilon(1e-9));
  }

  BackendConfig alpha = BackendConfig::alpha();
  SimulationTrace flat = simulate(canonical, SceneConfig{}, alpha);
  for (int k : {1, 3, 7, 10}) CHECK(flat.samples[k].ped_vel.norm() == doctest::Approx(2.0));
}

TEST_CASE("integration scheme alone changes the trajectory once gait is on") {
  BackendConfig euler = BackendConfig::alpha();
  euler.gait_amplitude = 0.3;
  euler.gait_frequency = 1.0;
  BackendConfig semi = euler;
  semi.integrator = Integrator::SemiImplicit;

  TestInput in{10.0, 60.0, -10.0, 90.0, 2.0};
  SimulationTrace a = simulate(in, SceneConfig{}, euler);
  SimulationTrace b = simulate(in, SceneConfig{}, semi);
  // The schemes differ by the gait speed at the step boundaries, so probe at
  // t = 1.2 s, well off a whole gait period where that difference cancels.
  REQUIRE(a.samples.size() > 30);
  REQUIRE(b.samples.size() > 30);
  CHECK(std::abs(a.samples[30].ped_pos.y - b.samples[30].ped_pos.y) > 1e-6);
}

TEST_CASE("sensor range and field of view gate visibility") {
  // 81 m ahead is outside the 80 m range, 10 m is well inside.
  SimulationTrace far = simulate({10.0, 81.0, 0.0, 90.0, 0.0}, SceneConfig{}, BackendConfig::alpha());
  CHECK(!far.samples.front().sensor.visible);

  SimulationTrace near = simulate({10.0, 10.0, 0.0, 90.0, 0.0}, SceneConfig{}, BackendConfig::alpha());
  const SensorObservation& obs = near.samples.front().sensor;
  REQUIRE(obs.visible);
  CHECK(obs.rel_pos.x == doctest::Approx(10.0));
  CHECK(obs.rel_pos.y == doctest::Approx(0.0));
  CHECK(obs.rel_vel.x == doctest::Approx(-10.0));
  CHECK(obs.ttc == doctest::Approx(0.88));  // (10 - 1.2) / 10

  // The alpha cone is 40 degrees wide: 26.6 degrees off-axis is hidden,
  // 16.7 degrees is seen.
  SimulationTrace wide = simulate({1.0, 10.0, 5.0, 270.0, 0.5}, SceneConfig{}, BackendConfig::alpha());
  CHECK(!wide.samples.front().sensor.visible);
  SimulationTrace inside = simulate({1.0, 10.0, 3.0, 270.0, 0.5}, SceneConfig{}, BackendConfig::alpha());
  CHECK(inside.samples.front().sensor.visible);
}

TEST_CASE("reported positions snap to the quantization grid") {
  BackendConfig cfg = BackendConfig::alpha();
  cfg.position_quantum = 0.1;
  TraceSample s;
  s.t = 0.0;
  s.car_pos = {0.0, 0.0};
  s.car_vel = {10.0, 0.0};
  s.ped_pos = {12.34, 0.07};
  s.ped_vel = {0.0, 0.5};
  SensorObservation obs = observe(s, cfg, 1.2);
  REQUIRE(obs.visible);
  CHECK(obs.rel_pos.x == doctest::Approx(12.3).epsilon(1e-12));
  CHECK(obs.rel_pos.y == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(obs.rel_vel.x == doctest::Approx(-10.0));
  CHECK(obs.rel_vel.y == doctest::Approx(0.5));

  // TTC is projected from the quantized position; the brute stepper on the
  // same quantized state agrees within its own grid step.
  auto contact = oracle::brute_first_contact(12.3, 0.1, -10.0, 0.5, 1.2);
  REQUIRE(contact.has_value());
  CHECK(std::abs(obs.ttc - *contact) <= 0.002);

  cfg.position_quantum = 0.0;
  SensorObservation exact = observe(s, cfg, 1.2);
  CHECK(exact.rel_pos.x == 12.34);
  CHECK(exact.rel_pos.y == 0.07);
}

TEST_CASE("sensor latency delays the reported observation by whole samples") {
  BackendConfig lag = BackendConfig::alpha();
  lag.sensor_latency = 1;
  TestInput in{10.0, 10.0, 0.0, 90.0, 0.0};
  SimulationTrace trace = simulate(in, SceneConfig{}, lag);
  REQUIRE(trace.samples.size() >= 2);
  CHECK(!trace.samples[0].sensor.visible);  // nothing reported yet
  REQUIRE(trace.samples[1].sensor.visible);
  // At t=0.04 the stack reports what it saw at t=0.
  CHECK(trace.samples[1].sensor.rel_pos.x == doctest::Approx(10.0));

  SimulationTrace fresh = simulate(in, SceneConfig{}, BackendConfig::alpha());
  CHECK(fresh.samples[1].sensor.rel_pos.x == doctest::Approx(9.6));
}

TEST_CASE("a lossless channel reproduces the plain simulation") {
  TestInput in{12.0, 30.0, -5.0, 100.0, 2.0};
  LossyChannelConfig channel;
  channel.loss_probability = 0.0;
  Rng rng = make_rng(8);
  SimulationTrace full = simulate(in, SceneConfig{}, BackendConfig::alpha());
  SimulationTrace kept = simulate_with_loss(in, SceneConfig{}, BackendConfig::alpha(), channel, rng);
  REQUIRE(kept.samples.size() == full.samples.size());
  CHECK(kept.termination == full.termination);
  for (std::size_t i = 0; i < full.samples.size(); ++i)
    CHECK(kept.samples[i].t == full.samples[i].t);
}

TEST_CASE("sample loss keeps a timestamp subset at the configured rate") {
  TestInput in{1.0, 85.0, -15.0, 270.0, 1.0};  // long run, ~2200 samples
  SceneConfig scene;
  BackendConfig cfg = BackendConfig::alpha();
  SimulationTrace full = simulate(in, scene, cfg);
  REQUIRE(full.samples.size() > 2000);

  LossyChannelConfig channel;  // defaults: 20% loss
  long total = 0, dropped = 0;
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    Rng rng = make_rng(seed);
    SimulationTrace lossy = simulate_with_loss(in, scene, cfg, channel, rng);
    CHECK(lossy.termination == full.termination);
    total += static_cast<long>(full.samples.size());
    dropped += static_cast<long>(full.samples.size() - lossy.samples.size());

    // Surviving samples appear in order within the lossless trace.
    std::size_t cursor = 0;
    for (const TraceSample& s : lossy.samples) {
      while (cursor < full.samples.size() && full.samples[cursor].t != s.t) ++cursor;
      REQUIRE(cursor < full.samples.size());
      ++cursor;
    }
  }
  double fraction = static_cast<double>(dropped) / static_cast<double>(total);
  CHECK(fraction > 0.18);
  CHECK(fraction < 0.22);
}

TEST_CASE("mode aggregation of repeated outcomes") {
  auto mk = [](double ff1, double ff2, double ff3, bool coll, bool det) {
    ScenarioOutcome o;
    o.ff1 = ff1;
    o.ff2 = ff2;
    o.ff3 = ff3;
    o.collision = coll;
    o.detected = det;
    if (det) o.detection_time = 1.0;
    o.termination = Termination::Passed;
    o.backend = "alpha";
    return o;
  };

  SUBCASE("single outcome aggregates to itself exactly") {
    ScenarioOutcome o = mk(1.234567, 0.5, 3.9, true, true);
    o.detection_time = 2.48;
    o.termination = Termination::Crossed;
    ScenarioOutcome agg = aggregate_mode({o}, 0.01);
    CHECK(agg.ff1 == o.ff1);
    CHECK(agg.ff2 == o.ff2);
    CHECK(agg.ff3 == o.ff3);
    CHECK(agg.collision == o.collision);
    CHECK(agg.detected == o.detected);
    CHECK(agg.detection_time == o.detection_time);
    CHECK(agg.termination == o.termination);
  }

  SUBCASE("the most popular bucket wins") {
    ScenarioOutcome agg =
        aggregate_mode({mk(2.00, 0, 4, false, false), mk(2.00, 0, 4, false, false),
                        mk(2.01, 0, 4, false, false)},
                       0.01);
    CHECK(agg.ff1 == doctest::Approx(2.00));
  }

  SUBCASE("bucket ties break toward the smaller value") {
    ScenarioOutcome agg = aggregate_mode({mk(1.00, 0, 4, false, false), mk(2.00, 0, 4, false, false)}, 0.01);
    CHECK(agg.ff1 == doctest::Approx(1.00));
  }

  SUBCASE("the winning bucket is represented by its smallest member") {
    ScenarioOutcome agg = aggregate_mode({mk(2.004, 0, 4, false, false), mk(1.996, 0, 4, false, false)}, 0.01);
    CHECK(agg.ff1 == 1.996);  // both fall into the 2.00 bucket
  }

  SUBCASE("flag votes break toward the unsafe side") {
    ScenarioOutcome agg = aggregate_mode({mk(1, 0, 4, true, true), mk(1, 0, 4, false, false)}, 0.01);
    CHECK(agg.collision);       // tie counts as collision
    CHECK(!agg.detected);       // tie counts as missed
    CHECK(!agg.detection_time.has_value());
  }

  SUBCASE("majorities carry flags, terminations and detection times") {
    ScenarioOutcome a = mk(1, 0, 4, true, true);
    a.detection_time = 0.5;
    ScenarioOutcome b = mk(1, 0, 4, true, true);
    b.detection_time = 0.5;
    ScenarioOutcome c = mk(1, 0, 4, false, true);
    c.detection_time = 0.9;
    c.termination = Termination::Crossed;
    ScenarioOutcome agg = aggregate_mode({a, b, c}, 0.01);
    CHECK(agg.collision);
    CHECK(agg.detected);
    CHECK(agg.detection_time == doctest::Approx(0.5));
    CHECK(agg.termination == Termination::Passed);
  }

  SUBCASE("empty aggregation is a data error") {
    CHECK_THROWS_AS(aggregate_mode({}, 0.01), DataError);
  }
}

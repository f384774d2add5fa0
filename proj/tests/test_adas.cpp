#include "doctest.h"

#include <cmath>

#include "crossim/adas.hpp"
#include "crossim/errors.hpp"
#include "crossim/geometry.hpp"
#include "crossim/simulator.hpp"

using namespace crossim;

TEST_CASE("warning area grows linearly with ego speed") {
  DetectorConfig cfg;  // base 5 m, headway 1.4 s
  CHECK(compute_awa(0.0, cfg).length == doctest::Approx(5.0));
  CHECK(compute_awa(10.0, cfg).length == doctest::Approx(19.0));
  CHECK(compute_awa(25.0, cfg).length > compute_awa(1.0, cfg).length);
  AwaSpec awa = compute_awa(10.0, cfg);
  CHECK(awa.width == doctest::Approx(3.5));
  CHECK(awa.front_anchor == doctest::Approx(2.0));
  CHECK(awa.lateral_offset == 0.0);
}

TEST_CASE("detector configuration validation") {
  DetectorConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.awa_margin = -0.1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = DetectorConfig{};
  cfg.ttc_threshold = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = DetectorConfig{};
  cfg.awa_width = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("point-to-area distance covers inside, edge and corner cases") {
  DetectorConfig cfg;
  AwaSpec awa = compute_awa(10.0, cfg);  // spans x in [2, 21], y in [-1.75, 1.75]
  Vec2 car{0.0, 0.0};
  CHECK(distance_to_awa({11.5, 0.0}, awa, car) == doctest::Approx(0.0));
  CHECK(distance_to_awa({2.0, 1.75}, awa, car) == doctest::Approx(0.0));   // boundary
  CHECK(distance_to_awa({22.0, 0.0}, awa, car) == doctest::Approx(1.0));   // beyond far edge
  CHECK(distance_to_awa({-1.0, -5.75}, awa, car) == doctest::Approx(5.0)); // 3-4-5 corner
  // The area rides along with the car.
  CHECK(distance_to_awa({32.0, 0.0}, awa, {10.0, 0.0}) == doctest::Approx(1.0));
}

TEST_CASE("warning rule: reported, in or near the area, converging soon enough") {
  DetectorConfig cfg;
  AwaSpec awa = compute_awa(10.0, cfg);

  SensorObservation obs;
  obs.visible = true;
  obs.rel_pos = {11.5, 0.0};  // area center
  obs.rel_vel = {-10.0, 0.0};
  obs.ttc = 1.0;
  CHECK(warns(obs, awa, cfg));

  SensorObservation hidden = obs;
  hidden.visible = false;
  CHECK(!warns(hidden, awa, cfg));

  SensorObservation nearby = obs;
  nearby.rel_pos = {21.2, 0.0};  // 0.2 m past the far edge, exactly the margin
  CHECK(warns(nearby, awa, cfg));
  nearby.rel_pos = {21.3, 0.0};  // 0.3 m out, past the margin
  CHECK(!warns(nearby, awa, cfg));

  SensorObservation slow = obs;
  slow.ttc = cfg.ttc_threshold;  // not strictly below
  CHECK(!warns(slow, awa, cfg));
  slow.ttc = cfg.ttc_threshold - 1e-9;
  CHECK(warns(slow, awa, cfg));
}

TEST_CASE("margin growth never retracts a warning") {
  DetectorConfig tight;
  DetectorConfig loose;
  loose.awa_margin = 0.5;
  TestInput in{10.0, 15.0, -3.0, 90.0, 1.5};
  SimulationTrace trace = simulate(in, SceneConfig{}, BackendConfig::alpha());
  DetectionEvent a = run_detector(trace, tight);
  DetectionEvent b = run_detector(trace, loose);
  REQUIRE(a.warned.size() == b.warned.size());
  for (std::size_t i = 0; i < a.warned.size(); ++i)
    if (a.warned[i]) CHECK(b.warned[i]);
}

TEST_CASE("first warning fires at the first qualifying sample") {
  // Pedestrian walks up into the warning band: crosses within margin reach
  // of the area edge between t=0.68 and t=0.72.
  DetectorConfig cfg;
  TestInput in{10.0, 15.0, -3.0, 90.0, 1.5};
  SimulationTrace trace = simulate(in, SceneConfig{}, BackendConfig::alpha());
  DetectionEvent event = run_detector(trace, cfg);
  REQUIRE(event.detected());
  CHECK(*event.first_time == doctest::Approx(0.72).epsilon(1e-9));

  // Independent re-derivation from the trace itself.
  AwaSpec awa = compute_awa(10.0, cfg);
  std::size_t first = trace.samples.size();
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    const SensorObservation& obs = trace.samples[i].sensor;
    double dx = std::max(std::abs(obs.rel_pos.x - (awa.front_anchor + 0.5 * awa.length)) -
                             0.5 * awa.length,
                         0.0);
    double dy = std::max(std::abs(obs.rel_pos.y) - 0.5 * awa.width, 0.0);
    bool expect = obs.visible && std::hypot(dx, dy) <= cfg.awa_margin && obs.ttc < cfg.ttc_threshold;
    CHECK(event.warned[i] == expect);
    if (expect && first == trace.samples.size()) first = i;
  }
  REQUIRE(first < trace.samples.size());
  CHECK(*event.first_time == trace.samples[first].t);

  // Once warnings start they must not precede visibility.
  std::size_t first_visible = 0;
  while (first_visible < trace.samples.size() && !trace.samples[first_visible].sensor.visible)
    ++first_visible;
  CHECK(first >= first_visible);
}

TEST_CASE("one sample of sensor latency delays the first warning by one sample") {
  DetectorConfig cfg;
  BackendConfig lag = BackendConfig::alpha();
  lag.sensor_latency = 1;
  TestInput in{10.0, 15.0, -3.0, 90.0, 1.5};
  DetectionEvent base = run_detector(simulate(in, SceneConfig{}, BackendConfig::alpha()), cfg);
  DetectionEvent late = run_detector(simulate(in, SceneConfig{}, lag), cfg);
  REQUIRE(base.detected());
  REQUIRE(late.detected());
  CHECK(*late.first_time == doctest::Approx(*base.first_time + 0.04).epsilon(1e-9));
}

TEST_CASE("a pedestrian the sensor never reports is never warned about") {
  TestInput in{10.0, -10.0, -5.0, 90.0, 1.0};  // behind the car, outside the cone
  SimulationTrace trace = simulate(in, SceneConfig{}, BackendConfig::alpha());
  for (const TraceSample& s : trace.samples) CHECK(!s.sensor.visible);
  DetectionEvent event = run_detector(trace, DetectorConfig{});
  CHECK(!event.detected());
  for (bool w : event.warned) CHECK(!w);
}

TEST_CASE("the detector observes without touching the trace") {
  TestInput in{10.0, 15.0, -3.0, 90.0, 1.5};
  SimulationTrace trace = simulate(in, SceneConfig{}, BackendConfig::alpha());
  SimulationTrace copy = trace;
  run_detector(trace, DetectorConfig{});
  REQUIRE(copy.samples.size() == trace.samples.size());
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    CHECK(trace.samples[i].t == copy.samples[i].t);
    CHECK(trace.samples[i].ped_pos.x == copy.samples[i].ped_pos.x);
    CHECK(trace.samples[i].ped_pos.y == copy.samples[i].ped_pos.y);
    CHECK(trace.samples[i].sensor.visible == copy.samples[i].sensor.visible);
    CHECK(trace.samples[i].sensor.ttc == copy.samples[i].sensor.ttc);
  }
  CHECK(trace.termination == copy.termination);
}

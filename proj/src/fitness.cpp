#include "crossim/fitness.hpp"

#include <algorithm>
#include <limits>

#include "crossim/errors.hpp"
#include "crossim/rng.hpp"
#include "crossim/ttc.hpp"

namespace crossim {

ScenarioOutcome outcome_from_trace(const SimulationTrace& trace, const TestInput& input,
                                   const SceneConfig& scene, const BackendConfig& cfg,
                                   const DetectorConfig& detector) {
  if (trace.samples.empty()) throw DataError("cannot score an empty trace");

  ScenarioOutcome out;
  out.input = input;
  out.backend = cfg.id;
  out.termination = trace.termination;

  DetectionEvent event = run_detector(trace, detector);
  out.detected = event.detected();
  out.detection_time = event.first_time;

  AwaSpec awa = compute_awa(trace.samples.front().car_vel.norm(), detector);
  const double cr = scene.collision_radius();

  double ff1 = std::numeric_limits<double>::infinity();
  double ff2 = std::numeric_limits<double>::infinity();
  double ff3 = kTtcCap;  // stays at the cap when nothing is ever reported
  bool collision = false;
  for (const TraceSample& s : trace.samples) {
    ff1 = std::min(ff1, s.distance);
    ff2 = std::min(ff2, distance_to_awa(s.ped_pos, awa, s.car_pos));
    collision = collision || s.collision;
    if (detector.oracle_ttc) {
      ff3 = std::min(ff3, time_to_collision(s.ped_pos - s.car_pos, s.ped_vel - s.car_vel, cr));
    } else if (s.sensor.visible) {
      ff3 = std::min(ff3, s.sensor.ttc);
    }
  }
  out.ff1 = ff1;
  out.ff2 = ff2;
  out.ff3 = std::clamp(ff3, 0.0, kTtcCap);
  out.collision = collision;
  return out;
}

ScenarioOutcome evaluate(const TestInput& input, const SceneConfig& scene,
                         const BackendConfig& cfg, const DetectorConfig& detector,
                         const std::optional<LossyChannelConfig>& channel, std::uint64_t seed) {
  if (!channel) {
    SimulationTrace trace = simulate(input, scene, cfg);
    return outcome_from_trace(trace, input, scene, cfg, detector);
  }
  channel->validate();
  std::vector<ScenarioOutcome> outcomes;
  outcomes.reserve(channel->repeats);
  for (int r = 0; r < channel->repeats; ++r) {
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    SimulationTrace trace = simulate_with_loss(input, scene, cfg, *channel, rng);
    outcomes.push_back(outcome_from_trace(trace, input, scene, cfg, detector));
  }
  return aggregate_mode(outcomes, channel->precision);
}

}  // namespace crossim

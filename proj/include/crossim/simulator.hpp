#pragma once

#include <string>
#include <vector>

#include "crossim/outcome.hpp"
#include "crossim/scene.hpp"

namespace crossim {

enum class Integrator { ForwardEuler, SemiImplicit };

/// Per-backend simulation parameters. The two presets, alpha() and beta(),
/// are intentionally different in integration scheme, step sizes, sensor
/// model and coordinate conventions, so that agreement between them means
/// something.
struct BackendConfig {
  std::string id = "alpha";
  Integrator integrator = Integrator::ForwardEuler;
  double internal_dt = 0.010;    // integration step [s]
  double sample_period = 0.040;  // trace output cadence [s]
  double sensor_range = 80.0;    // [m]
  double sensor_fov_deg = 40.0;  // full opening angle around the car heading
  int sensor_latency = 0;        // observation delay in whole samples
  double position_quantum = 0.0; // reported positions snap to this grid, 0 = exact
  double gait_amplitude = 0.0;   // pedestrian speed modulation, fraction of nominal
  double gait_frequency = 0.0;   // [Hz]
  FrameSpec frame;

  void validate() const;  // throws ConfigError

  static BackendConfig alpha();
  static BackendConfig beta();
};

/// Resolve a backend preset by name ("alpha" or "beta").
BackendConfig backend_by_id(const std::string& id);

/// What the perception stack reports at one sample: pedestrian position and
/// velocity relative to the car, plus the time-to-collision projected from
/// them. Positions may be quantized and stale depending on the backend.
struct SensorObservation {
  bool visible = false;
  Vec2 rel_pos;
  Vec2 rel_vel;
  double ttc = kTtcCap;
};

struct TraceSample {
  double t = 0.0;
  Vec2 car_pos;
  Vec2 car_vel;
  Vec2 ped_pos;
  Vec2 ped_vel;
  double distance = 0.0;  // car reference point to pedestrian, ground truth
  bool collision = false; // pedestrian disc touches the car footprint
  SensorObservation sensor;
};

/// Samples are on the backend's output grid in canonical coordinates.
/// Lossless traces have constant spacing; traces that went through a lossy
/// channel keep a subset of the grid.
struct SimulationTrace {
  std::vector<TraceSample> samples;
  Termination termination = Termination::RoadEnd;
};

/// Run one scenario to termination. The input is interpreted in the
/// backend's frame; the trace itself is canonical.
SimulationTrace simulate(const TestInput& input, const SceneConfig& scene,
                         const BackendConfig& cfg);

/// Visibility, quantization and TTC projection for one ground-truth sample.
/// collision_radius is the combined car/pedestrian disc used for the TTC.
SensorObservation observe(const TraceSample& sample, const BackendConfig& cfg,
                          double collision_radius);

struct LossyChannelConfig {
  double loss_probability = 0.2;  // each sample dropped i.i.d.
  int repeats = 20;               // evaluations aggregated per scenario
  double precision = 0.01;        // aggregation grid
  void validate() const;
};

/// Same scenario, but each output sample survives only with probability
/// 1 - loss_probability. At least the final sample is always kept so the
/// trace is never empty.
SimulationTrace simulate_with_loss(const TestInput& input, const SceneConfig& scene,
                                   const BackendConfig& cfg, const LossyChannelConfig& channel,
                                   Rng& rng);

/// Combine repeated noisy evaluations of one scenario into a stable outcome:
/// per objective, bucket values on the precision grid, keep the most popular
/// bucket (ties toward the smaller value) and return the smallest original
/// value in it; flags go by majority vote. A single outcome aggregates to
/// itself exactly.
ScenarioOutcome aggregate_mode(const std::vector<ScenarioOutcome>& outcomes, double precision);

}  // namespace crossim

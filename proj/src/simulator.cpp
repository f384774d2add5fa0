#include "crossim/simulator.hpp"

#include <cmath>
#include <cstdint>
#include <map>

#include "crossim/errors.hpp"
#include "crossim/geometry.hpp"

namespace crossim {

void BackendConfig::validate() const {
  if (internal_dt <= 0.0) throw ConfigError("backend internal_dt must be positive");
  if (sample_period <= 0.0) throw ConfigError("backend sample_period must be positive");
  long substeps = std::lround(sample_period / internal_dt);
  if (substeps < 1 || std::abs(substeps * internal_dt - sample_period) > 1e-9)
    throw ConfigError("backend sample_period must be a whole multiple of internal_dt");
  if (sensor_range <= 0.0) throw ConfigError("backend sensor_range must be positive");
  if (sensor_fov_deg <= 0.0 || sensor_fov_deg > 360.0)
    throw ConfigError("backend sensor_fov must be in (0, 360]");
  if (sensor_latency < 0) throw ConfigError("backend sensor_latency must be non-negative");
  if (position_quantum < 0.0) throw ConfigError("backend position_quantum must be non-negative");
  if (gait_amplitude < 0.0 || gait_amplitude >= 1.0)
    throw ConfigError("backend gait_amplitude must be in [0, 1)");
  if (gait_frequency < 0.0) throw ConfigError("backend gait_frequency must be non-negative");
}

BackendConfig BackendConfig::alpha() {
  BackendConfig c;
  c.id = "alpha";
  c.integrator = Integrator::ForwardEuler;
  c.internal_dt = 0.010;
  c.sample_period = 0.040;
  c.sensor_range = 80.0;
  c.sensor_fov_deg = 40.0;
  c.sensor_latency = 0;
  c.position_quantum = 0.0;
  c.gait_amplitude = 0.0;
  c.gait_frequency = 0.0;
  c.frame = FrameSpec::canonical();
  return c;
}

BackendConfig BackendConfig::beta() {
  BackendConfig c;
  c.id = "beta";
  c.integrator = Integrator::SemiImplicit;
  c.internal_dt = 0.005;
  c.sample_period = 0.040;
  c.sensor_range = 60.0;
  c.sensor_fov_deg = 50.0;
  c.sensor_latency = 1;
  c.position_quantum = 0.1;
  c.gait_amplitude = 0.10;  // walking is not a constant glide
  c.gait_frequency = 2.0;
  c.frame.origin_x = 150.0;
  c.frame.origin_y = -30.0;
  c.frame.heading_zero_deg = 90.0;  // angles measured clockwise from "north"
  c.frame.clockwise = true;
  c.frame.speed_unit = SpeedUnit::KilometersPerHour;
  return c;
}

BackendConfig backend_by_id(const std::string& id) {
  if (id == "alpha") return BackendConfig::alpha();
  if (id == "beta") return BackendConfig::beta();
  throw ConfigError("unknown backend '" + id + "' (valid backends: alpha, beta)");
}

SensorObservation observe(const TraceSample& sample, const BackendConfig& cfg,
                          double collision_radius) {
  SensorObservation obs;
  Vec2 rel = sample.ped_pos - sample.car_pos;
  if (rel.norm() > cfg.sensor_range) return obs;
  double bearing_deg = rad2deg(std::atan2(rel.y, rel.x));  // car always heads +x
  if (std::abs(bearing_deg) > 0.5 * cfg.sensor_fov_deg) return obs;
  obs.visible = true;
  obs.rel_pos = rel;
  if (cfg.position_quantum > 0.0) {
    obs.rel_pos.x = std::round(rel.x / cfg.position_quantum) * cfg.position_quantum;
    obs.rel_pos.y = std::round(rel.y / cfg.position_quantum) * cfg.position_quantum;
  }
  obs.rel_vel = sample.ped_vel - sample.car_vel;
  obs.ttc = time_to_collision(obs.rel_pos, obs.rel_vel, collision_radius);
  return obs;
}

SimulationTrace simulate(const TestInput& input, const SceneConfig& scene,
                         const BackendConfig& cfg) {
  cfg.validate();
  scene.validate();
  TestInput in = to_canonical(input, cfg.frame);
  if (in.car_speed <= 0.0) throw DataError("car speed must be positive");
  if (in.ped_speed < 0.0) throw DataError("pedestrian speed must be non-negative");

  const int substeps = static_cast<int>(std::lround(cfg.sample_period / cfg.internal_dt));
  const double dt = cfg.internal_dt;
  const double gait_w = 2.0 * kPi * cfg.gait_frequency;
  const double heading = deg2rad(in.ped_heading_deg);
  const Vec2 dir{std::cos(heading), std::sin(heading)};
  auto ped_speed_at = [&](double t) {
    return in.ped_speed * (1.0 + cfg.gait_amplitude * std::sin(gait_w * t));
  };

  const Vec2 car_vel{in.car_speed, 0.0};
  Vec2 ped{in.ped_x, in.ped_y};
  const double r = scene.ped_radius;
  // Road-end bounds the run; anything beyond that means the stop logic broke.
  const long max_samples =
      2 + static_cast<long>(std::ceil(scene.road_length / (in.car_speed * cfg.sample_period)));

  SimulationTrace trace;
  for (long k = 0;; ++k) {
    if (k > max_samples) throw DataError("simulation failed to terminate");
    const double t = k * cfg.sample_period;
    TraceSample s;
    s.t = t;
    s.car_pos = {scene.car_x + in.car_speed * t, scene.car_y};
    s.car_vel = car_vel;
    s.ped_pos = ped;
    s.ped_vel = dir * ped_speed_at(t);
    s.distance = distance(s.car_pos, s.ped_pos);
    s.collision =
        rect_distance(s.ped_pos, s.car_pos, 0.5 * scene.car_length, 0.5 * scene.car_width) <= r;
    trace.samples.push_back(s);

    if (s.car_pos.x - scene.car_x >= scene.road_length - 1e-9) {
      trace.termination = Termination::RoadEnd;
      break;
    }
    if (s.ped_pos.y >= scene.crossed_y()) {
      trace.termination = Termination::Crossed;
      break;
    }
    if (s.car_pos.x - 0.5 * scene.car_length > s.ped_pos.x + r) {
      trace.termination = Termination::Passed;
      break;
    }

    for (int i = 0; i < substeps; ++i) {
      double ts = t + i * dt;
      // Forward Euler steps with the speed at the start of the step, the
      // semi-implicit variant with the speed at its end.
      double v = cfg.integrator == Integrator::ForwardEuler ? ped_speed_at(ts)
                                                           : ped_speed_at(ts + dt);
      ped = ped + dir * (v * dt);
    }
  }

  const double cr = scene.collision_radius();
  std::vector<SensorObservation> raw(trace.samples.size());
  for (std::size_t i = 0; i < trace.samples.size(); ++i)
    raw[i] = observe(trace.samples[i], cfg, cr);
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    // With latency L the stack reports at sample k what it saw at k - L.
    if (static_cast<long>(i) >= cfg.sensor_latency)
      trace.samples[i].sensor = raw[i - cfg.sensor_latency];
  }
  return trace;
}

void LossyChannelConfig::validate() const {
  if (loss_probability < 0.0 || loss_probability >= 1.0)
    throw ConfigError("channel loss_probability must be in [0, 1)");
  if (repeats < 1) throw ConfigError("channel repeats must be at least 1");
  if (precision <= 0.0) throw ConfigError("channel precision must be positive");
}

SimulationTrace simulate_with_loss(const TestInput& input, const SceneConfig& scene,
                                   const BackendConfig& cfg, const LossyChannelConfig& channel,
                                   Rng& rng) {
  channel.validate();
  SimulationTrace full = simulate(input, scene, cfg);
  SimulationTrace out;
  out.termination = full.termination;
  for (const TraceSample& s : full.samples)
    if (!(uniform01(rng) < channel.loss_probability)) out.samples.push_back(s);
  if (out.samples.empty()) out.samples.push_back(full.samples.back());
  return out;
}

namespace {

// Most popular precision bucket; ties go to the smaller bucket, and the
// bucket is represented by the smallest original value it holds, which keeps
// single-element aggregation exact.
double modal_value(const std::vector<double>& values, double precision) {
  std::map<long long, std::pair<int, double>> bins;  // key -> (count, min original)
  for (double v : values) {
    long long key = std::llround(v / precision);
    auto [it, inserted] = bins.try_emplace(key, 1, v);
    if (!inserted) {
      it->second.first += 1;
      it->second.second = std::min(it->second.second, v);
    }
  }
  int best = -1;
  double rep = 0.0;
  for (const auto& [key, bin] : bins) {  // ascending keys, so '>' favors smaller ties
    if (bin.first > best) {
      best = bin.first;
      rep = bin.second;
    }
  }
  return rep;
}

}  // namespace

ScenarioOutcome aggregate_mode(const std::vector<ScenarioOutcome>& outcomes, double precision) {
  if (outcomes.empty()) throw DataError("aggregate_mode needs at least one outcome");
  if (precision <= 0.0) throw ConfigError("aggregation precision must be positive");

  const std::size_t n = outcomes.size();
  std::vector<double> ff1, ff2, ff3;
  ff1.reserve(n);
  ff2.reserve(n);
  ff3.reserve(n);
  std::size_t collisions = 0, detections = 0;
  std::size_t term_counts[3] = {0, 0, 0};
  for (const ScenarioOutcome& o : outcomes) {
    ff1.push_back(o.ff1);
    ff2.push_back(o.ff2);
    ff3.push_back(o.ff3);
    collisions += o.collision ? 1 : 0;
    detections += o.detected ? 1 : 0;
    term_counts[static_cast<int>(o.termination)] += 1;
  }

  ScenarioOutcome agg = outcomes.front();
  agg.ff1 = modal_value(ff1, precision);
  agg.ff2 = modal_value(ff2, precision);
  agg.ff3 = modal_value(ff3, precision);
  agg.collision = 2 * collisions >= n;  // tied vote counts as a collision
  agg.detected = 2 * detections > n;    // tied vote counts as missed

  agg.detection_time.reset();
  if (agg.detected) {
    std::vector<double> times;
    for (const ScenarioOutcome& o : outcomes)
      if (o.detected && o.detection_time) times.push_back(*o.detection_time);
    if (!times.empty()) agg.detection_time = modal_value(times, precision);
  }

  int best_term = 0;
  for (int i = 1; i < 3; ++i)
    if (term_counts[i] > term_counts[best_term]) best_term = i;
  agg.termination = static_cast<Termination>(best_term);
  return agg;
}

}  // namespace crossim

#include "crossim/adas.hpp"

#include "crossim/errors.hpp"

namespace crossim {

void DetectorConfig::validate() const {
  if (awa_margin < 0.0) throw ConfigError("detector margin must be non-negative");
  if (ttc_threshold <= 0.0) throw ConfigError("detector ttc_threshold must be positive");
  if (awa_headway < 0.0) throw ConfigError("detector headway must be non-negative");
  if (awa_base_length < 0.0) throw ConfigError("detector base_length must be non-negative");
  if (awa_width <= 0.0) throw ConfigError("detector awa_width must be positive");
}

AwaSpec compute_awa(double car_speed, const DetectorConfig& cfg) {
  AwaSpec awa;
  awa.length = cfg.awa_base_length + cfg.awa_headway * car_speed;
  awa.width = cfg.awa_width;
  awa.lateral_offset = cfg.awa_lateral_offset;
  awa.front_anchor = cfg.front_anchor;
  return awa;
}

double distance_to_awa(const Vec2& ped_pos, const AwaSpec& awa, const Vec2& car_pos) {
  Vec2 center{car_pos.x + awa.front_anchor + 0.5 * awa.length, car_pos.y + awa.lateral_offset};
  return rect_distance(ped_pos, center, 0.5 * awa.length, 0.5 * awa.width);
}

bool warns(const SensorObservation& obs, const AwaSpec& awa, const DetectorConfig& cfg) {
  if (!obs.visible) return false;
  // The detector only has the reported relative position to work with, so
  // the area test runs in car-local coordinates.
  Vec2 center{awa.front_anchor + 0.5 * awa.length, awa.lateral_offset};
  if (rect_distance(obs.rel_pos, center, 0.5 * awa.length, 0.5 * awa.width) > cfg.awa_margin)
    return false;
  return obs.ttc < cfg.ttc_threshold;  // strictly below; at the cap means "no course"
}

DetectionEvent run_detector(const SimulationTrace& trace, const DetectorConfig& cfg) {
  cfg.validate();
  DetectionEvent event;
  event.warned.reserve(trace.samples.size());
  if (trace.samples.empty()) return event;
  // Ego speed is constant over a run, so one area serves the whole trace.
  AwaSpec awa = compute_awa(trace.samples.front().car_vel.norm(), cfg);
  for (const TraceSample& s : trace.samples) {
    bool w = warns(s.sensor, awa, cfg);
    event.warned.push_back(w);
    if (w && !event.first_time) event.first_time = s.t;
  }
  return event;
}

}  // namespace crossim

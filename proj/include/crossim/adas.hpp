#pragma once

#include <optional>
#include <vector>

#include "crossim/simulator.hpp"

namespace crossim {

/// Tuning of the collision warning function.
struct DetectorConfig {
  double awa_margin = 0.2;        // slack around the warning area [m]
  double ttc_threshold = kTtcCap; // warn only when reported TTC is below this [s]
  double awa_headway = 1.4;       // speed-dependent part of the area length [s]
  double awa_base_length = 5.0;   // speed-independent part [m]
  double awa_width = 3.5;         // one lane
  double awa_lateral_offset = 0.0;
  double front_anchor = 2.0;      // area starts here ahead of the car reference point
  bool oracle_ttc = false;        // score ff3 from ground truth instead of the sensor

  void validate() const;
};

/// The attention area in front of the car, in car-local coordinates: it
/// spans [front_anchor, front_anchor + length] ahead and is centered on
/// lateral_offset. Grows with ego speed so faster cars look further ahead.
struct AwaSpec {
  double length = 0.0;
  double width = 0.0;
  double lateral_offset = 0.0;
  double front_anchor = 0.0;
};

AwaSpec compute_awa(double car_speed, const DetectorConfig& cfg);

/// Ground-truth distance from a pedestrian position to the warning area of a
/// car at car_pos heading +x. Zero inside the area.
double distance_to_awa(const Vec2& ped_pos, const AwaSpec& awa, const Vec2& car_pos);

/// One sensor report against the warning rule: warn when something is
/// reported inside the (margin-grown) area on a collision course sooner than
/// the TTC threshold.
bool warns(const SensorObservation& obs, const AwaSpec& awa, const DetectorConfig& cfg);

/// Warning activity over a whole trace.
struct DetectionEvent {
  std::optional<double> first_time;  // first warning instant
  std::vector<bool> warned;          // aligned with the trace samples

  bool detected() const { return first_time.has_value(); }
};

DetectionEvent run_detector(const SimulationTrace& trace, const DetectorConfig& cfg);

}  // namespace crossim

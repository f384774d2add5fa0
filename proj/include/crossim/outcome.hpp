#pragma once

#include <array>
#include <optional>
#include <string>

#include "crossim/scene.hpp"
#include "crossim/ttc.hpp"

namespace crossim {

/// Why a simulation run stopped. Exactly one reason per run; checked in this
/// order when several hold at the same sample.
enum class Termination { RoadEnd, Crossed, Passed };

const char* termination_name(Termination t);
Termination termination_from_name(const std::string& name);  // throws DataError

/// Everything the pipeline keeps about one evaluated scenario. The three
/// objectives are minimized by the search:
///   ff1  closest car/pedestrian approach [m]
///   ff2  closest pedestrian approach to the warning area [m]
///   ff3  smallest sensor-reported time to collision [s], capped
struct ScenarioOutcome {
  double ff1 = 0.0;
  double ff2 = 0.0;
  double ff3 = kTtcCap;
  bool collision = false;
  bool detected = false;
  std::optional<double> detection_time;  // first warning instant, if any
  Termination termination = Termination::RoadEnd;
  std::string backend;   // backend the scenario ran on
  TestInput input;       // as submitted, in that backend's frame

  std::array<double, 3> objectives() const { return {ff1, ff2, ff3}; }
};

/// A scenario is critical when it collides or gets dangerously close in
/// space or time; it violates the safety requirement when, on top of that,
/// the warning system stayed silent.
struct Classification {
  bool critical = false;
  bool violation = false;
};

Classification classify(const ScenarioOutcome& outcome);

inline constexpr double kCriticalDistance = 1.0;  // ff1 at or below => critical
inline constexpr double kCriticalTtc = 0.5;       // ff3 at or below => critical

}  // namespace crossim

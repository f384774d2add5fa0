#include "crossim/outcome.hpp"

#include "crossim/errors.hpp"

namespace crossim {

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::RoadEnd: return "road-end";
    case Termination::Crossed: return "crossed";
    case Termination::Passed: return "passed";
  }
  throw DataError("invalid termination value");
}

Termination termination_from_name(const std::string& name) {
  if (name == "road-end") return Termination::RoadEnd;
  if (name == "crossed") return Termination::Crossed;
  if (name == "passed") return Termination::Passed;
  throw DataError("unknown termination '" + name + "'");
}

Classification classify(const ScenarioOutcome& outcome) {
  Classification c;
  c.critical = outcome.collision || outcome.ff1 <= kCriticalDistance || outcome.ff3 <= kCriticalTtc;
  c.violation = c.critical && !outcome.detected;
  return c;
}

}  // namespace crossim

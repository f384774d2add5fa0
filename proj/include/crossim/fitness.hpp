#pragma once

#include <cstdint>
#include <optional>

#include "crossim/adas.hpp"
#include "crossim/simulator.hpp"

namespace crossim {

/// Score a finished trace. The input echoed into the outcome is the one the
/// caller submitted (backend frame); the objectives are always in canonical
/// units regardless of backend.
ScenarioOutcome outcome_from_trace(const SimulationTrace& trace, const TestInput& input,
                                   const SceneConfig& scene, const BackendConfig& cfg,
                                   const DetectorConfig& detector);

/// Full evaluation of one scenario on one backend. Without a channel this is
/// a single deterministic simulation. With a channel the scenario is re-run
/// channel.repeats times behind independently seeded sample loss and the
/// outcomes are mode-aggregated; `seed` fixes the loss patterns.
ScenarioOutcome evaluate(const TestInput& input, const SceneConfig& scene,
                         const BackendConfig& cfg, const DetectorConfig& detector,
                         const std::optional<LossyChannelConfig>& channel = std::nullopt,
                         std::uint64_t seed = 0);

}  // namespace crossim

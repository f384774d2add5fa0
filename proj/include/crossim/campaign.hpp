#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crossim/adas.hpp"
#include "crossim/analysis.hpp"
#include "crossim/config.hpp"
#include "crossim/fitness.hpp"
#include "crossim/search.hpp"

namespace crossim {

/// Everything one campaign needs: which backend and algorithm, how many
/// independent runs, and the full parameterization of scene, detector,
/// search and (optionally) the lossy channel. Both backend presets are kept
/// resolved so cross-backend commands can address either.
struct CampaignConfig {
  std::string backend_id = "alpha";
  std::string algorithm = "nsga2";  // or "random"
  int runs = 20;
  std::uint64_t master_seed = 1;
  SceneConfig scene;
  DetectorConfig detector;
  SearchConfig search;
  std::optional<LossyChannelConfig> channel;
  BackendConfig backend_alpha;
  BackendConfig backend_beta;
  InputSpace space;  // canonical frame

  CampaignConfig();

  const BackendConfig& backend() const;
  const BackendConfig& backend_for(const std::string& id) const;
  void validate() const;
};

/// Build a campaign from a parsed config file, filling defaults for absent
/// keys and rejecting unknown ones.
CampaignConfig campaign_from_config(const KeyValueConfig& cfg);

/// Seed derivation: one seed per run off the master, one per scenario off
/// the run (index 0 under the run seed drives the search itself).
std::uint64_t run_seed(const CampaignConfig& cfg, int run_index);
std::uint64_t scenario_seed(std::uint64_t run_seed_value, int scenario_index);

/// Execute one search run (or the random baseline) on the configured
/// backend. RunResult::seed is the run seed.
RunResult run_single(const CampaignConfig& cfg, int run_index);
std::vector<RunResult> run_campaign(const CampaignConfig& cfg);

/// A run restored from its artifact.
struct LoadedRun {
  CampaignConfig config;
  int run_index = 0;
  RunResult result;
  std::vector<int> front_ids;  // evaluation index of each front member
};

/// Replay the final fronts of saved runs on another backend and categorize
/// each scenario pair. Non-critical sources are skipped and counted.
struct XsimPairRecord {
  int run = 0;
  int scenario = 0;
  XsimCategory category = XsimCategory::UnsafeConfirmed;
  ScenarioOutcome source;
  ScenarioOutcome replayed;
  double dff1 = 0.0, dff2 = 0.0, dff3 = 0.0;  // replayed minus source
};

struct XsimReport {
  std::string source_backend;
  std::string target_backend;
  bool channel = false;
  std::array<int, 6> counts{};  // indexed by XsimCategory
  int skipped_non_critical = 0;
  std::vector<XsimPairRecord> pairs;
};

XsimReport cross_check(const std::vector<LoadedRun>& runs, const BackendConfig& target,
                       const std::optional<LossyChannelConfig>& channel);

/// Re-evaluate one stored scenario, by its evaluation index, on a chosen
/// backend; also returns the lossless trace for export.
struct ReplayResult {
  TestInput input;  // in the target backend's frame
  SimulationTrace trace;
  ScenarioOutcome fresh;
  ScenarioOutcome stored;
};

ReplayResult replay_scenario(const LoadedRun& run, int scenario_index,
                             const BackendConfig& target,
                             const std::optional<LossyChannelConfig>& channel);

/// Hypervolume comparison of two campaigns over a shared normalization.
struct CompareReport {
  std::vector<double> hv_a, hv_b;
  double median_a = 0.0, median_b = 0.0;
  MannWhitneyResult test;
  bool significant = false;  // p < 0.05
  ObjectiveBounds bounds;
};

CompareReport compare_campaigns(const std::vector<LoadedRun>& a, const std::vector<LoadedRun>& b,
                                MwMethod method = MwMethod::Auto);

double median(std::vector<double> values);

}  // namespace crossim

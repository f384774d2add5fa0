#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "crossim/campaign.hpp"

namespace crossim {

using json = nlohmann::json;

/// Schema tags carried by every JSON artifact.
inline constexpr const char* kRunSchema = "crossim.run/1";
inline constexpr const char* kSummarySchema = "crossim.summary/1";
inline constexpr const char* kXsimSchema = "crossim.xsim/1";
inline constexpr const char* kTreeSchema = "crossim.tree/1";
inline constexpr const char* kCompareSchema = "crossim.compare/1";

json input_to_json(const TestInput& in);
TestInput input_from_json(const json& j);
json outcome_to_json(const ScenarioOutcome& o);
ScenarioOutcome outcome_from_json(const json& j);
json campaign_to_json(const CampaignConfig& cfg);
CampaignConfig campaign_from_json(const json& j);

/// Full artifact for one run, including the trail of evaluations and
/// per-generation fronts (history optional to keep artifacts small).
json run_to_json(const CampaignConfig& cfg, const RunResult& result, int run_index,
                 bool include_history = true);
LoadedRun run_from_json(const json& j);

LoadedRun load_run_file(const std::string& path);
/// All run_*.json files in a directory, ordered by run index.
std::vector<LoadedRun> load_run_dir(const std::string& dir);

/// One row per evaluated scenario across all runs, spec'd column order.
std::string scenarios_csv(const CampaignConfig& cfg, const std::vector<RunResult>& runs);

/// Campaign roll-up: per-run front sizes, violation counts and normalized
/// hypervolume (reference (1,1,1) over the union of the runs' fronts).
json summary_to_json(const CampaignConfig& cfg, const std::vector<RunResult>& runs);

/// Trace export in the frame of the backend that produced it. The detector
/// config reproduces the warning-area distances and warning flags.
std::string trace_csv(const SimulationTrace& trace, const FrameSpec& frame,
                      const DetectorConfig& detector);

json xsim_to_json(const XsimReport& report);
std::string xsim_diffs_csv(const XsimReport& report);
std::string xsim_hist_csv(const XsimReport& report);

json tree_to_json(const TreeNode& root, const TreeParams& params, int samples);

json compare_to_json(const CompareReport& report, MwMethod method);

/// Inputs + violation labels out of a scenarios CSV (columns located by
/// name, so extra columns are fine).
struct LabeledInputs {
  std::vector<TestInput> inputs;
  std::vector<bool> labels;
};
LabeledInputs read_labeled_csv(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// dump with a fixed indent so artifacts are byte-stable.
std::string json_text(const json& j);

}  // namespace crossim

#include "crossim/campaign.hpp"

#include <algorithm>
#include <cmath>

#include "crossim/errors.hpp"
#include "crossim/rng.hpp"

namespace crossim {

CampaignConfig::CampaignConfig()
    : backend_alpha(BackendConfig::alpha()), backend_beta(BackendConfig::beta()) {
  detector.awa_width = scene.lane_width;
  detector.front_anchor = 0.5 * scene.car_length;
  space = default_input_space(scene);
}

const BackendConfig& CampaignConfig::backend() const { return backend_for(backend_id); }

const BackendConfig& CampaignConfig::backend_for(const std::string& id) const {
  if (id == "alpha") return backend_alpha;
  if (id == "beta") return backend_beta;
  throw ConfigError("unknown backend '" + id + "' (valid backends: alpha, beta)");
}

void CampaignConfig::validate() const {
  backend_for(backend_id);  // id must resolve
  if (algorithm != "nsga2" && algorithm != "random")
    throw ConfigError("unknown algorithm '" + algorithm + "' (valid: nsga2, random)");
  if (runs < 1) throw ConfigError("campaign runs must be at least 1");
  scene.validate();
  detector.validate();
  search.validate();
  if (channel) channel->validate();
  backend_alpha.validate();
  backend_beta.validate();
  space.validate();
}

namespace {

void apply_backend_overrides(const KeyValueConfig& cfg, BackendConfig& b) {
  const std::string p = b.id + ".";
  b.internal_dt = cfg.get_double(p + "internal_dt", b.internal_dt);
  b.sample_period = cfg.get_double(p + "sample_period", b.sample_period);
  b.sensor_range = cfg.get_double(p + "sensor_range", b.sensor_range);
  b.sensor_fov_deg = cfg.get_double(p + "sensor_fov", b.sensor_fov_deg);
  b.sensor_latency = static_cast<int>(cfg.get_int(p + "sensor_latency", b.sensor_latency));
  b.position_quantum = cfg.get_double(p + "position_quantum", b.position_quantum);
  b.gait_amplitude = cfg.get_double(p + "gait_amplitude", b.gait_amplitude);
  b.gait_frequency = cfg.get_double(p + "gait_frequency", b.gait_frequency);
  b.frame.origin_x = cfg.get_double(p + "frame_dx", b.frame.origin_x);
  b.frame.origin_y = cfg.get_double(p + "frame_dy", b.frame.origin_y);
  b.frame.heading_zero_deg = cfg.get_double(p + "frame_heading_zero", b.frame.heading_zero_deg);
  b.frame.clockwise = cfg.get_bool(p + "frame_clockwise", b.frame.clockwise);
  std::string unit = cfg.get_string(p + "frame_speed_unit",
                                    b.frame.speed_unit == SpeedUnit::KilometersPerHour ? "kph"
                                                                                       : "mps");
  if (unit == "kph") b.frame.speed_unit = SpeedUnit::KilometersPerHour;
  else if (unit == "mps") b.frame.speed_unit = SpeedUnit::MetersPerSecond;
  else throw ConfigError("backend " + b.id + ": frame_speed_unit must be mps or kph");
}

}  // namespace

CampaignConfig campaign_from_config(const KeyValueConfig& cfg) {
  CampaignConfig cc;

  cc.scene.car_x = cfg.get_double("scene.car_x", cc.scene.car_x);
  cc.scene.car_y = cfg.get_double("scene.car_y", cc.scene.car_y);
  cc.scene.road_length = cfg.get_double("scene.road_length", cc.scene.road_length);
  cc.scene.lane_width = cfg.get_double("scene.lane_width", cc.scene.lane_width);
  cc.scene.car_length = cfg.get_double("scene.car_length", cc.scene.car_length);
  cc.scene.car_width = cfg.get_double("scene.car_width", cc.scene.car_width);
  cc.scene.ped_radius = cfg.get_double("scene.ped_radius", cc.scene.ped_radius);
  cc.scene.crossing_offset =
      cfg.get_double("scene.crossing_offset", 0.5 * cc.scene.lane_width);

  cc.detector.awa_margin = cfg.get_double("detector.margin", cc.detector.awa_margin);
  cc.detector.ttc_threshold = cfg.get_double("detector.ttc_threshold", cc.detector.ttc_threshold);
  cc.detector.awa_headway = cfg.get_double("detector.headway", cc.detector.awa_headway);
  cc.detector.awa_base_length = cfg.get_double("detector.base_length", cc.detector.awa_base_length);
  cc.detector.awa_width = cfg.get_double("detector.awa_width", cc.scene.lane_width);
  cc.detector.awa_lateral_offset =
      cfg.get_double("detector.awa_offset", cc.detector.awa_lateral_offset);
  cc.detector.front_anchor = cfg.get_double("detector.front_anchor", 0.5 * cc.scene.car_length);
  cc.detector.oracle_ttc = cfg.get_bool("detector.oracle_ttc", cc.detector.oracle_ttc);

  cc.search.population = static_cast<int>(cfg.get_int("search.population", cc.search.population));
  cc.search.crossover_rate = cfg.get_double("search.crossover_rate", cc.search.crossover_rate);
  cc.search.mutation_rate = cfg.get_double("search.mutation_rate", cc.search.mutation_rate);
  cc.search.sbx_eta = cfg.get_double("search.sbx_eta", cc.search.sbx_eta);
  cc.search.sigma_fraction = cfg.get_double("search.sigma_fraction", cc.search.sigma_fraction);
  cc.search.budget = static_cast<int>(cfg.get_int("search.budget", cc.search.budget));

  // Channel keys are read unconditionally so a disabled channel section does
  // not trip the unknown-key check.
  LossyChannelConfig ch;
  ch.loss_probability = cfg.get_double("channel.loss_probability", ch.loss_probability);
  ch.repeats = static_cast<int>(cfg.get_int("channel.repeats", ch.repeats));
  ch.precision = cfg.get_double("channel.precision", ch.precision);
  if (cfg.get_bool("channel.enabled", false)) cc.channel = ch;

  cc.backend_alpha = BackendConfig::alpha();
  cc.backend_beta = BackendConfig::beta();
  apply_backend_overrides(cfg, cc.backend_alpha);
  apply_backend_overrides(cfg, cc.backend_beta);

  cc.space = default_input_space(cc.scene);
  static const char* suffix[2] = {"_min", "_max"};
  for (int g = 0; g < TestInput::kGenes; ++g) {
    for (int s = 0; s < 2; ++s) {
      std::string key = std::string("space.") + TestInput::gene_name(g) + suffix[s];
      double& slot = s == 0 ? cc.space.range[g].lo : cc.space.range[g].hi;
      slot = cfg.get_double(key, slot);
    }
  }

  cc.backend_id = cfg.get_string("campaign.backend", cc.backend_id);
  cc.algorithm = cfg.get_string("campaign.algorithm", cc.algorithm);
  cc.runs = static_cast<int>(cfg.get_int("campaign.runs", cc.runs));
  cc.master_seed = cfg.get_uint("campaign.master_seed", cc.master_seed);

  cfg.reject_unknown_keys();
  cc.validate();
  return cc;
}

std::uint64_t run_seed(const CampaignConfig& cfg, int run_index) {
  return derive_seed(cfg.master_seed, static_cast<std::uint64_t>(run_index));
}

std::uint64_t scenario_seed(std::uint64_t run_seed_value, int scenario_index) {
  // Index 0 under the run seed belongs to the search engine itself.
  return derive_seed(run_seed_value, static_cast<std::uint64_t>(scenario_index) + 1);
}

RunResult run_single(const CampaignConfig& cfg, int run_index) {
  cfg.validate();
  const BackendConfig& backend = cfg.backend();
  InputSpace space = translate_space(cfg.space, FrameSpec::canonical(), backend.frame);
  const std::uint64_t rs = run_seed(cfg, run_index);

  Evaluator evaluator = [&](const TestInput& input, int scenario_index) {
    return evaluate(input, cfg.scene, backend, cfg.detector, cfg.channel,
                    scenario_seed(rs, scenario_index));
  };

  RunResult result = cfg.algorithm == "nsga2"
                         ? nsga2_run(cfg.search, space, evaluator, derive_seed(rs, 0))
                         : random_search_run(cfg.search, space, evaluator, derive_seed(rs, 0));
  result.seed = rs;
  return result;
}

std::vector<RunResult> run_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  std::vector<RunResult> runs;
  runs.reserve(cfg.runs);
  for (int r = 0; r < cfg.runs; ++r) runs.push_back(run_single(cfg, r));
  return runs;
}

XsimReport cross_check(const std::vector<LoadedRun>& runs, const BackendConfig& target,
                       const std::optional<LossyChannelConfig>& channel) {
  if (runs.empty()) throw DataError("cross-check needs at least one run");
  XsimReport report;
  report.source_backend = runs.front().config.backend_id;
  report.target_backend = target.id;
  report.channel = channel.has_value();

  for (std::size_t r = 0; r < runs.size(); ++r) {
    const LoadedRun& run = runs[r];
    const FrameSpec& source_frame = run.config.backend().frame;
    for (std::size_t f = 0; f < run.result.front.size(); ++f) {
      const ScenarioOutcome& source = run.result.front[f].outcome;
      if (!classify(source).critical) {
        ++report.skipped_non_critical;
        continue;
      }
      int scenario_id = f < run.front_ids.size() ? run.front_ids[f] : static_cast<int>(f);
      TestInput target_input = translate_input(source.input, source_frame, target.frame);
      ScenarioOutcome replayed =
          evaluate(target_input, run.config.scene, target, run.config.detector, channel,
                   scenario_seed(run.result.seed, scenario_id));
      XsimPairRecord rec;
      rec.run = run.run_index;
      rec.scenario = scenario_id;
      rec.category = xsim_categorize(source, replayed);
      rec.source = source;
      rec.replayed = replayed;
      rec.dff1 = replayed.ff1 - source.ff1;
      rec.dff2 = replayed.ff2 - source.ff2;
      rec.dff3 = replayed.ff3 - source.ff3;
      report.counts[static_cast<int>(rec.category)] += 1;
      report.pairs.push_back(std::move(rec));
    }
  }
  if (report.pairs.empty())
    throw DataError("cross-check found no critical scenarios in the source fronts");
  return report;
}

ReplayResult replay_scenario(const LoadedRun& run, int scenario_index,
                             const BackendConfig& target,
                             const std::optional<LossyChannelConfig>& channel) {
  if (scenario_index < 0 || scenario_index >= static_cast<int>(run.result.evaluated.size()))
    throw DataError("unknown scenario id " + std::to_string(scenario_index) + " (run has " +
                    std::to_string(run.result.evaluated.size()) + " evaluations)");
  const ScenarioOutcome& stored = run.result.evaluated[scenario_index].outcome;
  const FrameSpec& source_frame = run.config.backend().frame;

  ReplayResult out;
  out.stored = stored;
  out.input = translate_input(stored.input, source_frame, target.frame);
  out.trace = simulate(out.input, run.config.scene, target);
  out.fresh = evaluate(out.input, run.config.scene, target, run.config.detector, channel,
                       scenario_seed(run.result.seed, scenario_index));
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw DataError("median of an empty sample");
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

CompareReport compare_campaigns(const std::vector<LoadedRun>& a, const std::vector<LoadedRun>& b,
                                MwMethod method) {
  if (a.size() < 2 || b.size() < 2)
    throw DataError("comparison needs at least 2 runs on each side");

  CompareReport report;
  std::vector<std::array<double, 3>> union_front;
  for (const auto* side : {&a, &b})
    for (const LoadedRun& run : *side)
      for (const Individual& ind : run.result.front)
        union_front.push_back(ind.outcome.objectives());
  report.bounds = objective_bounds(union_front);

  auto side_hv = [&](const std::vector<LoadedRun>& side) {
    std::vector<double> hv;
    hv.reserve(side.size());
    for (const LoadedRun& run : side) {
      std::vector<std::array<double, 3>> pts;
      for (const Individual& ind : run.result.front)
        pts.push_back(normalize_point(ind.outcome.objectives(), report.bounds));
      hv.push_back(hypervolume(pts, {1.0, 1.0, 1.0}));
    }
    return hv;
  };
  report.hv_a = side_hv(a);
  report.hv_b = side_hv(b);
  report.median_a = median(report.hv_a);
  report.median_b = median(report.hv_b);
  report.test = mann_whitney_u(report.hv_a, report.hv_b, method);
  report.significant = report.test.p < 0.05;
  return report;
}

}  // namespace crossim

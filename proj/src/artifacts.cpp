#include "crossim/artifacts.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "crossim/errors.hpp"
#include "crossim/format.hpp"

namespace crossim {

namespace fs = std::filesystem;

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << content;
  if (!out) throw DataError("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json input_to_json(const TestInput& in) {
  json j;
  for (int g = 0; g < TestInput::kGenes; ++g) j[TestInput::gene_name(g)] = in.gene(g);
  return j;
}

TestInput input_from_json(const json& j) {
  TestInput in;
  for (int g = 0; g < TestInput::kGenes; ++g) in.set_gene(g, j.at(TestInput::gene_name(g)).get<double>());
  return in;
}

json outcome_to_json(const ScenarioOutcome& o) {
  json j;
  j["input"] = input_to_json(o.input);
  j["backend"] = o.backend;
  j["ff1"] = o.ff1;
  j["ff2"] = o.ff2;
  j["ff3"] = o.ff3;
  j["collision"] = o.collision;
  j["detected"] = o.detected;
  j["detection_time"] = o.detection_time ? json(*o.detection_time) : json(nullptr);
  j["termination"] = termination_name(o.termination);
  return j;
}

ScenarioOutcome outcome_from_json(const json& j) {
  ScenarioOutcome o;
  o.input = input_from_json(j.at("input"));
  o.backend = j.at("backend").get<std::string>();
  o.ff1 = j.at("ff1").get<double>();
  o.ff2 = j.at("ff2").get<double>();
  o.ff3 = j.at("ff3").get<double>();
  o.collision = j.at("collision").get<bool>();
  o.detected = j.at("detected").get<bool>();
  if (!j.at("detection_time").is_null()) o.detection_time = j.at("detection_time").get<double>();
  o.termination = termination_from_name(j.at("termination").get<std::string>());
  return o;
}

namespace {

json frame_to_json(const FrameSpec& f) {
  json j;
  j["dx"] = f.origin_x;
  j["dy"] = f.origin_y;
  j["heading_zero"] = f.heading_zero_deg;
  j["clockwise"] = f.clockwise;
  j["speed_unit"] = f.speed_unit == SpeedUnit::KilometersPerHour ? "kph" : "mps";
  return j;
}

FrameSpec frame_from_json(const json& j) {
  FrameSpec f;
  f.origin_x = j.at("dx").get<double>();
  f.origin_y = j.at("dy").get<double>();
  f.heading_zero_deg = j.at("heading_zero").get<double>();
  f.clockwise = j.at("clockwise").get<bool>();
  std::string unit = j.at("speed_unit").get<std::string>();
  if (unit == "kph") f.speed_unit = SpeedUnit::KilometersPerHour;
  else if (unit == "mps") f.speed_unit = SpeedUnit::MetersPerSecond;
  else throw DataError("unknown speed unit '" + unit + "' in artifact");
  return f;
}

json backend_to_json(const BackendConfig& b) {
  json j;
  j["id"] = b.id;
  j["integrator"] = b.integrator == Integrator::ForwardEuler ? "forward-euler" : "semi-implicit";
  j["internal_dt"] = b.internal_dt;
  j["sample_period"] = b.sample_period;
  j["sensor_range"] = b.sensor_range;
  j["sensor_fov"] = b.sensor_fov_deg;
  j["sensor_latency"] = b.sensor_latency;
  j["position_quantum"] = b.position_quantum;
  j["gait_amplitude"] = b.gait_amplitude;
  j["gait_frequency"] = b.gait_frequency;
  j["frame"] = frame_to_json(b.frame);
  return j;
}

BackendConfig backend_from_json(const json& j) {
  BackendConfig b;
  b.id = j.at("id").get<std::string>();
  std::string integ = j.at("integrator").get<std::string>();
  if (integ == "forward-euler") b.integrator = Integrator::ForwardEuler;
  else if (integ == "semi-implicit") b.integrator = Integrator::SemiImplicit;
  else throw DataError("unknown integrator '" + integ + "' in artifact");
  b.internal_dt = j.at("internal_dt").get<double>();
  b.sample_period = j.at("sample_period").get<double>();
  b.sensor_range = j.at("sensor_range").get<double>();
  b.sensor_fov_deg = j.at("sensor_fov").get<double>();
  b.sensor_latency = j.at("sensor_latency").get<int>();
  b.position_quantum = j.at("position_quantum").get<double>();
  b.gait_amplitude = j.at("gait_amplitude").get<double>();
  b.gait_frequency = j.at("gait_frequency").get<double>();
  if (!j.contains("frame"))
    throw DataError("backend '" + b.id + "' artifact lacks a frame specification");
  b.frame = frame_from_json(j.at("frame"));
  return b;
}

json scene_to_json(const SceneConfig& s) {
  json j;
  j["car_x"] = s.car_x;
  j["car_y"] = s.car_y;
  j["road_length"] = s.road_length;
  j["lane_width"] = s.lane_width;
  j["car_length"] = s.car_length;
  j["car_width"] = s.car_width;
  j["ped_radius"] = s.ped_radius;
  j["crossing_offset"] = s.crossing_offset;
  return j;
}

SceneConfig scene_from_json(const json& j) {
  SceneConfig s;
  s.car_x = j.at("car_x").get<double>();
  s.car_y = j.at("car_y").get<double>();
  s.road_length = j.at("road_length").get<double>();
  s.lane_width = j.at("lane_width").get<double>();
  s.car_length = j.at("car_length").get<double>();
  s.car_width = j.at("car_width").get<double>();
  s.ped_radius = j.at("ped_radius").get<double>();
  s.crossing_offset = j.at("crossing_offset").get<double>();
  return s;
}

json detector_to_json(const DetectorConfig& d) {
  json j;
  j["margin"] = d.awa_margin;
  j["ttc_threshold"] = d.ttc_threshold;
  j["headway"] = d.awa_headway;
  j["base_length"] = d.awa_base_length;
  j["awa_width"] = d.awa_width;
  j["awa_offset"] = d.awa_lateral_offset;
  j["front_anchor"] = d.front_anchor;
  j["oracle_ttc"] = d.oracle_ttc;
  return j;
}

DetectorConfig detector_from_json(const json& j) {
  DetectorConfig d;
  d.awa_margin = j.at("margin").get<double>();
  d.ttc_threshold = j.at("ttc_threshold").get<double>();
  d.awa_headway = j.at("headway").get<double>();
  d.awa_base_length = j.at("base_length").get<double>();
  d.awa_width = j.at("awa_width").get<double>();
  d.awa_lateral_offset = j.at("awa_offset").get<double>();
  d.front_anchor = j.at("front_anchor").get<double>();
  d.oracle_ttc = j.at("oracle_ttc").get<bool>();
  return d;
}

json search_to_json(const SearchConfig& s) {
  json j;
  j["population"] = s.population;
  j["crossover_rate"] = s.crossover_rate;
  j["mutation_rate"] = s.mutation_rate;
  j["sbx_eta"] = s.sbx_eta;
  j["sigma_fraction"] = s.sigma_fraction;
  j["budget"] = s.budget;
  return j;
}

SearchConfig search_from_json(const json& j) {
  SearchConfig s;
  s.population = j.at("population").get<int>();
  s.crossover_rate = j.at("crossover_rate").get<double>();
  s.mutation_rate = j.at("mutation_rate").get<double>();
  s.sbx_eta = j.at("sbx_eta").get<double>();
  s.sigma_fraction = j.at("sigma_fraction").get<double>();
  s.budget = j.at("budget").get<int>();
  return s;
}

json channel_to_json(const std::optional<LossyChannelConfig>& c) {
  if (!c) return json(nullptr);
  json j;
  j["loss_probability"] = c->loss_probability;
  j["repeats"] = c->repeats;
  j["precision"] = c->precision;
  return j;
}

std::optional<LossyChannelConfig> channel_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  LossyChannelConfig c;
  c.loss_probability = j.at("loss_probability").get<double>();
  c.repeats = j.at("repeats").get<int>();
  c.precision = j.at("precision").get<double>();
  return c;
}

json space_to_json(const InputSpace& s) {
  json j;
  for (int g = 0; g < TestInput::kGenes; ++g)
    j[TestInput::gene_name(g)] = json::array({s.range[g].lo, s.range[g].hi});
  return j;
}

InputSpace space_from_json(const json& j) {
  InputSpace s;
  for (int g = 0; g < TestInput::kGenes; ++g) {
    const json& r = j.at(TestInput::gene_name(g));
    s.range[g].lo = r.at(0).get<double>();
    s.range[g].hi = r.at(1).get<double>();
  }
  return s;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

json campaign_to_json(const CampaignConfig& cfg) {
  json j;
  j["backend"] = cfg.backend_id;
  j["algorithm"] = cfg.algorithm;
  j["runs"] = cfg.runs;
  j["master_seed"] = cfg.master_seed;
  j["scene"] = scene_to_json(cfg.scene);
  j["detector"] = detector_to_json(cfg.detector);
  j["search"] = search_to_json(cfg.search);
  j["channel"] = channel_to_json(cfg.channel);
  j["backends"] = {{"alpha", backend_to_json(cfg.backend_alpha)},
                   {"beta", backend_to_json(cfg.backend_beta)}};
  j["space"] = space_to_json(cfg.space);
  return j;
}

CampaignConfig campaign_from_json(const json& j) {
  CampaignConfig cfg;
  cfg.backend_id = j.at("backend").get<std::string>();
  cfg.algorithm = j.at("algorithm").get<std::string>();
  cfg.runs = j.at("runs").get<int>();
  cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
  cfg.scene = scene_from_json(j.at("scene"));
  cfg.detector = detector_from_json(j.at("detector"));
  cfg.search = search_from_json(j.at("search"));
  cfg.channel = channel_from_json(j.at("channel"));
  cfg.backend_alpha = backend_from_json(j.at("backends").at("alpha"));
  cfg.backend_beta = backend_from_json(j.at("backends").at("beta"));
  cfg.space = space_from_json(j.at("space"));
  cfg.validate();
  return cfg;
}

json run_to_json(const CampaignConfig& cfg, const RunResult& result, int run_index,
                 bool include_history) {
  json j;
  j["schema"] = kRunSchema;
  j["run"] = run_index;
  j["seed"] = result.seed;
  j["algorithm"] = result.algorithm;
  j["campaign"] = campaign_to_json(cfg);

  json evaluated = json::array();
  for (const Individual& ind : result.evaluated) evaluated.push_back(outcome_to_json(ind.outcome));
  j["evaluated"] = std::move(evaluated);

  json front = json::array();
  for (const Individual& ind : result.front) {
    // Tie each front member back to its evaluation index so scenario ids
    // stay meaningful across commands.
    int id = -1;
    for (std::size_t k = 0; k < result.evaluated.size(); ++k) {
      const Individual& e = result.evaluated[k];
      bool same = true;
      for (int g = 0; g < TestInput::kGenes; ++g)
        same = same && e.input.gene(g) == ind.input.gene(g);
      if (same && e.outcome.objectives() == ind.outcome.objectives()) {
        id = static_cast<int>(k);
        break;
      }
    }
    json f;
    f["scenario"] = id;
    f["outcome"] = outcome_to_json(ind.outcome);
    front.push_back(std::move(f));
  }
  j["front"] = std::move(front);

  if (include_history) {
    json hist = json::array();
    for (const FrontSnapshot& snap : result.history) {
      json h;
      h["generation"] = snap.generation;
      h["evaluations"] = snap.evaluations;
      h["objectives"] = snap.objectives;
      hist.push_back(std::move(h));
    }
    j["history"] = std::move(hist);
  }
  return j;
}

LoadedRun run_from_json(const json& j) {
  if (!j.contains("schema") || j.at("schema").get<std::string>() != kRunSchema)
    throw DataError("not a run artifact (missing or wrong schema tag)");
  LoadedRun run;
  run.config = campaign_from_json(j.at("campaign"));
  run.run_index = j.at("run").get<int>();
  run.result.seed = j.at("seed").get<std::uint64_t>();
  run.result.algorithm = j.at("algorithm").get<std::string>();
  for (const json& e : j.at("evaluated")) {
    Individual ind;
    ind.outcome = outcome_from_json(e);
    ind.input = ind.outcome.input;
    run.result.evaluated.push_back(std::move(ind));
  }
  for (const json& f : j.at("front")) {
    Individual ind;
    ind.outcome = outcome_from_json(f.at("outcome"));
    ind.input = ind.outcome.input;
    run.result.front.push_back(std::move(ind));
    run.front_ids.push_back(f.at("scenario").get<int>());
  }
  if (j.contains("history")) {
    for (const json& h : j.at("history")) {
      FrontSnapshot snap;
      snap.generation = h.at("generation").get<int>();
      snap.evaluations = h.at("evaluations").get<int>();
      for (const json& o : h.at("objectives"))
        snap.objectives.push_back({o.at(0).get<double>(), o.at(1).get<double>(), o.at(2).get<double>()});
      run.result.history.push_back(std::move(snap));
    }
  }
  return run;
}

LoadedRun load_run_file(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw DataError(path + ": invalid JSON: " + e.what());
  }
  try {
    return run_from_json(j);
  } catch (const json::exception& e) {
    throw DataError(path + ": malformed run artifact: " + e.what());
  }
}

std::vector<LoadedRun> load_run_dir(const std::string& dir) {
  if (!fs::is_directory(dir)) throw DataError("'" + dir + "' is not a directory");
  std::map<int, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    if (name.rfind("run_", 0) != 0 || name.size() < 10) continue;
    if (name.substr(name.size() - 5) != ".json") continue;
    std::string digits = name.substr(4, name.size() - 9);
    int idx = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
    if (ec != std::errc{} || p != digits.data() + digits.size()) continue;
    files[idx] = entry.path().string();
  }
  if (files.empty()) throw DataError("no run artifacts (run_*.json) in '" + dir + "'");
  std::vector<LoadedRun> runs;
  runs.reserve(files.size());
  for (const auto& [idx, path] : files) runs.push_back(load_run_file(path));
  return runs;
}

std::string scenarios_csv(const CampaignConfig& cfg, const std::vector<RunResult>& runs) {
  std::string out =
      "run,scenario,v0c,x0p,y0p,theta_p,v0p,ff1,ff2,ff3,collision,detected,detection_time,"
      "termination,critical,violation,backend,seed\n";
  for (std::size_t r = 0; r < runs.size(); ++r) {
    std::uint64_t rs = runs[r].seed;
    for (std::size_t k = 0; k < runs[r].evaluated.size(); ++k) {
      const ScenarioOutcome& o = runs[r].evaluated[k].outcome;
      Classification cls = classify(o);
      out += std::to_string(r) + ',' + std::to_string(k);
      for (int g = 0; g < TestInput::kGenes; ++g) out += ',' + fmt_double(o.input.gene(g));
      out += ',' + fmt_double(o.ff1) + ',' + fmt_double(o.ff2) + ',' + fmt_double(o.ff3);
      out += ',' + bool_text(o.collision) + ',' + bool_text(o.detected);
      out += ',';
      if (o.detection_time) out += fmt_double(*o.detection_time);
      out += ',';
      out += termination_name(o.termination);
      out += ',' + bool_text(cls.critical) + ',' + bool_text(cls.violation);
      out += ',' + o.backend;
      out += ',' + std::to_string(scenario_seed(rs, static_cast<int>(k)));
      out += '\n';
    }
  }
  (void)cfg;
  return out;
}

json summary_to_json(const CampaignConfig& cfg, const std::vector<RunResult>& runs) {
  json j;
  j["schema"] = kSummarySchema;
  j["campaign"] = campaign_to_json(cfg);
  j["runs"] = runs.size();

  std::vector<std::array<double, 3>> union_front;
  for (const RunResult& run : runs)
    for (const Individual& ind : run.front) union_front.push_back(ind.outcome.objectives());
  ObjectiveBounds bounds = objective_bounds(union_front);
  j["objective_bounds"] = {{"lo", bounds.lo}, {"hi", bounds.hi}};

  long total_evals = 0, total_critical = 0, total_violations = 0, total_collisions = 0;
  json per_run = json::array();
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const RunResult& run = runs[r];
    std::vector<std::array<double, 3>> front_pts;
    int front_critical = 0, front_violations = 0;
    for (const Individual& ind : run.front) {
      front_pts.push_back(normalize_point(ind.outcome.objectives(), bounds));
      Classification cls = classify(ind.outcome);
      front_critical += cls.critical ? 1 : 0;
      front_violations += cls.violation ? 1 : 0;
    }
    int eval_critical = 0, eval_violations = 0, eval_collisions = 0;
    for (const Individual& ind : run.evaluated) {
      Classification cls = classify(ind.outcome);
      eval_critical += cls.critical ? 1 : 0;
      eval_violations += cls.violation ? 1 : 0;
      eval_collisions += ind.outcome.collision ? 1 : 0;
    }
    total_evals += static_cast<long>(run.evaluated.size());
    total_critical += eval_critical;
    total_violations += eval_violations;
    total_collisions += eval_collisions;

    json e;
    e["run"] = r;
    e["seed"] = run.seed;
    e["algorithm"] = run.algorithm;
    e["evaluations"] = run.evaluated.size();
    e["front_size"] = run.front.size();
    e["front_critical"] = front_critical;
    e["front_violations"] = front_violations;
    e["critical"] = eval_critical;
    e["violations"] = eval_violations;
    e["hypervolume"] = hypervolume(front_pts, {1.0, 1.0, 1.0});
    per_run.push_back(std::move(e));
  }
  j["per_run"] = std::move(per_run);
  j["totals"] = {{"evaluations", total_evals},
                 {"critical", total_critical},
                 {"violations", total_violations},
                 {"collisions", total_collisions}};
  return j;
}

std::string trace_csv(const SimulationTrace& trace, const FrameSpec& frame,
                      const DetectorConfig& detector) {
  DetectionEvent event = run_detector(trace, detector);
  AwaSpec awa;
  if (!trace.samples.empty()) awa = compute_awa(trace.samples.front().car_vel.norm(), detector);
  const double vf = frame.speed_unit == SpeedUnit::KilometersPerHour ? 3.6 : 1.0;

  std::string out =
      "t,car_x,car_y,car_vx,car_vy,ped_x,ped_y,ped_vx,ped_vy,dist,awa_dist,ttc,sensed,warned\n";
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    const TraceSample& s = trace.samples[i];
    out += fmt_double(s.t);
    out += ',' + fmt_double(s.car_pos.x + frame.origin_x) + ',' +
           fmt_double(s.car_pos.y + frame.origin_y);
    out += ',' + fmt_double(s.car_vel.x * vf) + ',' + fmt_double(s.car_vel.y * vf);
    out += ',' + fmt_double(s.ped_pos.x + frame.origin_x) + ',' +
           fmt_double(s.ped_pos.y + frame.origin_y);
    out += ',' + fmt_double(s.ped_vel.x * vf) + ',' + fmt_double(s.ped_vel.y * vf);
    out += ',' + fmt_double(s.distance);
    out += ',' + fmt_double(distance_to_awa(s.ped_pos, awa, s.car_pos));
    out += ',';
    if (s.sensor.visible) out += fmt_double(s.sensor.ttc);
    out += ',' + bool_text(s.sensor.visible);
    out += ',' + bool_text(i < event.warned.size() && event.warned[i]);
    out += '\n';
  }
  return out;
}

json xsim_to_json(const XsimReport& report) {
  json j;
  j["schema"] = kXsimSchema;
  j["source_backend"] = report.source_backend;
  j["target_backend"] = report.target_backend;
  j["channel"] = report.channel;
  json counts;
  for (int c = 0; c < 6; ++c)
    counts[xsim_category_code(static_cast<XsimCategory>(c))] = report.counts[c];
  j["counts"] = std::move(counts);
  j["total"] = report.pairs.size();
  j["skipped_non_critical"] = report.skipped_non_critical;
  json pairs = json::array();
  for (const XsimPairRecord& p : report.pairs) {
    json e;
    e["run"] = p.run;
    e["scenario"] = p.scenario;
    e["category"] = xsim_category_code(p.category);
    e["source"] = outcome_to_json(p.source);
    e["replayed"] = outcome_to_json(p.replayed);
    e["dff1"] = p.dff1;
    e["dff2"] = p.dff2;
    e["dff3"] = p.dff3;
    pairs.push_back(std::move(e));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

std::string xsim_diffs_csv(const XsimReport& report) {
  std::string out =
      "run,scenario,category,src_ff1,rep_ff1,dff1,src_ff2,rep_ff2,dff2,src_ff3,rep_ff3,dff3,"
      "src_violation,rep_violation\n";
  for (const XsimPairRecord& p : report.pairs) {
    out += std::to_string(p.run) + ',' + std::to_string(p.scenario) + ',' +
           xsim_category_code(p.category);
    out += ',' + fmt_double(p.source.ff1) + ',' + fmt_double(p.replayed.ff1) + ',' +
           fmt_double(p.dff1);
    out += ',' + fmt_double(p.source.ff2) + ',' + fmt_double(p.replayed.ff2) + ',' +
           fmt_double(p.dff2);
    out += ',' + fmt_double(p.source.ff3) + ',' + fmt_double(p.replayed.ff3) + ',' +
           fmt_double(p.dff3);
    out += ',' + bool_text(classify(p.source).violation) + ',' +
           bool_text(classify(p.replayed).violation);
    out += '\n';
  }
  return out;
}

std::string xsim_hist_csv(const XsimReport& report) {
  std::string out = "metric,bin_lo,bin_hi,count\n";
  const char* names[3] = {"ff1", "ff2", "ff3"};
  const double widths[3] = {0.5, 0.5, 0.25};
  for (int m = 0; m < 3; ++m) {
    std::vector<double> diffs;
    for (const XsimPairRecord& p : report.pairs)
      diffs.push_back(std::abs(m == 0 ? p.dff1 : m == 1 ? p.dff2 : p.dff3));
    double top = widths[m];
    for (double d : diffs) top = std::max(top, d);
    double hi = std::ceil(top / widths[m]) * widths[m];
    Histogram h = make_histogram(diffs, 0.0, hi + 1e-9, widths[m]);
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
      out += names[m];
      out += ',' + fmt_double(h.lo + b * h.width) + ',' + fmt_double(h.lo + (b + 1) * h.width) +
             ',' + std::to_string(h.counts[b]);
      out += '\n';
    }
  }
  return out;
}

namespace {

json tree_node_to_json(const TreeNode& node) {
  json j;
  j["n"] = node.count;
  j["false"] = node.class_counts[0];
  j["true"] = node.class_counts[1];
  if (node.is_leaf()) {
    j["label"] = node.label;
    return j;
  }
  j["gene"] = TestInput::gene_name(node.gene);
  j["threshold"] = node.threshold;
  j["left"] = tree_node_to_json(*node.left);
  j["right"] = tree_node_to_json(*node.right);
  return j;
}

}  // namespace

json tree_to_json(const TreeNode& root, const TreeParams& params, int samples) {
  json j;
  j["schema"] = kTreeSchema;
  j["params"] = {{"max_depth", params.max_depth}, {"min_leaf", params.min_leaf}};
  j["samples"] = samples;
  j["tree"] = tree_node_to_json(root);
  return j;
}

json compare_to_json(const CompareReport& report, MwMethod method) {
  json j;
  j["schema"] = kCompareSchema;
  j["a"] = {{"runs", report.hv_a.size()}, {"hv", report.hv_a}, {"median", report.median_a}};
  j["b"] = {{"runs", report.hv_b.size()}, {"hv", report.hv_b}, {"median", report.median_b}};
  j["u"] = report.test.u;
  j["p"] = report.test.p;
  j["alpha"] = 0.05;
  j["significant"] = report.significant;
  j["method"] = method == MwMethod::Exact ? "exact" : method == MwMethod::Normal ? "normal" : "auto";
  j["objective_bounds"] = {{"lo", report.bounds.lo}, {"hi", report.bounds.hi}};
  return j;
}

LabeledInputs read_labeled_csv(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty CSV");

  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.push_back("");
    return cells;
  };

  std::vector<std::string> header = split(line);
  auto column = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    throw DataError(path + ": missing column '" + name + "'");
  };
  int gene_cols[TestInput::kGenes];
  for (int g = 0; g < TestInput::kGenes; ++g) gene_cols[g] = column(TestInput::gene_name(g));
  int label_col = column("violation");

  LabeledInputs data;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells = split(line);
    if (cells.size() < header.size())
      throw DataError(path + ":" + std::to_string(lineno) + ": expected " +
                      std::to_string(header.size()) + " columns");
    TestInput input;
    for (int g = 0; g < TestInput::kGenes; ++g) {
      const std::string& cell = cells[gene_cols[g]];
      double v = 0.0;
      auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || p != cell.data() + cell.size())
        throw DataError(path + ":" + std::to_string(lineno) + ": bad number '" + cell + "' in '" +
                        TestInput::gene_name(g) + "'");
      input.set_gene(g, v);
    }
    const std::string& lab = cells[label_col];
    bool label;
    if (lab == "true" || lab == "1") label = true;
    else if (lab == "false" || lab == "0") label = false;
    else
      throw DataError(path + ":" + std::to_string(lineno) + ": bad violation flag '" + lab + "'");
    data.inputs.push_back(input);
    data.labels.push_back(label);
  }
  if (data.inputs.empty()) throw DataError(path + ": no data rows");
  return data;
}

}  // namespace crossim

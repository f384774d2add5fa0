#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "crossim/artifacts.hpp"
#include "crossim/campaign.hpp"
#include "crossim/errors.hpp"
#include "crossim/format.hpp"

namespace fs = std::filesystem;
using namespace crossim;

namespace {

struct SearchArgs {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> sets;
  std::string backend, algorithm;
  int runs = -1;
  int budget = -1;
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool no_history = false;
};

struct XsimArgs {
  std::string runs_dir, target, out_dir;
  bool channel = false;
};

struct CompareArgs {
  std::string a_dir, b_dir, out_file, method = "auto";
};

struct DiagnoseArgs {
  std::string scenarios_path, out_dir;
  int max_depth = 3;
  int min_leaf = 10;
};

struct ReplayArgs {
  std::string runs_dir, out_dir, backend;
  int run = 0;
  int scenario = 0;
  bool channel = false;
};

std::string trimmed(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw DataError("cannot create output directory '" + dir + "'");
}

MwMethod parse_method(const std::string& name) {
  if (name == "auto") return MwMethod::Auto;
  if (name == "exact") return MwMethod::Exact;
  if (name == "normal") return MwMethod::Normal;
  throw ConfigError("unknown test method '" + name + "' (valid: auto, exact, normal)");
}

int run_search(const SearchArgs& args) {
  KeyValueConfig cfg = args.config_path.empty() ? KeyValueConfig()
                                                : KeyValueConfig::parse_file(args.config_path);
  for (const std::string& kv : args.sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--set expects key=value, got '" + kv + "'");
    cfg.set(trimmed(kv.substr(0, eq)), trimmed(kv.substr(eq + 1)));
  }
  if (!args.backend.empty()) cfg.set("campaign.backend", args.backend);
  if (!args.algorithm.empty()) cfg.set("campaign.algorithm", args.algorithm);
  if (args.runs >= 0) cfg.set("campaign.runs", std::to_string(args.runs));
  if (args.budget >= 0) cfg.set("search.budget", std::to_string(args.budget));
  if (args.seed_given) cfg.set("campaign.master_seed", std::to_string(args.seed));

  CampaignConfig campaign = campaign_from_config(cfg);
  ensure_dir(args.out_dir);

  std::vector<RunResult> runs;
  runs.reserve(campaign.runs);
  for (int r = 0; r < campaign.runs; ++r) {
    RunResult result = run_single(campaign, r);
    char name[32];
    std::snprintf(name, sizeof(name), "run_%03d.json", r);
    write_text_file((fs::path(args.out_dir) / name).string(),
                    json_text(run_to_json(campaign, result, r, !args.no_history)));
    int critical = 0, violations = 0;
    for (const Individual& ind : result.evaluated) {
      Classification cls = classify(ind.outcome);
      critical += cls.critical ? 1 : 0;
      violations += cls.violation ? 1 : 0;
    }
    std::cout << "run " << r << ": evaluations=" << result.evaluated.size()
              << " front=" << result.front.size() << " critical=" << critical
              << " violations=" << violations << "\n";
    runs.push_back(std::move(result));
  }

  write_text_file((fs::path(args.out_dir) / "scenarios.csv").string(),
                  scenarios_csv(campaign, runs));
  json summary = summary_to_json(campaign, runs);
  write_text_file((fs::path(args.out_dir) / "summary.json").string(), json_text(summary));

  const json& totals = summary.at("totals");
  std::cout << "campaign: backend=" << campaign.backend_id << " algorithm=" << campaign.algorithm
            << " runs=" << campaign.runs << " evaluations=" << totals.at("evaluations")
            << " critical=" << totals.at("critical") << " violations=" << totals.at("violations")
            << "\n";
  return 0;
}

int run_xsim(const XsimArgs& args) {
  std::vector<LoadedRun> runs = load_run_dir(args.runs_dir);
  const CampaignConfig& cfg = runs.front().config;
  const BackendConfig& target = cfg.backend_for(args.target);

  std::optional<LossyChannelConfig> channel;
  if (args.channel) channel = cfg.channel ? *cfg.channel : LossyChannelConfig{};

  XsimReport report = cross_check(runs, target, channel);
  ensure_dir(args.out_dir);
  write_text_file((fs::path(args.out_dir) / "xsim_report.json").string(),
                  json_text(xsim_to_json(report)));
  write_text_file((fs::path(args.out_dir) / "xsim_diffs.csv").string(), xsim_diffs_csv(report));
  write_text_file((fs::path(args.out_dir) / "xsim_hist.csv").string(), xsim_hist_csv(report));

  std::cout << report.source_backend << " -> " << report.target_backend << ": "
            << report.pairs.size() << " scenario pairs";
  if (report.skipped_non_critical > 0)
    std::cout << " (" << report.skipped_non_critical << " non-critical sources skipped)";
  std::cout << "\n";
  for (int c = 0; c < 6; ++c)
    std::cout << "  " << xsim_category_code(static_cast<XsimCategory>(c)) << ": "
              << report.counts[c] << "\n";
  return 0;
}

int run_compare(const CompareArgs& args) {
  MwMethod method = parse_method(args.method);
  std::vector<LoadedRun> a = load_run_dir(args.a_dir);
  std::vector<LoadedRun> b = load_run_dir(args.b_dir);
  CompareReport report = compare_campaigns(a, b, method);

  std::cout << "A: runs=" << report.hv_a.size() << " median_hv=" << fmt_double(report.median_a)
            << "\n";
  std::cout << "B: runs=" << report.hv_b.size() << " median_hv=" << fmt_double(report.median_b)
            << "\n";
  std::cout << "Mann-Whitney U=" << fmt_double(report.test.u) << " p=" << fmt_double(report.test.p)
            << "\n";
  std::cout << (report.significant ? "significant difference at alpha 0.05"
                                   : "no significant difference at alpha 0.05")
            << "\n";
  if (!args.out_file.empty())
    write_text_file(args.out_file, json_text(compare_to_json(report, method)));
  return 0;
}

int run_diagnose(const DiagnoseArgs& args) {
  LabeledInputs data = read_labeled_csv(args.scenarios_path);
  TreeParams params;
  params.max_depth = args.max_depth;
  params.min_leaf = args.min_leaf;
  std::unique_ptr<TreeNode> tree = tree_fit(data.inputs, data.labels, params);

  ensure_dir(args.out_dir);
  write_text_file((fs::path(args.out_dir) / "tree.json").string(),
                  json_text(tree_to_json(*tree, params, static_cast<int>(data.inputs.size()))));
  std::string text = tree_to_text(*tree);
  write_text_file((fs::path(args.out_dir) / "tree.txt").string(), text);
  std::cout << text;
  return 0;
}

int run_replay(const ReplayArgs& args) {
  std::vector<LoadedRun> runs = load_run_dir(args.runs_dir);
  const LoadedRun* run = nullptr;
  for (const LoadedRun& r : runs)
    if (r.run_index == args.run) run = &r;
  if (!run) throw DataError("unknown run id " + std::to_string(args.run));

  const std::string backend_id = args.backend.empty() ? run->config.backend_id : args.backend;
  const BackendConfig& target = run->config.backend_for(backend_id);
  std::optional<LossyChannelConfig> channel;
  if (args.channel) channel = run->config.channel ? *run->config.channel : LossyChannelConfig{};

  ReplayResult result = replay_scenario(*run, args.scenario, target, channel);
  ensure_dir(args.out_dir);
  char name[64];
  std::snprintf(name, sizeof(name), "trace_run%03d_scn%04d_%s.csv", args.run, args.scenario,
                target.id.c_str());
  write_text_file((fs::path(args.out_dir) / name).string(),
                  trace_csv(result.trace, target.frame, run->config.detector));

  std::cout << "replayed run " << args.run << " scenario " << args.scenario << " on "
            << target.id << " (" << result.trace.samples.size() << " samples, "
            << termination_name(result.trace.termination) << ")\n";
  std::cout << "stored: ff1=" << fmt_double(result.stored.ff1)
            << " ff2=" << fmt_double(result.stored.ff2)
            << " ff3=" << fmt_double(result.stored.ff3) << "\n";
  std::cout << "replay: ff1=" << fmt_double(result.fresh.ff1)
            << " ff2=" << fmt_double(result.fresh.ff2)
            << " ff3=" << fmt_double(result.fresh.ff3) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scenario search, cross-backend replication and analysis for a pedestrian "
               "collision warning system"};
  app.require_subcommand(1);

  SearchArgs search_args;
  CLI::App* search = app.add_subcommand("search", "Run seeded search campaigns");
  search->add_option("--config", search_args.config_path, "Key-value config file");
  search->add_option("--out", search_args.out_dir, "Output directory")->required();
  search->add_option("--set", search_args.sets, "Override a config key (key=value), repeatable");
  search->add_option("--backend", search_args.backend, "Backend to run on (alpha, beta)");
  search->add_option("--algorithm", search_args.algorithm, "Search algorithm (nsga2, random)");
  search->add_option("--runs", search_args.runs, "Number of independent runs");
  search->add_option("--budget", search_args.budget, "Evaluations per run");
  CLI::Option* seed_opt = search->add_option("--seed", search_args.seed, "Master seed");
  search->add_flag("--no-history", search_args.no_history,
                   "Skip per-generation fronts in run artifacts");

  XsimArgs xsim_args;
  CLI::App* xsim = app.add_subcommand("xsim", "Replay saved fronts on another backend");
  xsim->add_option("--runs", xsim_args.runs_dir, "Directory with run_*.json artifacts")->required();
  xsim->add_option("--target", xsim_args.target, "Target backend id")->required();
  xsim->add_option("--out", xsim_args.out_dir, "Output directory")->required();
  xsim->add_flag("--channel", xsim_args.channel, "Re-evaluate through the lossy channel");

  CompareArgs compare_args;
  CLI::App* compare = app.add_subcommand("compare", "Hypervolume comparison of two campaigns");
  compare->add_option("--a", compare_args.a_dir, "First campaign directory")->required();
  compare->add_option("--b", compare_args.b_dir, "Second campaign directory")->required();
  compare->add_option("--out", compare_args.out_file, "Write the report JSON here");
  compare->add_option("--method", compare_args.method, "Mann-Whitney method (auto, exact, normal)");

  DiagnoseArgs diagnose_args;
  CLI::App* diagnose = app.add_subcommand("diagnose", "Fit a decision tree to scenario labels");
  diagnose->add_option("--scenarios", diagnose_args.scenarios_path, "Scenarios CSV")->required();
  diagnose->add_option("--out", diagnose_args.out_dir, "Output directory")->required();
  diagnose->add_option("--max-depth", diagnose_args.max_depth, "Maximum tree depth");
  diagnose->add_option("--min-leaf", diagnose_args.min_leaf, "Minimum samples per leaf");

  ReplayArgs replay_args;
  CLI::App* replay = app.add_subcommand("replay", "Re-simulate one stored scenario");
  replay->add_option("--runs", replay_args.runs_dir, "Directory with run_*.json artifacts")
      ->required();
  replay->add_option("--run", replay_args.run, "Run id")->required();
  replay->add_option("--scenario", replay_args.scenario, "Scenario id within the run")->required();
  replay->add_option("--out", replay_args.out_dir, "Output directory")->required();
  replay->add_option("--backend", replay_args.backend, "Backend to replay on (default: stored)");
  replay->add_flag("--channel", replay_args.channel, "Replay through the lossy channel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  search_args.seed_given = seed_opt->count() > 0;

  try {
    if (search->parsed()) return run_search(search_args);
    if (xsim->parsed()) return run_xsim(xsim_args);
    if (compare->parsed()) return run_compare(compare_args);
    if (diagnose->parsed()) return run_diagnose(diagnose_args);
    if (replay->parsed()) return run_replay(replay_args);
    std::cerr << "crossim: no command selected\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "crossim: config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "crossim: data error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "crossim: internal error: " << e.what() << "\n";
    return 1;
  }
}

#include "crossim/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crossim/errors.hpp"

namespace crossim {

void SearchConfig::validate() const {
  if (population < 2 || population % 2 != 0)
    throw ConfigError("search population must be even and at least 2");
  if (crossover_rate < 0.0 || crossover_rate > 1.0)
    throw ConfigError("search crossover_rate must be in [0, 1]");
  if (mutation_rate < 0.0 || mutation_rate > 1.0)
    throw ConfigError("search mutation_rate must be in [0, 1]");
  if (sbx_eta <= 0.0) throw ConfigError("search sbx_eta must be positive");
  if (sigma_fraction < 0.0) throw ConfigError("search sigma_fraction must be non-negative");
  if (budget < 1) throw ConfigError("search budget must be at least 1");
}

bool dominates(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  bool better = false;
  for (int i = 0; i < 3; ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) better = true;
  }
  return better;
}

std::vector<std::vector<int>> fast_nondominated_sort(std::vector<Individual>& pop) {
  const int n = static_cast<int>(pop.size());
  if (n == 0) return {};
  std::vector<std::vector<int>> dominated(n);
  std::vector<int> dom_count(n, 0);
  for (int i = 0; i < n; ++i) {
    auto oi = pop[i].outcome.objectives();
    for (int j = i + 1; j < n; ++j) {
      auto oj = pop[j].outcome.objectives();
      if (dominates(oi, oj)) {
        dominated[i].push_back(j);
        ++dom_count[j];
      } else if (dominates(oj, oi)) {
        dominated[j].push_back(i);
        ++dom_count[i];
      }
    }
  }
  std::vector<std::vector<int>> fronts(1);
  for (int i = 0; i < n; ++i) {
    if (dom_count[i] == 0) {
      pop[i].rank = 0;
      fronts[0].push_back(i);
    }
  }
  std::size_t k = 0;
  while (k < fronts.size()) {
    std::vector<int> next;
    for (int i : fronts[k]) {
      for (int j : dominated[i]) {
        if (--dom_count[j] == 0) {
          pop[j].rank = static_cast<int>(k) + 1;
          next.push_back(j);
        }
      }
    }
    if (!next.empty()) fronts.push_back(std::move(next));
    ++k;
  }
  return fronts;
}

void crowding_distance(std::vector<Individual>& pop, const std::vector<int>& front) {
  const int m = static_cast<int>(front.size());
  if (m == 0) return;
  const double inf = std::numeric_limits<double>::infinity();
  for (int idx : front) pop[idx].crowding = 0.0;
  for (int obj = 0; obj < 3; ++obj) {
    std::vector<int> order = front;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return pop[a].outcome.objectives()[obj] < pop[b].outcome.objectives()[obj];
    });
    pop[order.front()].crowding = inf;
    pop[order.back()].crowding = inf;
    double span =
        pop[order.back()].outcome.objectives()[obj] - pop[order.front()].outcome.objectives()[obj];
    if (span <= 0.0) continue;  // objective is flat on this front
    for (int i = 1; i < m - 1; ++i) {
      if (pop[order[i]].crowding == inf) continue;
      double gap = pop[order[i + 1]].outcome.objectives()[obj] -
                   pop[order[i - 1]].outcome.objectives()[obj];
      pop[order[i]].crowding += gap / span;
    }
  }
}

int binary_tournament(const std::vector<Individual>& pop, Rng& rng) {
  if (pop.empty()) throw DataError("tournament over an empty population");
  std::uniform_int_distribution<int> pick(0, static_cast<int>(pop.size()) - 1);
  int i = pick(rng);
  int j = pick(rng);
  if (pop[i].rank != pop[j].rank) return pop[i].rank < pop[j].rank ? i : j;
  if (pop[i].crowding != pop[j].crowding) return pop[i].crowding > pop[j].crowding ? i : j;
  return uniform01(rng) < 0.5 ? i : j;
}

std::pair<double, double> sbx_genes(double a, double b, double u, double eta) {
  double beta = u <= 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                         : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
  double c1 = 0.5 * ((1.0 + beta) * a + (1.0 - beta) * b);
  double c2 = 0.5 * ((1.0 - beta) * a + (1.0 + beta) * b);
  return {c1, c2};
}

std::pair<TestInput, TestInput> sbx_crossover(const TestInput& a, const TestInput& b, double eta,
                                              Rng& rng) {
  TestInput c1, c2;
  for (int i = 0; i < TestInput::kGenes; ++i) {
    auto [g1, g2] = sbx_genes(a.gene(i), b.gene(i), uniform01(rng), eta);
    c1.set_gene(i, g1);
    c2.set_gene(i, g2);
  }
  return {c1, c2};
}

TestInput gaussian_mutation(const TestInput& in, const InputSpace& space, double rate,
                            double sigma_fraction, Rng& rng) {
  TestInput out = in;
  std::normal_distribution<double> step(0.0, 1.0);
  for (int i = 0; i < TestInput::kGenes; ++i) {
    if (uniform01(rng) < rate) {
      double sigma = sigma_fraction * (space.range[i].hi - space.range[i].lo);
      out.set_gene(i, out.gene(i) + sigma * step(rng));
    }
  }
  return space.clamp(out);
}

namespace {

void record_snapshot(RunResult& res, std::vector<Individual>& pop, int generation, int evals) {
  auto fronts = fast_nondominated_sort(pop);
  FrontSnapshot snap;
  snap.generation = generation;
  snap.evaluations = evals;
  if (!fronts.empty())
    for (int idx : fronts.front()) snap.objectives.push_back(pop[idx].outcome.objectives());
  res.history.push_back(std::move(snap));
}

}  // namespace

RunResult nsga2_run(const SearchConfig& cfg, const InputSpace& space, const Evaluator& evaluate,
                    std::uint64_t seed) {
  cfg.validate();
  space.validate();
  if (cfg.budget < cfg.population)
    throw ConfigError("search budget is smaller than one population");

  Rng rng = make_rng(seed);
  RunResult res;
  res.seed = seed;
  res.algorithm = "nsga2";

  int evals = 0;
  auto eval_into = [&](const TestInput& in) {
    Individual ind;
    ind.input = in;
    ind.outcome = evaluate(in, evals);
    ++evals;
    res.evaluated.push_back(ind);
    return ind;
  };

  std::vector<Individual> pop;
  pop.reserve(cfg.population);
  for (int i = 0; i < cfg.population; ++i) pop.push_back(eval_into(space.sample(rng)));
  record_snapshot(res, pop, 0, evals);

  int gen = 0;
  while (evals + cfg.population <= cfg.budget) {
    auto fronts = fast_nondominated_sort(pop);
    for (const auto& f : fronts) crowding_distance(pop, f);

    std::vector<Individual> offspring;
    offspring.reserve(cfg.population);
    while (static_cast<int>(offspring.size()) < cfg.population) {
      const TestInput& p1 = pop[binary_tournament(pop, rng)].input;
      const TestInput& p2 = pop[binary_tournament(pop, rng)].input;
      TestInput c1 = p1, c2 = p2;
      if (uniform01(rng) < cfg.crossover_rate) std::tie(c1, c2) = sbx_crossover(p1, p2, cfg.sbx_eta, rng);
      c1 = gaussian_mutation(c1, space, cfg.mutation_rate, cfg.sigma_fraction, rng);
      c2 = gaussian_mutation(c2, space, cfg.mutation_rate, cfg.sigma_fraction, rng);
      offspring.push_back(eval_into(c1));
      if (static_cast<int>(offspring.size()) < cfg.population) offspring.push_back(eval_into(c2));
    }

    // (mu + lambda) survival: parents and offspring compete together.
    std::vector<Individual> combined = std::move(pop);
    combined.insert(combined.end(), offspring.begin(), offspring.end());
    auto cfronts = fast_nondominated_sort(combined);
    std::vector<Individual> next;
    next.reserve(cfg.population);
    for (const auto& f : cfronts) {
      crowding_distance(combined, f);
      if (static_cast<int>(next.size() + f.size()) <= cfg.population) {
        for (int idx : f) next.push_back(combined[idx]);
        if (static_cast<int>(next.size()) == cfg.population) break;
      } else {
        std::vector<int> order = f;
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return combined[a].crowding > combined[b].crowding; });
        for (int idx : order) {
          if (static_cast<int>(next.size()) >= cfg.population) break;
          next.push_back(combined[idx]);
        }
        break;
      }
    }
    pop = std::move(next);
    ++gen;
    record_snapshot(res, pop, gen, evals);
  }

  auto fronts = fast_nondominated_sort(pop);
  for (const auto& f : fronts) crowding_distance(pop, f);
  if (!fronts.empty())
    for (int idx : fronts.front()) res.front.push_back(pop[idx]);
  return res;
}

RunResult random_search_run(const SearchConfig& cfg, const InputSpace& space,
                            const Evaluator& evaluate, std::uint64_t seed) {
  cfg.validate();
  space.validate();

  Rng rng = make_rng(seed);
  RunResult res;
  res.seed = seed;
  res.algorithm = "random";

  std::vector<Individual> all;
  all.reserve(cfg.budget);
  int snapshots = 0;
  for (int i = 0; i < cfg.budget; ++i) {
    Individual ind;
    ind.input = space.sample(rng);
    ind.outcome = evaluate(ind.input, i);
    all.push_back(ind);
    res.evaluated.push_back(ind);
    if ((i + 1) % cfg.population == 0 || i + 1 == cfg.budget) {
      record_snapshot(res, all, snapshots, i + 1);
      ++snapshots;
    }
  }

  auto fronts = fast_nondominated_sort(all);
  for (const auto& f : fronts) crowding_distance(all, f);
  if (!fronts.empty())
    for (int idx : fronts.front()) res.front.push_back(all[idx]);
  return res;
}

}  // namespace crossim

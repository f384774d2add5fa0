#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "crossim/outcome.hpp"
#include "crossim/scene.hpp"

namespace crossim {

struct SearchConfig {
  int population = 10;          // must be even
  double crossover_rate = 0.9;  // chance a parent pair is recombined
  double mutation_rate = 0.5;   // per-gene perturbation chance
  double sbx_eta = 20.0;        // crossover spread, larger = children nearer parents
  double sigma_fraction = 0.1;  // mutation sigma as a fraction of the gene range
  int budget = 300;             // total scenario evaluations per run

  void validate() const;  // throws ConfigError; budget >= population is checked per algorithm
};

struct Individual {
  TestInput input;
  ScenarioOutcome outcome;
  int rank = 0;           // nondomination front index, 0 is best
  double crowding = 0.0;  // larger = lonelier
};

/// a dominates b when a is no worse on every objective and better on at
/// least one (all objectives minimized).
bool dominates(const std::array<double, 3>& a, const std::array<double, 3>& b);

/// Split a population into nondomination fronts (indices into `pop`),
/// front 0 first. Also writes Individual::rank.
std::vector<std::vector<int>> fast_nondominated_sort(std::vector<Individual>& pop);

/// Crowding distance within one front; boundary points get infinity. Writes
/// Individual::crowding for the listed members.
void crowding_distance(std::vector<Individual>& pop, const std::vector<int>& front);

/// Binary tournament on rank, then crowding, then a coin flip.
int binary_tournament(const std::vector<Individual>& pop, Rng& rng);

/// Simulated binary crossover of one gene pair: u near 0.5 keeps children
/// near the parents, the eta exponent shapes the spread.
std::pair<double, double> sbx_genes(double a, double b, double u, double eta);
std::pair<TestInput, TestInput> sbx_crossover(const TestInput& a, const TestInput& b, double eta,
                                              Rng& rng);

/// Gaussian creep mutation: each gene moves with probability `rate` by a
/// normal step scaled to its range, then clamps to the box.
TestInput gaussian_mutation(const TestInput& in, const InputSpace& space, double rate,
                            double sigma_fraction, Rng& rng);

using Evaluator = std::function<ScenarioOutcome(const TestInput&, int scenario_index)>;

/// Objective vectors of the nondominated set at one point of a run.
struct FrontSnapshot {
  int generation = 0;
  int evaluations = 0;
  std::vector<std::array<double, 3>> objectives;
};

struct RunResult {
  std::vector<Individual> front;      // final nondominated set
  std::vector<Individual> evaluated;  // every evaluation, in order
  std::vector<FrontSnapshot> history;
  std::uint64_t seed = 0;
  std::string algorithm;
};

/// NSGA-II over the given space. Spends at most cfg.budget evaluations:
/// an initial population, then whole generations while they still fit.
RunResult nsga2_run(const SearchConfig& cfg, const InputSpace& space, const Evaluator& evaluate,
                    std::uint64_t seed);

/// Uniform random sampling with the same budget and bookkeeping; the
/// baseline the search has to beat.
RunResult random_search_run(const SearchConfig& cfg, const InputSpace& space,
                            const Evaluator& evaluate, std::uint64_t seed);

}  // namespace crossim

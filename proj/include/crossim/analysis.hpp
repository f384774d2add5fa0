#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "crossim/outcome.hpp"
#include "crossim/scene.hpp"

namespace crossim {

/// Per-objective min/max used to map raw objective vectors into the unit
/// cube before hypervolume comparisons.
struct ObjectiveBounds {
  std::array<double, 3> lo{0.0, 0.0, 0.0};
  std::array<double, 3> hi{1.0, 1.0, 1.0};
};

ObjectiveBounds objective_bounds(const std::vector<std::array<double, 3>>& points);

/// Min-max normalize one vector; a degenerate objective (lo == hi) maps
/// to 0 so it neither adds nor removes volume headroom.
std::array<double, 3> normalize_point(const std::array<double, 3>& p, const ObjectiveBounds& b);
std::vector<std::array<double, 3>> normalize_points(const std::vector<std::array<double, 3>>& pts,
                                                    const ObjectiveBounds& b);

/// Exact dominated hypervolume of a minimization front against a reference
/// point. Points not strictly below the reference in every coordinate
/// contribute nothing.
double hypervolume(const std::vector<std::array<double, 3>>& front,
                   const std::array<double, 3>& ref);

enum class MwMethod { Auto, Exact, Normal };

struct MannWhitneyResult {
  double u = 0.0;  // U statistic of the first sample
  double p = 1.0;  // two-sided
};

/// Two-sided Mann-Whitney U test. Auto uses the exact permutation null for
/// small samples (n_a + n_b <= 12) and a tie-corrected normal approximation
/// with continuity correction otherwise.
MannWhitneyResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b,
                                 MwMethod method = MwMethod::Auto);

/// Binary CART over scenario inputs. Split nodes test gene < threshold
/// (left when true); leaves carry the majority label, ties landing on the
/// unsafe side.
struct TreeNode {
  int gene = -1;  // -1 marks a leaf
  double threshold = 0.0;
  std::unique_ptr<TreeNode> left;
  std::unique_ptr<TreeNode> right;
  bool label = false;
  int count = 0;
  std::array<int, 2> class_counts{0, 0};  // [negative, positive]

  bool is_leaf() const { return gene < 0; }
};

struct TreeParams {
  int max_depth = 3;
  int min_leaf = 10;
  void validate() const;
};

std::unique_ptr<TreeNode> tree_fit(const std::vector<TestInput>& inputs,
                                   const std::vector<bool>& labels, const TreeParams& params);
bool tree_predict(const TreeNode& node, const TestInput& input);
std::string tree_to_text(const TreeNode& root);

/// How a scenario found on one backend fares when replayed on another.
/// Sources must be critical; 1x covers sources the warning system missed,
/// 2x sources it caught. 1a and 2b are the agreement categories, everything
/// else is cross-backend divergence.
enum class XsimCategory {
  UnsafeConfirmed,   // 1a: still critical, still missed
  UnsafeMitigated,   // 1b: still critical, now caught
  UnsafeVanished,    // 1c: no longer critical
  SafeDegraded,      // 2a: still critical, but the warning now fails
  SafeConfirmed,     // 2b: still critical, still caught
  SafeVanished       // 2c: no longer critical
};

const char* xsim_category_code(XsimCategory c);  // "1a" .. "2c"

XsimCategory xsim_categorize(const ScenarioOutcome& source, const ScenarioOutcome& replayed);

/// Per-category totals indexed by XsimCategory, i.e. [1a,1b,1c,2a,2b,2c].
std::array<int, 6> count_categories(const std::vector<XsimCategory>& categories);

/// Fixed-width histogram over [lo, hi); values outside clamp to the edge
/// bins so nothing is silently dropped.
struct Histogram {
  double lo = 0.0;
  double width = 0.0;
  std::vector<int> counts;
};

Histogram make_histogram(const std::vector<double>& values, double lo, double hi, double width);

}  // namespace crossim

#include "crossim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "crossim/errors.hpp"
#include "crossim/format.hpp"

namespace crossim {

ObjectiveBounds objective_bounds(const std::vector<std::array<double, 3>>& points) {
  if (points.empty()) throw DataError("objective bounds over an empty set");
  ObjectiveBounds b;
  for (int d = 0; d < 3; ++d) {
    b.lo[d] = std::numeric_limits<double>::infinity();
    b.hi[d] = -std::numeric_limits<double>::infinity();
  }
  for (const auto& p : points) {
    for (int d = 0; d < 3; ++d) {
      b.lo[d] = std::min(b.lo[d], p[d]);
      b.hi[d] = std::max(b.hi[d], p[d]);
    }
  }
  return b;
}

std::array<double, 3> normalize_point(const std::array<double, 3>& p, const ObjectiveBounds& b) {
  std::array<double, 3> out{};
  for (int d = 0; d < 3; ++d) {
    double span = b.hi[d] - b.lo[d];
    out[d] = span > 0.0 ? (p[d] - b.lo[d]) / span : 0.0;
  }
  return out;
}

std::vector<std::array<double, 3>> normalize_points(const std::vector<std::array<double, 3>>& pts,
                                                    const ObjectiveBounds& b) {
  std::vector<std::array<double, 3>> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(normalize_point(p, b));
  return out;
}

double hypervolume(const std::vector<std::array<double, 3>>& front,
                   const std::array<double, 3>& ref) {
  std::vector<std::array<double, 3>> pts;
  for (const auto& p : front)
    if (p[0] < ref[0] && p[1] < ref[1] && p[2] < ref[2]) pts.push_back(p);
  if (pts.empty()) return 0.0;

  // Grid of all point coordinates per axis, closed off by the reference;
  // a cell is dominated exactly when some point sits at or below its lower
  // corner, so summing dominated cells is exact.
  std::array<std::vector<double>, 3> axes;
  for (int d = 0; d < 3; ++d) {
    for (const auto& p : pts) axes[d].push_back(p[d]);
    axes[d].push_back(ref[d]);
    std::sort(axes[d].begin(), axes[d].end());
    axes[d].erase(std::unique(axes[d].begin(), axes[d].end()), axes[d].end());
  }

  double volume = 0.0;
  for (std::size_t i = 0; i + 1 < axes[0].size(); ++i) {
    for (std::size_t j = 0; j + 1 < axes[1].size(); ++j) {
      for (std::size_t k = 0; k + 1 < axes[2].size(); ++k) {
        double x = axes[0][i], y = axes[1][j], z = axes[2][k];
        bool covered = false;
        for (const auto& p : pts) {
          if (p[0] <= x && p[1] <= y && p[2] <= z) {
            covered = true;
            break;
          }
        }
        if (covered)
          volume += (axes[0][i + 1] - x) * (axes[1][j + 1] - y) * (axes[2][k + 1] - z);
      }
    }
  }
  return volume;
}

namespace {

// Midranks of the pooled sample: tied values share the average of the rank
// positions they occupy.
std::vector<double> midranks(const std::vector<double>& pooled) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
  std::vector<double> rank(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    double mid = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = mid;
    i = j + 1;
  }
  return rank;
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

MannWhitneyResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b,
                                 MwMethod method) {
  if (a.empty() || b.empty()) throw DataError("Mann-Whitney needs two non-empty samples");
  const std::size_t na = a.size(), nb = b.size(), n = na + nb;

  std::vector<double> pooled;
  pooled.reserve(n);
  pooled.insert(pooled.end(), a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<double> rank = midranks(pooled);

  double ra = 0.0;
  for (std::size_t i = 0; i < na; ++i) ra += rank[i];
  const double mu = 0.5 * static_cast<double>(na) * static_cast<double>(nb);
  MannWhitneyResult res;
  res.u = ra - 0.5 * static_cast<double>(na) * static_cast<double>(na + 1);

  const bool exact = method == MwMethod::Exact || (method == MwMethod::Auto && n <= 12);
  if (exact) {
    if (n > 24)
      throw ConfigError("exact Mann-Whitney supports at most 24 observations; use the normal method");
    // Permutation null: every way of assigning the pooled ranks to sample a
    // is equally likely. Count assignments at least as extreme as observed.
    const double cutoff = std::abs(res.u - mu) - 1e-12;
    std::vector<std::size_t> comb(na);
    std::iota(comb.begin(), comb.end(), 0);
    long long total = 0, extreme = 0;
    do {
      double r = 0.0;
      for (std::size_t idx : comb) r += rank[idx];
      double u = r - 0.5 * static_cast<double>(na) * static_cast<double>(na + 1);
      if (std::abs(u - mu) >= cutoff) ++extreme;
      ++total;
    } while (next_combination(comb, n));
    res.p = static_cast<double>(extreme) / static_cast<double>(total);
    return res;
  }

  // Normal approximation with tie and continuity corrections.
  double tie_term = 0.0;
  {
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
      double t = static_cast<double>(j - i + 1);
      tie_term += t * t * t - t;
      i = j + 1;
    }
  }
  const double nn = static_cast<double>(n);
  double sigma2 = (static_cast<double>(na) * static_cast<double>(nb) / 12.0) *
                  ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
  if (sigma2 <= 0.0) {
    res.p = 1.0;  // every observation tied
    return res;
  }
  double z = (std::abs(res.u - mu) - 0.5) / std::sqrt(sigma2);
  if (z < 0.0) z = 0.0;
  res.p = std::clamp(std::erfc(z / std::sqrt(2.0)), 0.0, 1.0);
  return res;
}

void TreeParams::validate() const {
  if (max_depth < 0) throw ConfigError("tree max_depth must be non-negative");
  if (min_leaf < 1) throw ConfigError("tree min_leaf must be at least 1");
}

namespace {

double gini(int pos, int n) {
  double p = static_cast<double>(pos) / static_cast<double>(n);
  return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

struct TreeBuilder {
  const std::vector<TestInput>& xs;
  const std::vector<bool>& ys;
  const TreeParams& params;

  std::unique_ptr<TreeNode> build(std::vector<int> idx, int depth) {
    auto node = std::make_unique<TreeNode>();
    const int n = static_cast<int>(idx.size());
    int pos = 0;
    for (int i : idx) pos += ys[i] ? 1 : 0;
    node->count = n;
    node->class_counts = {n - pos, pos};
    node->label = 2 * pos >= n;  // a tied leaf stays flagged

    const bool pure = pos == 0 || pos == n;
    if (depth >= params.max_depth || pure || n < 2 * params.min_leaf) return node;

    double best_gini = std::numeric_limits<double>::infinity();
    int best_gene = -1;
    double best_thr = 0.0;
    for (int g = 0; g < TestInput::kGenes; ++g) {
      std::vector<int> order = idx;
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return xs[a].gene(g) < xs[b].gene(g); });
      // positives among the first s samples, for every candidate cut
      std::vector<int> prefix(n + 1, 0);
      for (int s = 0; s < n; ++s) prefix[s + 1] = prefix[s] + (ys[order[s]] ? 1 : 0);
      for (int s = 1; s < n; ++s) {
        double lo = xs[order[s - 1]].gene(g), hi = xs[order[s]].gene(g);
        if (lo == hi) continue;  // no boundary between equal values
        int nl = s, nr = n - s;
        if (nl < params.min_leaf || nr < params.min_leaf) continue;
        double score = (nl * gini(prefix[s], nl) + nr * gini(pos - prefix[s], nr)) / n;
        if (score < best_gini - 1e-12) {
          best_gini = score;
          best_gene = g;
          best_thr = 0.5 * (lo + hi);
        }
      }
    }
    if (best_gene < 0) return node;

    std::vector<int> left_idx, right_idx;
    for (int i : idx)
      (xs[i].gene(best_gene) < best_thr ? left_idx : right_idx).push_back(i);
    node->gene = best_gene;
    node->threshold = best_thr;
    node->left = build(std::move(left_idx), depth + 1);
    node->right = build(std::move(right_idx), depth + 1);
    return node;
  }
};

void render_tree(const TreeNode& node, const std::string& indent, std::string& out) {
  if (node.is_leaf()) {
    out += indent + "leaf " + (node.label ? "True" : "False") +
           " (n=" + std::to_string(node.count) + ", false=" + std::to_string(node.class_counts[0]) +
           ", true=" + std::to_string(node.class_counts[1]) + ")\n";
    return;
  }
  out += indent + "if " + TestInput::gene_name(node.gene) + " < " + fmt_double(node.threshold) +
         ":\n";
  render_tree(*node.left, indent + "  ", out);
  out += indent + "else:\n";
  render_tree(*node.right, indent + "  ", out);
}

}  // namespace

std::unique_ptr<TreeNode> tree_fit(const std::vector<TestInput>& inputs,
                                   const std::vector<bool>& labels, const TreeParams& params) {
  params.validate();
  if (inputs.empty()) throw DataError("cannot fit a tree to an empty sample");
  if (inputs.size() != labels.size())
    throw DataError("tree inputs and labels differ in length");
  std::vector<int> idx(inputs.size());
  std::iota(idx.begin(), idx.end(), 0);
  TreeBuilder builder{inputs, labels, params};
  return builder.build(std::move(idx), 0);
}

bool tree_predict(const TreeNode& node, const TestInput& input) {
  const TreeNode* cur = &node;
  while (!cur->is_leaf()) cur = input.gene(cur->gene) < cur->threshold ? cur->left.get() : cur->right.get();
  return cur->label;
}

std::string tree_to_text(const TreeNode& root) {
  std::string out;
  render_tree(root, "", out);
  return out;
}

const char* xsim_category_code(XsimCategory c) {
  switch (c) {
    case XsimCategory::UnsafeConfirmed: return "1a";
    case XsimCategory::UnsafeMitigated: return "1b";
    case XsimCategory::UnsafeVanished: return "1c";
    case XsimCategory::SafeDegraded: return "2a";
    case XsimCategory::SafeConfirmed: return "2b";
    case XsimCategory::SafeVanished: return "2c";
  }
  throw DataError("invalid cross-check category");
}

XsimCategory xsim_categorize(const ScenarioOutcome& source, const ScenarioOutcome& replayed) {
  Classification s = classify(source);
  Classification r = classify(replayed);
  if (!s.critical) throw DataError("cross-check source scenario is not critical");
  if (s.violation) {
    if (!r.critical) return XsimCategory::UnsafeVanished;
    return r.violation ? XsimCategory::UnsafeConfirmed : XsimCategory::UnsafeMitigated;
  }
  if (!r.critical) return XsimCategory::SafeVanished;
  return r.violation ? XsimCategory::SafeDegraded : XsimCategory::SafeConfirmed;
}

std::array<int, 6> count_categories(const std::vector<XsimCategory>& categories) {
  std::array<int, 6> counts{};
  for (XsimCategory c : categories) counts[static_cast<int>(c)] += 1;
  return counts;
}

Histogram make_histogram(const std::vector<double>& values, double lo, double hi, double width) {
  if (width <= 0.0) throw ConfigError("histogram width must be positive");
  if (hi <= lo) throw ConfigError("histogram range must be non-empty");
  Histogram h;
  h.lo = lo;
  h.width = width;
  int bins = static_cast<int>(std::ceil((hi - lo) / width - 1e-12));
  h.counts.assign(std::max(bins, 1), 0);
  for (double v : values) {
    int i = static_cast<int>(std::floor((v - lo) / width));
    i = std::clamp(i, 0, static_cast<int>(h.counts.size()) - 1);
    h.counts[i] += 1;
  }
  return h;
}

}  // namespace crossim

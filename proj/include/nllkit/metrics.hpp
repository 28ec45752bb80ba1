#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nllkit/stats.hpp"
#include "nllkit/types.hpp"

namespace nllkit {

// Rank-statistic AUC: P(score_pos > score_neg) + 0.5 * P(equal) over all
// positive/negative pairs, computed through mid-ranks.
inline double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size()) throw std::invalid_argument("auc: length mismatch");
  double n_pos = 0.0, n_neg = 0.0;
  for (int y : labels) (y != 0 ? n_pos : n_neg) += 1.0;
  if (n_pos == 0.0 || n_neg == 0.0)
    throw std::invalid_argument("auc: both classes must be present");
  std::vector<double> ranks = midranks(scores);
  double rank_sum_pos = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != 0) rank_sum_pos += ranks[i];
  return (rank_sum_pos - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

struct YoudenResult {
  double threshold = std::numeric_limits<double>::infinity();
  double j = 0.0;
  double tpr = 0.0;
  double fpr = 0.0;
};

// Threshold maximizing J = TPR - FPR under the rule (score >= threshold ->
// positive). Candidates are the distinct scores plus +inf (predict nothing).
// Ties broken by higher TPR, then lower threshold.
inline YoudenResult youden_threshold(const std::vector<double>& scores,
                                     const std::vector<int>& labels) {
  if (scores.size() != labels.size())
    throw std::invalid_argument("youden_threshold: length mismatch");
  std::size_t n_pos = 0, n_neg = 0;
  for (int y : labels) (y != 0 ? n_pos : n_neg) += 1;
  if (n_pos == 0 || n_neg == 0)
    throw std::invalid_argument("youden_threshold: both classes must be present");

  std::vector<std::pair<double, int>> sorted(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) sorted[i] = {scores[i], labels[i]};
  std::sort(sorted.begin(), sorted.end());

  YoudenResult best;  // +inf candidate: TPR = FPR = J = 0
  // Walking candidates in descending order keeps suffix counts incremental;
  // the ascending tie-breaks are handled by >= comparisons below.
  std::size_t tp = 0, fp = 0;
  std::size_t i = sorted.size();
  while (i > 0) {
    std::size_t j = i;
    double candidate = sorted[i - 1].first;
    while (j > 0 && sorted[j - 1].first == candidate) {
      if (sorted[j - 1].second != 0)
        ++tp;
      else
        ++fp;
      --j;
    }
    double tpr = static_cast<double>(tp) / static_cast<double>(n_pos);
    double fpr = static_cast<double>(fp) / static_cast<double>(n_neg);
    double jstat = tpr - fpr;
    bool better = jstat > best.j || (jstat == best.j && tpr > best.tpr) ||
                  (jstat == best.j && tpr == best.tpr && candidate < best.threshold);
    if (better) best = {candidate, jstat, tpr, fpr};
    i = j;
  }
  return best;
}

// Recall / precision breakdown against truth annotations, PU-style. Rates
// whose reference class is empty are absent; zero predicted positives yields
// absent precision and a zero gmean.
struct PuMetrics {
  std::optional<double> recall_reported;
  std::optional<double> recall_noisy;
  std::optional<double> recall_overall;
  std::optional<double> precision;
  std::optional<double> pu_gmean;  // recall_overall^2 / predicted-positive rate
  std::size_t predicted_positives = 0;
};

inline PuMetrics classification_metrics(const std::vector<int>& predictions,
                                        const std::vector<Truth>& truths) {
  if (predictions.size() != truths.size())
    throw std::invalid_argument("classification_metrics: length mismatch");
  const std::size_t n = predictions.size();
  std::size_t n_rep = 0, n_noisy = 0, tp_rep = 0, tp_noisy = 0, pp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bool predicted = predictions[i] != 0;
    if (predicted) ++pp;
    if (truths[i] == Truth::Reported) {
      ++n_rep;
      if (predicted) ++tp_rep;
    } else if (truth_noisy(truths[i])) {
      ++n_noisy;
      if (predicted) ++tp_noisy;
    }
  }

  PuMetrics m;
  m.predicted_positives = pp;
  if (n_rep > 0) m.recall_reported = static_cast<double>(tp_rep) / static_cast<double>(n_rep);
  if (n_noisy > 0) m.recall_noisy = static_cast<double>(tp_noisy) / static_cast<double>(n_noisy);
  const std::size_t n_union = n_rep + n_noisy;
  if (n_union > 0) {
    double recall = static_cast<double>(tp_rep + tp_noisy) / static_cast<double>(n_union);
    m.recall_overall = recall;
    if (pp > 0) {
      m.precision = static_cast<double>(tp_rep + tp_noisy) / static_cast<double>(pp);
      double pp_rate = static_cast<double>(pp) / static_cast<double>(n);
      m.pu_gmean = recall * recall / pp_rate;
    } else {
      m.pu_gmean = 0.0;
    }
  }
  return m;
}

}  // namespace nllkit

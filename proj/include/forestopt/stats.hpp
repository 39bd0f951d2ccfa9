#pragma once

#include <span>

namespace forestopt {

/// Descriptive summary; stddev is the population form (divide by n).
struct SummaryStats {
  double mean = 0;
  double stddev = 0;
  double max = 0;
  double min = 0;
};

SummaryStats summarize(std::span<const double> xs);

/// Two-sided rank-sum test, normal approximation with midranks, tie-corrected
/// variance and 0.5 continuity correction. Verdict against alpha = 0.05 with
/// lower mean counting as better: '+' a better, '-' b better, '=' otherwise.
struct WilcoxonResult {
  double p_value = 1;
  char verdict = '=';
};

WilcoxonResult wilcoxon_rank_sum(std::span<const double> a,
                                 std::span<const double> b);

/// (runner_mean - best_mean) / runner_mean * 100.
double gain_percent(double best_mean, double runner_mean);

}  // namespace forestopt

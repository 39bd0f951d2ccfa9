#include "forestopt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace forestopt {

SummaryStats summarize(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("empty sample");
  SummaryStats st;
  st.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  double var = 0;
  for (double x : xs) var += (x - st.mean) * (x - st.mean);
  st.stddev = std::sqrt(var / xs.size());
  st.max = *std::max_element(xs.begin(), xs.end());
  st.min = *std::min_element(xs.begin(), xs.end());
  return st;
}

namespace {

std::vector<double> midranks(const std::vector<double>& vals) {
  const std::size_t n = vals.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && vals[order[j + 1]] == vals[order[i]]) ++j;
    double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

WilcoxonResult wilcoxon_rank_sum(std::span<const double> a,
                                 std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("need at least two observations per sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double n = na + nb;

  std::vector<double> combined(a.begin(), a.end());
  combined.insert(combined.end(), b.begin(), b.end());
  std::vector<double> ranks = midranks(combined);

  double w = 0;
  for (std::size_t i = 0; i < a.size(); ++i) w += ranks[i];
  double mu = na * (n + 1.0) / 2.0;

  // Tie-corrected variance over the combined sample.
  std::vector<double> sorted(combined);
  std::sort(sorted.begin(), sorted.end());
  double tie = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    double t = static_cast<double>(j - i + 1);
    tie += t * t * t - t;
    i = j + 1;
  }
  double var = na * nb / 12.0 * ((n + 1.0) - tie / (n * (n - 1.0)));

  WilcoxonResult res;
  if (var <= 0) {
    res.p_value = 1.0;
    res.verdict = '=';
    return res;
  }
  double z;
  if (w > mu)
    z = (w - mu - 0.5) / std::sqrt(var);
  else if (w < mu)
    z = (w - mu + 0.5) / std::sqrt(var);
  else
    z = 0.0;
  res.p_value = std::erfc(std::abs(z) / std::sqrt(2.0));

  double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / na;
  double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / nb;
  if (res.p_value < 0.05 && mean_a < mean_b)
    res.verdict = '+';
  else if (res.p_value < 0.05 && mean_a > mean_b)
    res.verdict = '-';
  else
    res.verdict = '=';
  return res;
}

double gain_percent(double best_mean, double runner_mean) {
  if (runner_mean == 0) throw std::domain_error("undefined gain: zero runner-up mean");
  return (runner_mean - best_mean) / runner_mean * 100.0;
}

}  // namespace forestopt

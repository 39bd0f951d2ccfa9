#include "forestopt/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace forestopt {

bool keep_better(const ObjectiveVector& incumbent,
                 const ObjectiveVector& offspring, std::mt19937_64& rng) {
  if (dominates(offspring, incumbent)) return true;
  if (dominates(incumbent, offspring)) return false;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return unit(rng) < 0.5;
}

Solution gwo_update(const Solution& wolf, const Solution& alpha,
                    const Solution& beta, const Solution& delta, int it,
                    int g_max, const Scenario& s, std::mt19937_64& rng) {
  Eigen::VectorXd x = flatten_continuous(wolf, true);
  const Eigen::VectorXd leaders[3] = {flatten_continuous(alpha, true),
                                      flatten_continuous(beta, true),
                                      flatten_continuous(delta, true)};
  double u = 2.0 * (1.0 - static_cast<double>(it) / g_max);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd out(x.size());
  for (Eigen::Index d = 0; d < x.size(); ++d) {
    double acc = 0;
    for (const auto& lead : leaders) {
      double o = 2.0 * unit(rng);
      double uu = 2.0 * u * unit(rng) - u;
      double g = std::abs(o * lead[d] - x[d]);
      acc += lead[d] - uu * g;
    }
    out[d] = acc / 3.0;
  }
  Solution res = wolf;
  unflatten_continuous(out, true, res);
  repair(res, s);
  return res;
}

Solution qbl_update(const Solution& sol, const Scenario& s,
                    std::mt19937_64& rng, bool include_f) {
  Eigen::VectorXd x = flatten_continuous(sol, include_f);
  auto [lo, hi] = continuous_bounds(s, include_f);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd out(x.size());
  for (Eigen::Index d = 0; d < x.size(); ++d) {
    double opposite = hi[d] + lo[d] - x[d];
    double mid = lo[d] + (hi[d] - lo[d]) / 2.0;
    out[d] = mid + unit(rng) * (opposite - mid);
  }
  Solution res = sol;
  unflatten_continuous(out, include_f, res);
  repair(res, s);
  return res;
}

int diffusion_time(int it, int g_max) { return g_max - it + 1; }

double diffusion_alpha(int t, int g_max) {
  if (t <= 0) t = 1;
  double c = std::cos(std::numbers::pi * t / (2.0 * g_max));
  return std::clamp(c * c, 0.0, 1.0 - 1e-12);
}

double diffusion_sigma(int t, int g_max) {
  double a_t = diffusion_alpha(t, g_max);
  double a_next = diffusion_alpha(t + 1, g_max);
  double ratio = (1.0 - a_next) / (1.0 - a_t) - 1.0;
  return std::sqrt(std::max(ratio, 0.0) * (1.0 - a_next));
}

std::vector<Solution> diffusion_update(const std::vector<ArchiveMember>& members,
                                       int it, int g_max, const Scenario& s,
                                       std::mt19937_64& rng, bool include_f) {
  std::vector<Solution> out;
  if (members.empty()) return out;
  const int n = static_cast<int>(members.size());

  std::vector<Eigen::Vector3d> objs;
  objs.reserve(n);
  for (const auto& m : members) objs.push_back(m.obj.values());
  NormalizedFront nf = normalize_front(objs);
  Eigen::Vector3d target = nf.points.front();
  for (const auto& p : nf.points) target = target.cwiseMin(p);
  Eigen::VectorXd pd(n);
  for (int i = 0; i < n; ++i) pd[i] = std::exp(-(nf.points[i] - target).norm());
  pd /= pd.sum();

  const int t = diffusion_time(it, g_max);
  const double a_t = diffusion_alpha(t, g_max);
  const double a_prev = diffusion_alpha(t - 1, g_max);
  const double sig = diffusion_sigma(t, g_max);
  const double sqrt_a_t = std::sqrt(a_t);
  const double one_minus = 1.0 - a_t;

  auto [lo, hi] = continuous_bounds(s, include_f);
  Eigen::VectorXd span = hi - lo;
  for (Eigen::Index d = 0; d < span.size(); ++d)
    if (span[d] <= 0) span[d] = 1.0;

  std::vector<Eigen::VectorXd> norm(n);
  for (int j = 0; j < n; ++j)
    norm[j] = (flatten_continuous(members[j].sol, include_f) - lo)
                  .cwiseQuotient(span);

  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd logw(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double sq = (norm[i] - sqrt_a_t * norm[j]).squaredNorm();
      logw[j] = std::log(pd[j]) - sq / (2.0 * one_minus);
    }
    double peak = logw.maxCoeff();
    Eigen::VectorXd xhat = Eigen::VectorXd::Zero(norm[i].size());
    double total = 0;
    for (int j = 0; j < n; ++j) {
      double w = std::exp(logw[j] - peak);
      xhat += w * norm[j];
      total += w;
    }
    xhat /= total;

    double coef = std::sqrt(std::max(0.0, 1.0 - a_prev - sig * sig));
    Eigen::VectorXd dir = (norm[i] - sqrt_a_t * xhat) / std::sqrt(one_minus);
    Eigen::VectorXd fresh(norm[i].size());
    for (Eigen::Index d = 0; d < fresh.size(); ++d) fresh[d] = gauss(rng);
    Eigen::VectorXd next = std::sqrt(a_prev) * xhat + coef * dir + sig * fresh;

    Solution res = members[i].sol;
    unflatten_continuous(lo + next.cwiseProduct(span), include_f, res);
    repair(res, s);
    out.push_back(std::move(res));
  }
  return out;
}

Eigen::VectorXi discrete_update(const Eigen::VectorXi& assign,
                                const Archive& arch, int m, double sigma1,
                                double sigma2, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double r = unit(rng);
  if (r < sigma1) return assign;
  if (r < sigma2 && !arch.empty()) {
    std::uniform_int_distribution<int> pick(0, arch.size() - 1);
    return arch.members()[pick(rng)].sol.assign;
  }
  Eigen::VectorXi fresh(assign.size());
  std::uniform_int_distribution<int> uav(1, m);
  for (Eigen::Index j = 0; j < fresh.size(); ++j) fresh[j] = uav(rng);
  return fresh;
}

}  // namespace forestopt

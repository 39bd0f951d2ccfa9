#include "forestopt/pareto.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace forestopt {

bool dominates(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  bool strict = false;
  for (int i = 0; i < 3; ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  return dominates(a.values(), b.values());
}

NormalizedFront normalize_front(const std::vector<Eigen::Vector3d>& objs) {
  if (objs.empty()) throw std::invalid_argument("empty front");
  NormalizedFront nf;
  nf.mins = objs.front();
  nf.maxs = objs.front();
  for (const auto& v : objs) {
    nf.mins = nf.mins.cwiseMin(v);
    nf.maxs = nf.maxs.cwiseMax(v);
  }
  nf.points.reserve(objs.size());
  for (const auto& v : objs) {
    Eigen::Vector3d p;
    for (int i = 0; i < 3; ++i) {
      double span = nf.maxs[i] - nf.mins[i];
      p[i] = span > 0 ? (v[i] - nf.mins[i]) / span : 0.0;
    }
    nf.points.push_back(p);
  }
  return nf;
}

double igd(const std::vector<Eigen::Vector3d>& front,
           const std::vector<Eigen::Vector3d>& reference) {
  if (front.empty()) throw std::invalid_argument("empty front");
  if (reference.empty()) throw std::invalid_argument("empty reference");
  double total = 0;
  for (const auto& r : reference) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : front) best = std::min(best, (r - f).norm());
    total += best;
  }
  return total / static_cast<double>(reference.size());
}

namespace {

int cell_index(const Eigen::Vector3d& pnorm, int divisions) {
  int idx = 0;
  for (int axis = 0; axis < 3; ++axis) {
    int a = static_cast<int>(pnorm[axis] * divisions);
    a = std::clamp(a, 0, divisions - 1);
    idx = idx * divisions + a;
  }
  return idx;
}

bool clean(const ArchiveMember& m) { return m.obj.feasible && !m.obj.penalized; }

bool same_member(const ArchiveMember& a, const ArchiveMember& b) {
  if (!(a.obj.values().array() == b.obj.values().array()).all()) return false;
  Eigen::VectorXd fa = flatten(a.sol), fb = flatten(b.sol);
  return fa.size() == fb.size() && (fa.array() == fb.array()).all();
}

}  // namespace

Archive::Archive(int capacity, int grid_divisions)
    : capacity_(capacity), divisions_(grid_divisions) {
  if (capacity < 1) throw std::invalid_argument("archive capacity must be >= 1");
  if (grid_divisions < 1)
    throw std::invalid_argument("grid divisions must be >= 1");
}

int Archive::occupancy(int cell) const {
  return static_cast<int>(std::count(cells_.begin(), cells_.end(), cell));
}

Archive archive_update(const Archive& arch,
                       const std::vector<ArchiveMember>& candidates,
                       std::mt19937_64& rng) {
  Archive out(arch.capacity_, arch.divisions_);
  std::vector<ArchiveMember> pool = arch.members_;
  pool.insert(pool.end(), candidates.begin(), candidates.end());
  if (pool.empty()) return out;

  // Flagged members survive only while nothing clean is available.
  if (std::any_of(pool.begin(), pool.end(), clean))
    std::erase_if(pool, [](const ArchiveMember& m) { return !clean(m); });

  // Union semantics: literal re-insertions collapse to one copy.
  std::vector<ArchiveMember> uniq;
  for (auto& c : pool) {
    bool dup = false;
    for (auto& u : uniq)
      if (same_member(c, u)) {
        dup = true;
        break;
      }
    if (!dup) uniq.push_back(std::move(c));
  }

  std::vector<ArchiveMember> nd;
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < uniq.size() && !dominated; ++j)
      dominated = j != i && dominates(uniq[j].obj, uniq[i].obj);
    if (!dominated) nd.push_back(uniq[i]);
  }

  std::vector<Eigen::Vector3d> objs;
  objs.reserve(nd.size());
  for (const auto& m : nd) objs.push_back(m.obj.values());
  NormalizedFront nf = normalize_front(objs);
  std::vector<int> cells(nd.size());
  for (std::size_t i = 0; i < nd.size(); ++i)
    cells[i] = cell_index(nf.points[i], arch.divisions_);

  TruncationLog log;
  log.initial_cells = cells;
  std::vector<char> alive(nd.size(), 1);
  int count = static_cast<int>(nd.size());
  while (count > arch.capacity_) {
    std::map<int, int> occ;
    for (std::size_t i = 0; i < nd.size(); ++i)
      if (alive[i]) ++occ[cells[i]];
    int best_cell = -1, best = 0;
    for (const auto& [cell, n] : occ)
      if (n > best) {
        best = n;
        best_cell = cell;
      }
    std::vector<int> in_cell;
    for (std::size_t i = 0; i < nd.size(); ++i)
      if (alive[i] && cells[i] == best_cell) in_cell.push_back(static_cast<int>(i));
    std::uniform_int_distribution<int> pick(0, static_cast<int>(in_cell.size()) - 1);
    int victim = in_cell[pick(rng)];
    alive[victim] = 0;
    --count;
    log.removed.push_back(victim);
  }

  for (std::size_t i = 0; i < nd.size(); ++i) {
    if (!alive[i]) continue;
    out.members_.push_back(std::move(nd[i]));
    out.cells_.push_back(cells[i]);
  }
  out.last_truncation_ = std::move(log);
  return out;
}

std::array<ArchiveMember, 3> select_leaders(const Archive& arch,
                                            std::mt19937_64& rng) {
  if (arch.empty()) throw std::domain_error("cannot select leaders: archive empty");
  const auto& members = arch.members();
  const auto& cells = arch.cells();
  std::vector<double> weight(members.size());
  for (std::size_t i = 0; i < members.size(); ++i)
    weight[i] = 1.0 / arch.occupancy(cells[i]);

  std::vector<int> pool(members.size());
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<int>(i);
  bool distinct = members.size() >= 3;

  std::array<ArchiveMember, 3> leaders;
  for (int l = 0; l < 3; ++l) {
    double total = 0;
    for (int idx : pool) total += weight[idx];
    std::uniform_real_distribution<double> spin(0.0, total);
    double target = spin(rng);
    int chosen = pool.back();
    double acc = 0;
    for (int idx : pool) {
      acc += weight[idx];
      if (target < acc) {
        chosen = idx;
        break;
      }
    }
    leaders[l] = members[chosen];
    if (distinct) std::erase(pool, chosen);
  }
  return leaders;
}

}  // namespace forestopt

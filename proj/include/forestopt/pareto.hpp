#pragma once

#include <array>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "forestopt/encoding.hpp"

namespace forestopt {

/// Componentwise <= with at least one strict <, minimization.
bool dominates(const Eigen::Vector3d& a, const Eigen::Vector3d& b);
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

struct ArchiveMember {
  Solution sol;
  ObjectiveVector obj;
};

struct NormalizedFront {
  std::vector<Eigen::Vector3d> points;
  Eigen::Vector3d mins{0, 0, 0};
  Eigen::Vector3d maxs{0, 0, 0};
};

/// (v - min) / (max - min) per objective; degenerate axes map to 0.
NormalizedFront normalize_front(const std::vector<Eigen::Vector3d>& objs);

/// Mean, over reference points, of the distance to the closest front point.
/// Both sets must be non-empty and are expected pre-normalized.
double igd(const std::vector<Eigen::Vector3d>& front,
           const std::vector<Eigen::Vector3d>& reference);

/// Audit trail of one truncation pass: the grid cell of every member before
/// truncation started, and which indices were evicted in order. Replaying the
/// occupancy counts verifies each eviction came from a fullest cell.
struct TruncationLog {
  std::vector<int> initial_cells;
  std::vector<int> removed;
};

/// Bounded non-dominated store with a crowding grid over the current
/// objective ranges. Hypercube occupancy drives both leader selection
/// (sparse cells preferred) and truncation (crowded cells evicted first).
class Archive {
 public:
  explicit Archive(int capacity, int grid_divisions = 10);

  int capacity() const { return capacity_; }
  int grid_divisions() const { return divisions_; }
  bool empty() const { return members_.empty(); }
  int size() const { return static_cast<int>(members_.size()); }
  const std::vector<ArchiveMember>& members() const { return members_; }
  const std::vector<int>& cells() const { return cells_; }
  int occupancy(int cell) const;
  const TruncationLog& last_truncation() const { return last_truncation_; }

 private:
  int capacity_;
  int divisions_;
  std::vector<ArchiveMember> members_;
  std::vector<int> cells_;  // grid cell per member
  TruncationLog last_truncation_;

  friend Archive archive_update(const Archive&,
                                const std::vector<ArchiveMember>&,
                                std::mt19937_64&);
};

/// Merges candidates into a fresh archive: clean (feasible, unpenalized)
/// members expel flagged ones, the pool is reduced to its non-dominated set,
/// the grid is rebuilt, and crowded cells are truncated down to capacity.
Archive archive_update(const Archive& arch,
                       const std::vector<ArchiveMember>& candidates,
                       std::mt19937_64& rng);

/// Roulette over 1/occupancy; the three picks are distinct whenever the
/// archive has at least three members. Throws std::domain_error when empty.
std::array<ArchiveMember, 3> select_leaders(const Archive& arch,
                                            std::mt19937_64& rng);

}  // namespace forestopt

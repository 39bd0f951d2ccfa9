#pragma once

#include <random>
#include <vector>

#include "forestopt/pareto.hpp"

namespace forestopt {

/// Greedy replacement: true when the offspring should replace the incumbent.
/// Dominating offspring always win, dominated ones always lose, mutual
/// non-dominance is a fair coin.
bool keep_better(const ObjectiveVector& incumbent,
                 const ObjectiveVector& offspring, std::mt19937_64& rng);

/// Grey-wolf move over all continuous blocks (Q, P, F, C). Per coordinate and
/// per leader, fresh coefficients O = 2r and U = 2ur - u are drawn, with
/// u = 2(1 - it/g_max); the three pulled positions are averaged. Assignment
/// is untouched; the result is repaired.
Solution gwo_update(const Solution& wolf, const Solution& alpha,
                    const Solution& beta, const Solution& delta, int it,
                    int g_max, const Scenario& s, std::mt19937_64& rng);

/// Quasi-opposition jump: each coordinate lands uniformly between the box
/// midpoint and the opposite point UB + LB - x. Acts on Q, P, C (F too when
/// include_f). Assignment untouched, result repaired.
Solution qbl_update(const Solution& sol, const Scenario& s,
                    std::mt19937_64& rng, bool include_f = false);

/// Reverse-time index: iteration `it` (1-based) maps to t = g_max - it + 1.
int diffusion_time(int it, int g_max);

/// cos^2(pi t / (2 g_max)), clamped to [0, 1 - 1e-12] so 1 - alpha stays
/// positive; t = 0 reuses t = 1.
double diffusion_alpha(int t, int g_max);
double diffusion_sigma(int t, int g_max);

/// One denoising step over every archive member's continuous blocks, run in
/// bound-normalized [0,1] coordinates. Members close to the ideal point (the
/// componentwise minimum of the normalized objectives) get the largest mixing
/// weights; the per-member kernel estimate then feeds the reverse update
/// x_{t-1} = sqrt(a_{t-1}) xhat
///         + sqrt(1 - a_{t-1} - sigma_t^2) (x - sqrt(a_t) xhat) / sqrt(1 - a_t)
///         + sigma_t w.
/// CPU allocations (unless include_f) and assignments are copied through;
/// outputs are mapped back and repaired.
std::vector<Solution> diffusion_update(const std::vector<ArchiveMember>& members,
                                       int it, int g_max, const Scenario& s,
                                       std::mt19937_64& rng,
                                       bool include_f = false);

/// Assignment-vector move driven by a single uniform draw r:
/// r < sigma1 keeps the vector, sigma1 <= r < sigma2 copies a uniformly
/// chosen archive member's assignment, otherwise every entry regenerates
/// uniformly on [1, m]. An empty archive falls through to regeneration.
Eigen::VectorXi discrete_update(const Eigen::VectorXi& assign,
                                const Archive& arch, int m, double sigma1,
                                double sigma2, std::mt19937_64& rng);

}  // namespace forestopt

// nomawf - optimal water-filling power allocation for downlink multi-cluster NOMA
// Copyright (C) 2026 the nomawf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef NOMAWF_ALLOCATOR_HPP
#define NOMAWF_ALLOCATOR_HPP

#include "nomawf/model.hpp"

#include <Eigen/Core>
#include <optional>
#include <vector>

namespace nomawf
{

/// Normalized rate demand r = R_min / W_s and the two beta forms built from
/// it. beta_pm = 2^r - 1 drives the power-minimization recursion (cluster
/// feasibility); beta_sr = (2^r - 1) / 2^r drives the sum-rate closed form.
/// beta_sr = beta_pm / (1 + beta_pm) always holds.
struct RateFraction
{
    double r = 0.0;
    double beta_pm = 0.0;
    double beta_sr = 0.0; // in [0, 1)
};

RateFraction rate_fraction(double min_rate_bps, double bandwidth_hz);

/// Optimal intra-cluster powers are affine in the cluster budget q:
/// p = slope * q + intercept, elementwise over members in decoding order.
/// The head slot of slope holds alpha (the product of (1 - beta_sr) over all
/// non-head members) and the head slot of intercept holds -sum of the
/// non-head intercepts, so the powers sum to q identically.
struct ClusterConstants
{
    Eigen::ArrayXd slope;
    Eigen::ArrayXd intercept; // Watt
};

/// A cluster reduced to one effective OMA user: gain h_eff = alpha * h_head,
/// budget offset c, and box bounds shifted by c / alpha.
struct VirtualUser
{
    double alpha = 1.0;
    double c_watt = 0.0;
    double h_eff = 0.0; // 1/W
    double q_min_watt = 0.0;
    double q_min_shifted_watt = 0.0;
    double p_mask_watt = 0.0;
    double p_mask_shifted_watt = 0.0;
    double bandwidth_hz = 0.0;
};

/// Minimum cluster budget under which every member can meet its rate demand,
/// via the tight-rate recursion: the head takes beta_pm / h, then each weaker
/// member in turn takes beta_pm * (power of all stronger members + 1 / h).
double q_min(const ClusterInstance &cluster);

enum class Violation
{
    none,
    p_mask,  // some cluster's q_min exceeds its per-carrier cap
    cellular // the q_min values alone exceed p_max
};

struct FeasibilityReport
{
    bool feasible = false;
    Violation violation = Violation::none;
    Eigen::Index cluster_index = -1; // first violating cluster for p_mask
    Eigen::ArrayXd cluster_q_min_watt;
};

/// Checks q_min_n <= p_mask_n for every cluster, then sum q_min <= p_max.
/// Reports the first violated condition.
FeasibilityReport feasibility(const ProblemInstance &instance);

ClusterConstants intra_cluster_constants(const ClusterInstance &cluster);

VirtualUser make_virtual_user(const ClusterInstance &cluster, double p_mask_watt);

/// Optimal powers for budget q (clamped at zero against roundoff).
/// Throws if q falls below q_min beyond tolerance.
Eigen::ArrayXd intra_cluster_allocate(const ClusterInstance &cluster, double q_watt);

/// Closed-form optimal cluster sum-rate at budget q: the non-head demands
/// plus the head rate W_s log2(1 + (alpha q - c) h_head).
double cluster_rate_at_budget(const ClusterInstance &cluster, double q_watt);

struct WaterfillResult
{
    Eigen::ArrayXd budgets_watt; // unshifted q_n, inside [q_min_n, p_mask_n]
    double dual_nu = 0.0;
    int iterations = 0;
    bool converged = false;
    double residual = 0.0; // |sum q_shifted - p_max_shifted| / p_max_shifted
};

/// Bisection water-filling over the virtual users: shifted budgets
/// clamp(W_s / (ln2 nu) - 1/h_eff, [q_min_shifted, p_mask_shifted]) with nu
/// bisected until the shifted budgets sum to p_max_shifted within eps.
/// When the shifted masks sum to no more than the shifted cellular budget,
/// every mask is saturated instead and no bisection runs.
WaterfillResult waterfill(const std::vector<VirtualUser> &virtual_users, double p_max_watt,
                          double eps = 1e-10, int max_iter = 200);

struct SolveResult
{
    FeasibilityReport feasibility;
    std::optional<PowerSolution> solution; // empty iff infeasible
};

/// End-to-end solve: feasibility, virtual-user reduction, water-filling,
/// then per-cluster closed-form powers and achieved rates.
SolveResult solve(const ProblemInstance &instance, double eps = 1e-10, int max_iter = 200);

} // namespace nomawf

#endif

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

#ifndef NOMAWF_ORACLE_HPP
#define NOMAWF_ORACLE_HPP

#include "nomawf/allocator.hpp"
#include "nomawf/model.hpp"

#include <Eigen/Core>
#include <string>
#include <vector>

// Brute-force verifiers for the closed forms. They intentionally share only
// the core types and the rate evaluation with the allocator, never its
// formulas, so transcription errors in the closed forms cannot cancel out.
namespace nomawf::oracle
{

struct OracleReport
{
    double max_abs_gap = 0.0;
    double max_rel_gap = 0.0;
    std::string argmax_case; // reference to the worst instance
};

/// q_min without any closed form: solve each member's rate-tightness
/// equation by scalar bisection on its power, head downward.
double qmin_by_bisection(const ClusterInstance &cluster);

struct GridSearchResult
{
    bool found = false; // a feasible grid point exists
    Eigen::ArrayXd powers_watt;
    double sum_rate_bps = 0.0;
};

/// Exhaustive grid over power splits summing to q, keeping only splits that
/// meet every rate demand. Cluster size must be <= 3.
GridSearchResult grid_search_intra(const ClusterInstance &cluster, double q_watt,
                                   int grid_points);

/// Exact box-constrained water-filling: sort the 2N water levels at which a
/// box edge activates and solve the piecewise-linear level equation in
/// closed form. Returns the shifted budgets; no iteration involved.
Eigen::ArrayXd breakpoint_waterfill(const std::vector<VirtualUser> &virtual_users,
                                    double p_max_shifted_watt);

} // namespace nomawf::oracle

#endif

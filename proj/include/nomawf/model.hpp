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

#ifndef NOMAWF_MODEL_HPP
#define NOMAWF_MODEL_HPP

#include <Eigen/Core>
#include <map>
#include <vector>

namespace nomawf
{

/// One user as seen on one subchannel. cnr is the channel-to-noise ratio
/// |g|^2 / noise_power in 1/W (noise is folded in at construction; all
/// downstream math works in linear units).
struct UserChannel
{
    int user_id = 0;
    double cnr = 0.0;          // 1/W, > 0
    double min_rate_bps = 0.0; // >= 0
};

/// The multiplexed user set of one subchannel. Users are kept sorted
/// ascending by (cnr, user_id); list order is the SIC decoding order, the
/// last element is the cluster head. Equal-cnr ties are broken by user_id,
/// lower id treated as weaker. Build through make_cluster.
struct ClusterInstance
{
    int subchannel_id = 0;
    std::vector<UserChannel> users;
    double bandwidth_hz = 0.0; // W_s, identical for all clusters of a problem

    Eigen::Index size() const { return static_cast<Eigen::Index>(users.size()); }
    const UserChannel &head() const { return users.back(); }
};

/// Full multi-cluster allocation problem. Build through make_problem.
struct ProblemInstance
{
    std::vector<ClusterInstance> clusters;
    double p_max_watt = 0.0;      // cellular power budget
    Eigen::ArrayXd p_mask_watt;   // per-carrier cap, one entry per cluster
};

/// Solver output: per-user powers and achieved rates, per-cluster budgets,
/// the water-filling dual and convergence diagnostics.
struct PowerSolution
{
    std::map<int, double> powers_watt;
    Eigen::ArrayXd cluster_budgets_watt;
    std::map<int, double> rates_bps;
    double dual_nu = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Sorts users into decoding order and validates invariants
/// (non-empty, finite positive cnr, finite nonnegative min rate, unique ids).
/// Throws std::invalid_argument on violation.
ClusterInstance make_cluster(int subchannel_id, std::vector<UserChannel> users,
                             double bandwidth_hz);

/// Validates cluster disjointness, equal bandwidth split and positive power
/// bounds. p_mask_watt must have one entry per cluster.
ProblemInstance make_problem(std::vector<ClusterInstance> clusters, double p_max_watt,
                             Eigen::ArrayXd p_mask_watt);

/// 10^((x-30)/10)
double dbm_to_watt(double x_dbm);

/// SINR of users[user_index] for decoding its own signal. Interference comes
/// from users later in the list (stronger, decoded after this one); the
/// cluster head sees none.
double sinr(const ClusterInstance &cluster, const Eigen::Ref<const Eigen::ArrayXd> &powers_watt,
            Eigen::Index user_index);

/// Shannon rate W_s * log2(1 + sinr), in bps.
double rate(const ClusterInstance &cluster, const Eigen::Ref<const Eigen::ArrayXd> &powers_watt,
            Eigen::Index user_index);

double cluster_sum_rate(const ClusterInstance &cluster,
                        const Eigen::Ref<const Eigen::ArrayXd> &powers_watt);

} // namespace nomawf

#endif

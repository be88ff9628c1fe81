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

#ifndef NOMAWF_GROUPING_HPP
#define NOMAWF_GROUPING_HPP

#include "nomawf/model.hpp"

#include <Eigen/Core>
#include <string>
#include <vector>

namespace nomawf
{

enum class SchemeKind
{
    fully_sc_sic, // everyone multiplexed on the whole band (N = 1)
    noma,         // clusters of at most u_max users, N = ceil(K / u_max)
    fdma          // one user per subchannel (N = K)
};

struct SchemeSpec
{
    SchemeKind kind = SchemeKind::noma;
    int u_max = 0; // required for noma, >= 2; ignored otherwise
};

/// "fully_sc_sic", "noma", "fdma" (CSV / config spelling)
std::string scheme_label(const SchemeSpec &spec);

int num_subchannels(const SchemeSpec &spec, int num_users);

/// Greedy grouping: repeated passes over subchannels in index order; in each
/// pass every non-full subchannel takes the unassigned user with the highest
/// cnr on it. The first pass picks the cluster heads, and cluster sizes end
/// up balanced to within one. Assignments are never revisited.
///
/// cnrs is num_users x num_subchannels (row index = user_id); min_rate_bps
/// has one entry per user. Throws if the table has fewer users than
/// subchannels or the scheme cannot fit all users.
std::vector<ClusterInstance> group_users(const Eigen::MatrixXd &cnrs,
                                         const Eigen::Ref<const Eigen::ArrayXd> &min_rate_bps,
                                         const SchemeSpec &spec, double total_bandwidth_hz);

} // namespace nomawf

#endif

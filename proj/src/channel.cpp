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

#include "nomawf/channel.hpp"

#include "nomawf/model.hpp"

#include <cmath>
#include <stdexcept>

namespace nomawf
{

namespace
{
    // substream tags
    constexpr std::uint64_t kPositionStream = 0x706f73; // "pos"
    constexpr std::uint64_t kShadowStream = 0x736877;   // "shw"
    constexpr std::uint64_t kFadingStream = 0x666164;   // "fad"

    void check_config(const ScenarioConfig &c)
    {
        if (c.num_users < 1)
            throw std::invalid_argument("num_users must be >= 1");
        if (!(c.min_distance_m > 0.0) || !(c.min_distance_m < c.cell_radius_m))
            throw std::invalid_argument("require 0 < min_distance_m < cell_radius_m");
        if (!(c.total_bandwidth_hz > 0.0))
            throw std::invalid_argument("total_bandwidth_hz must be positive");
        if (!(c.shadowing_sigma_db >= 0.0))
            throw std::invalid_argument("shadowing_sigma_db must be nonnegative");
    }
} // namespace

double ChannelRealization::fading(int user, int subchannel, int grid_size) const
{
    return SplitRng(seed)
        .split(kFadingStream)
        .split(static_cast<std::uint64_t>(grid_size))
        .split(static_cast<std::uint64_t>(user))
        .split(static_cast<std::uint64_t>(subchannel))
        .next_exponential();
}

Eigen::ArrayXd sample_positions(const ScenarioConfig &config, SplitRng &rng)
{
    check_config(config);
    const double lo2 = config.min_distance_m * config.min_distance_m;
    const double hi2 = config.cell_radius_m * config.cell_radius_m;

    Eigen::ArrayXd d(config.num_users);
    for (int k = 0; k < config.num_users; ++k)
    {
        auto user_rng = rng.split(static_cast<std::uint64_t>(k));
        d[k] = std::sqrt(user_rng.next_uniform(lo2, hi2));
    }
    return d;
}

double path_loss_linear(double distance_m)
{
    if (!(distance_m > 0.0))
        throw std::invalid_argument("distance_m must be positive");
    const double pl_db = 128.1 + 37.6 * std::log10(distance_m / 1000.0);
    return std::pow(10.0, -pl_db / 10.0);
}

double noise_power_watt(const ScenarioConfig &config, int num_subchannels)
{
    if (num_subchannels < 1)
        throw std::invalid_argument("num_subchannels must be >= 1");
    return dbm_to_watt(config.noise_density_dbm_hz) * config.total_bandwidth_hz /
           static_cast<double>(num_subchannels);
}

ChannelRealization generate_realization(const ScenarioConfig &config, std::uint64_t trial_seed)
{
    check_config(config);
    SplitRng root(trial_seed);

    ChannelRealization r;
    r.seed = trial_seed;

    auto pos_rng = root.split(kPositionStream);
    r.distance_m = sample_positions(config, pos_rng);

    auto shadow_rng = root.split(kShadowStream);
    r.large_scale.resize(config.num_users);
    for (int k = 0; k < config.num_users; ++k)
    {
        const double shadow_db =
            config.shadowing_sigma_db * shadow_rng.split(static_cast<std::uint64_t>(k)).next_normal();
        r.large_scale[k] = path_loss_linear(r.distance_m[k]) * std::pow(10.0, shadow_db / 10.0);
    }
    return r;
}

Eigen::MatrixXd realize_cnrs(const ScenarioConfig &config, const ChannelRealization &realization,
                             int num_subchannels)
{
    if (realization.large_scale.size() != config.num_users)
        throw std::invalid_argument("realization does not match config.num_users");
    const double noise = noise_power_watt(config, num_subchannels);

    Eigen::MatrixXd cnrs(config.num_users, num_subchannels);
    for (int k = 0; k < config.num_users; ++k)
        for (int n = 0; n < num_subchannels; ++n)
            cnrs(k, n) = realization.large_scale[k] *
                         realization.fading(k, n, num_subchannels) / noise;
    return cnrs;
}

} // namespace nomawf

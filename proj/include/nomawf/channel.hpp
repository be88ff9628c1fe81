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

#ifndef NOMAWF_CHANNEL_HPP
#define NOMAWF_CHANNEL_HPP

#include "nomawf/rng.hpp"

#include <Eigen/Core>
#include <cstdint>

namespace nomawf
{

/// Single-cell downlink scenario: circular coverage, uniform user drop,
/// 3GPP-style distance path loss, lognormal shadowing, Rayleigh fading.
struct ScenarioConfig
{
    int num_users = 30;
    double cell_radius_m = 500.0;
    double min_distance_m = 20.0;
    double total_bandwidth_hz = 5e6;
    double bs_power_dbm = 46.0;
    double noise_density_dbm_hz = -174.0;
    double shadowing_sigma_db = 8.0;
    std::uint64_t seed = 1;
};

/// One Monte Carlo draw. Large-scale terms (distance, path loss, shadowing)
/// are fixed per user; small-scale fading is a pure function of
/// (user, subchannel, grid size), so the same realization can be evaluated
/// on different subchannel grids while sharing its geometry.
struct ChannelRealization
{
    std::uint64_t seed = 0; // root of the fading substreams
    Eigen::ArrayXd distance_m;
    Eigen::ArrayXd large_scale; // path loss x shadowing, linear gain

    /// unit-mean exponential power gain, deterministic per (user, subchannel, grid)
    double fading(int user, int subchannel, int grid_size) const;
};

/// Distances distributed uniformly over the annulus area:
/// d = sqrt(U(min^2, radius^2)). One substream per user.
Eigen::ArrayXd sample_positions(const ScenarioConfig &config, SplitRng &rng);

/// 10^(-PL/10) with PL = 128.1 + 37.6 log10(d/km) dB. Throws on d <= 0.
double path_loss_linear(double distance_m);

/// AWGN power on one of num_subchannels equal slices of the total bandwidth.
double noise_power_watt(const ScenarioConfig &config, int num_subchannels);

/// Draws positions and shadowing from trial_seed. Fully deterministic:
/// identical (config, trial_seed) reproduce the realization bit for bit.
ChannelRealization generate_realization(const ScenarioConfig &config, std::uint64_t trial_seed);

/// CNR table h(k, n) = large_scale(k) * fading(k, n, N) / noise_per_subchannel,
/// sized num_users x num_subchannels.
Eigen::MatrixXd realize_cnrs(const ScenarioConfig &config, const ChannelRealization &realization,
                             int num_subchannels);

} // namespace nomawf

#endif

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

#ifndef NOMAWF_RNG_HPP
#define NOMAWF_RNG_HPP

#include <cmath>
#include <cstdint>

namespace nomawf
{

namespace detail
{
    // splitmix64 finalizer (Steele, Lea, Flood 2014)
    constexpr std::uint64_t mix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }
} // namespace detail

/// Seedable, splittable splitmix64 generator. split(i) derives an independent
/// substream keyed by i, so Monte Carlo trials, users and subchannels each get
/// their own reproducible stream regardless of evaluation order.
class SplitRng
{
  public:
    explicit SplitRng(std::uint64_t seed) : state_(seed) {}

    SplitRng split(std::uint64_t index) const
    {
        return SplitRng(detail::mix64(state_ ^ detail::mix64(index)));
    }

    std::uint64_t next_u64()
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        return detail::mix64(state_);
    }

    // uniform on (0,1); the half-ulp offset keeps log() finite
    double next_uniform()
    {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double next_uniform(double lo, double hi)
    {
        return lo + (hi - lo) * next_uniform();
    }

    // standard normal via Box-Muller
    double next_normal()
    {
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    // unit-mean exponential
    double next_exponential()
    {
        return -std::log(next_uniform());
    }

    std::uint64_t state() const { return state_; }

  private:
    std::uint64_t state_;
};

} // namespace nomawf

#endif

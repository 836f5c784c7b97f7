// SPDX-License-Identifier: Apache-2.0
//
// dmimo-sim: downlink performance of multi-cell distributed massive MIMO
// under transceiver hardware impairments
// Copyright (C) 2026 dmimo-sim developers
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

#ifndef DMIMO_RNG_HPP
#define DMIMO_RNG_HPP

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace dmimo::rng
{

// Stream purposes. Every random draw in the project comes from a stream
// keyed by (master seed, tag, indices...), so results never depend on
// iteration order or thread count.
enum Tag : std::uint64_t
{
    tag_ue_drop = 1,
    tag_shadow = 2,
    tag_channel = 3,
    tag_phase = 4,
    tag_pilot_noise = 5,
    tag_pilot_distortion = 6,
    tag_dl_noise = 7,
    tag_dl_distortion = 8,
    tag_data_symbol = 9,
    tag_synthetic_map = 10,
};

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives a substream seed from a master seed and an index path.
inline std::uint64_t derive(std::uint64_t master, std::initializer_list<std::uint64_t> path)
{
    std::uint64_t h = splitmix64(master);
    for (std::uint64_t p : path)
        h = splitmix64(h ^ (p + 0x632be59bd9b4e019ULL));
    return h;
}

/// A self-contained random stream. Consumption order within one stream is
/// fixed by the caller; distinct keys give statistically independent streams.
class Stream
{
  public:
    explicit Stream(std::uint64_t seed) : eng_(seed) {}

    Stream(std::uint64_t master, std::initializer_list<std::uint64_t> path)
        : eng_(derive(master, path))
    {
    }

    /// Uniform on [0, 1).
    double uniform() { return uni_(eng_); }

    /// Standard normal N(0, 1).
    double normal() { return norm_(eng_); }

    /// Circularly symmetric complex normal CN(0, 1).
    std::complex<double> cnormal()
    {
        const double re = norm_(eng_);
        const double im = norm_(eng_);
        return {re * inv_sqrt2, im * inv_sqrt2};
    }

  private:
    static constexpr double inv_sqrt2 = 0.7071067811865475244;
    std::mt19937_64 eng_;
    std::normal_distribution<double> norm_{0.0, 1.0};
    std::uniform_real_distribution<double> uni_{0.0, 1.0};
};

} // namespace dmimo::rng

#endif

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

#ifndef DMIMO_COMMON_HPP
#define DMIMO_COMMON_HPP

#include <stdexcept>
#include <string>

namespace dmimo
{

/// Local-oscillator architecture at a base station: one oscillator feeding
/// all antennas (common) or one oscillator per antenna (separate).
enum class LoArchitecture
{
    common,  // shared phase trajectory across antennas of a cell
    separate // independent phase trajectory per antenna
};

inline const char *to_string(LoArchitecture lo)
{
    return lo == LoArchitecture::common ? "clo" : "slo";
}

inline LoArchitecture lo_from_string(const std::string &s)
{
    if (s == "clo" || s == "common")
        return LoArchitecture::common;
    if (s == "slo" || s == "separate")
        return LoArchitecture::separate;
    throw std::invalid_argument("Unknown LO architecture: " + s);
}

} // namespace dmimo

#endif

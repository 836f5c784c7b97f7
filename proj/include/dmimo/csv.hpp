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

#ifndef DMIMO_CSV_HPP
#define DMIMO_CSV_HPP

#include <cstdio>
#include <string>

namespace dmimo::csv
{

/// Shortest representation that round-trips a double exactly; CSV outputs
/// must be byte-reproducible across runs and thread counts.
inline std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // trim to the shortest form that still round-trips
    for (int prec = 1; prec < 17; ++prec)
    {
        char probe[40];
        std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(probe, "%lf", &back);
        if (back == v)
            return probe;
    }
    return buf;
}

} // namespace dmimo::csv

#endif

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

#ifndef DMIMO_GEOMETRY_HPP
#define DMIMO_GEOMETRY_HPP

#include <armadillo>
#include <cstdint>
#include <vector>

namespace dmimo
{

struct Point
{
    double x = 0.0;
    double y = 0.0;
};

/// Cellular topology on a square wrap-around (toroidal) world: a grid of
/// square cells, each with a set of distributed subarrays and a set of
/// uniformly dropped single-antenna UEs.
struct NetworkLayout
{
    arma::uword cells_per_side = 0;
    double cell_size = 0.0; // meters
    arma::uword num_subarrays = 0;
    arma::uword antennas_per_subarray = 1;
    double min_ue_distance = 0.0;
    std::vector<Point> subarray_offsets;          // relative to cell center, size num_subarrays
    std::vector<std::vector<Point>> ue_positions; // [cell][ue], absolute coordinates

    arma::uword num_cells() const { return cells_per_side * cells_per_side; }
    arma::uword num_antennas() const { return num_subarrays * antennas_per_subarray; }
    arma::uword ues_per_cell() const
    {
        return ue_positions.empty() ? 0 : ue_positions.front().size();
    }
    double world_side() const { return cells_per_side * cell_size; }

    Point cell_center(arma::uword cell) const;
    Point subarray_center(arma::uword cell, arma::uword subarray) const;
};

/// Distance between two points on the toroidal world: the minimum Euclidean
/// distance over the nine shifted images of q.
double wraparound_distance(Point p, Point q, double world_side);

/// Builds the cell grid with num_subarrays subarray centers per cell placed
/// at equal angles (starting at 45 degrees) on a circle around the cell
/// center. No UEs are dropped yet.
NetworkLayout build_wraparound_layout(arma::uword cells_per_side, double cell_size,
                                      arma::uword num_subarrays, double subarray_radius,
                                      arma::uword antennas_per_subarray = 1);

/// Drops ues_per_cell UEs uniformly in every cell by rejection sampling;
/// accepted positions keep at least min_ue_distance (wrap-around) to every
/// subarray center of their own cell. Deterministic for a given seed.
NetworkLayout drop_ues(const NetworkLayout &layout, arma::uword ues_per_cell,
                       double min_ue_distance, std::uint64_t seed);

/// Distance-based power gain with a log-domain shadow term:
/// 10^(shadow - 1.53) / distance^3.76.
double attenuation(double distance, double shadow);

/// Channel gains lambda between every BS antenna and every UE. The values are
/// stored per (BS cell j, UE cell l, UE k, block) where a block is either a
/// subarray (factorized form: all antennas of a subarray share one gain) or a
/// single antenna (flat form).
class LargeScaleMap
{
  public:
    LargeScaleMap() = default;

    /// Subarray-factorized map: values indexed (j, l, k, subarray).
    static LargeScaleMap factorized(arma::uword cells, arma::uword ues, arma::uword subarrays,
                                    arma::uword antennas_per_subarray, arma::vec values);

    /// Per-antenna map with no subarray structure: values indexed (j, l, k, n).
    static LargeScaleMap flat(arma::uword cells, arma::uword ues, arma::uword antennas,
                              arma::vec values);

    bool is_factorized() const { return factorized_; }
    arma::uword num_cells() const { return cells_; }
    arma::uword ues_per_cell() const { return ues_; }
    arma::uword num_antennas() const { return blocks_ * multiplicity_; }
    arma::uword num_blocks() const { return blocks_; }
    arma::uword block_multiplicity() const { return multiplicity_; }
    arma::uword block_of_antenna(arma::uword n) const { return n / multiplicity_; }

    double lambda(arma::uword j, arma::uword l, arma::uword k, arma::uword antenna) const
    {
        return value_[index(j, l, k, antenna / multiplicity_)];
    }
    double lambda_tilde(arma::uword j, arma::uword l, arma::uword k, arma::uword subarray) const;

    /// Per-antenna gains for one (BS cell, UE cell, UE) link, length num_antennas().
    arma::vec lambda_row(arma::uword j, arma::uword l, arma::uword k) const;

    /// Per-block gains for the same link, length num_blocks().
    arma::vec block_row(arma::uword j, arma::uword l, arma::uword k) const;

    /// Same subarray gains, different antenna count per subarray. Factorized only.
    LargeScaleMap with_antennas_per_subarray(arma::uword antennas_per_subarray) const;

    const arma::vec &values() const { return value_; }

  private:
    arma::uword index(arma::uword j, arma::uword l, arma::uword k, arma::uword block) const
    {
        return ((j * cells_ + l) * ues_ + k) * blocks_ + block;
    }

    bool factorized_ = false;
    arma::uword cells_ = 0;
    arma::uword ues_ = 0;
    arma::uword blocks_ = 0;       // subarrays (factorized) or antennas (flat)
    arma::uword multiplicity_ = 1; // antennas per block
    arma::vec value_;
};

/// One shadow-fading sample per (BS cell, UE cell, UE, subarray) link, shared
/// by the antennas within a subarray; returns the factorized map. The shadow
/// exponent is drawn as N(0, shadow_variance) per link from a stream keyed by
/// the link indices, so the result is independent of evaluation order.
LargeScaleMap assemble_large_scale(const NetworkLayout &layout, double shadow_variance,
                                   std::uint64_t seed);

} // namespace dmimo

#endif

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

#include "dmimo/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "dmimo/rng.hpp"

namespace dmimo
{

namespace
{
constexpr double pi = 3.141592653589793238462643383279502884;
constexpr arma::uword max_placement_attempts = 10000;
} // namespace

Point NetworkLayout::cell_center(arma::uword cell) const
{
    const arma::uword row = cell / cells_per_side;
    const arma::uword col = cell % cells_per_side;
    return {(static_cast<double>(col) + 0.5) * cell_size,
            (static_cast<double>(row) + 0.5) * cell_size};
}

Point NetworkLayout::subarray_center(arma::uword cell, arma::uword subarray) const
{
    const Point c = cell_center(cell);
    const Point o = subarray_offsets.at(subarray);
    const double w = world_side();
    // keep absolute coordinates inside the world square
    double x = std::fmod(c.x + o.x + w, w);
    double y = std::fmod(c.y + o.y + w, w);
    return {x, y};
}

double wraparound_distance(Point p, Point q, double world_side)
{
    if (world_side <= 0.0)
        throw std::invalid_argument("wraparound_distance: world_side must be positive");

    double best = std::numeric_limits<double>::infinity();
    for (int sx = -1; sx <= 1; ++sx)
    {
        for (int sy = -1; sy <= 1; ++sy)
        {
            const double dx = p.x - (q.x + sx * world_side);
            const double dy = p.y - (q.y + sy * world_side);
            const double d2 = dx * dx + dy * dy;
            if (d2 < best)
                best = d2;
        }
    }
    return std::sqrt(best);
}

NetworkLayout build_wraparound_layout(arma::uword cells_per_side, double cell_size,
                                      arma::uword num_subarrays, double subarray_radius,
                                      arma::uword antennas_per_subarray)
{
    if (cells_per_side < 1 || num_subarrays < 1 || antennas_per_subarray < 1)
        throw std::invalid_argument("build_wraparound_layout: counts must be at least 1");
    if (cell_size <= 0.0)
        throw std::invalid_argument("build_wraparound_layout: cell_size must be positive");
    if (subarray_radius >= cell_size / 2.0)
        throw std::invalid_argument(
            "invalid-geometry: subarray_radius must be smaller than half the cell size");

    NetworkLayout layout;
    layout.cells_per_side = cells_per_side;
    layout.cell_size = cell_size;
    layout.num_subarrays = num_subarrays;
    layout.antennas_per_subarray = antennas_per_subarray;

    // Equal angles starting at 45 degrees; four subarrays land on the diagonals.
    layout.subarray_offsets.reserve(num_subarrays);
    for (arma::uword a = 0; a < num_subarrays; ++a)
    {
        const double angle = pi / 4.0 + 2.0 * pi * static_cast<double>(a) / num_subarrays;
        layout.subarray_offsets.push_back(
            {subarray_radius * std::cos(angle), subarray_radius * std::sin(angle)});
    }
    return layout;
}

NetworkLayout drop_ues(const NetworkLayout &layout, arma::uword ues_per_cell,
                       double min_ue_distance, std::uint64_t seed)
{
    if (ues_per_cell < 1)
        throw std::invalid_argument("drop_ues: ues_per_cell must be at least 1");

    NetworkLayout out = layout;
    out.min_ue_distance = min_ue_distance;
    out.ue_positions.assign(layout.num_cells(), {});

    const double w = layout.world_side();
    for (arma::uword cell = 0; cell < layout.num_cells(); ++cell)
    {
        rng::Stream stream(seed, {rng::tag_ue_drop, cell});
        const Point origin = {layout.cell_center(cell).x - layout.cell_size / 2.0,
                              layout.cell_center(cell).y - layout.cell_size / 2.0};
        auto &ues = out.ue_positions[cell];
        ues.reserve(ues_per_cell);

        for (arma::uword k = 0; k < ues_per_cell; ++k)
        {
            bool placed = false;
            for (arma::uword attempt = 0; attempt < max_placement_attempts; ++attempt)
            {
                const Point candidate = {origin.x + stream.uniform() * layout.cell_size,
                                         origin.y + stream.uniform() * layout.cell_size};
                bool ok = true;
                for (arma::uword a = 0; a < layout.num_subarrays && ok; ++a)
                    ok = wraparound_distance(candidate, layout.subarray_center(cell, a), w) >=
                         min_ue_distance;
                if (ok)
                {
                    ues.push_back(candidate);
                    placed = true;
                    break;
                }
            }
            if (!placed)
                throw std::runtime_error("placement-failure: could not place UE " +
                                         std::to_string(k) + " in cell " + std::to_string(cell) +
                                         "; min_ue_distance too large for the cell");
        }
    }
    return out;
}

double attenuation(double distance, double shadow)
{
    if (distance <= 0.0)
        throw std::invalid_argument("attenuation: distance must be positive");
    return std::pow(10.0, shadow - 1.53) / std::pow(distance, 3.76);
}

LargeScaleMap LargeScaleMap::factorized(arma::uword cells, arma::uword ues, arma::uword subarrays,
                                        arma::uword antennas_per_subarray, arma::vec values)
{
    if (values.n_elem != cells * cells * ues * subarrays)
        throw std::invalid_argument("LargeScaleMap: value count does not match the index space");
    if (antennas_per_subarray < 1)
        throw std::invalid_argument("LargeScaleMap: antennas_per_subarray must be at least 1");

    LargeScaleMap map;
    map.factorized_ = true;
    map.cells_ = cells;
    map.ues_ = ues;
    map.blocks_ = subarrays;
    map.multiplicity_ = antennas_per_subarray;
    map.value_ = std::move(values);
    return map;
}

LargeScaleMap LargeScaleMap::flat(arma::uword cells, arma::uword ues, arma::uword antennas,
                                  arma::vec values)
{
    if (values.n_elem != cells * cells * ues * antennas)
        throw std::invalid_argument("LargeScaleMap: value count does not match the index space");

    LargeScaleMap map;
    map.factorized_ = false;
    map.cells_ = cells;
    map.ues_ = ues;
    map.blocks_ = antennas;
    map.multiplicity_ = 1;
    map.value_ = std::move(values);
    return map;
}

double LargeScaleMap::lambda_tilde(arma::uword j, arma::uword l, arma::uword k,
                                   arma::uword subarray) const
{
    if (!factorized_)
        throw std::logic_error("LargeScaleMap: lambda_tilde requires a factorized map");
    return value_[index(j, l, k, subarray)];
}

arma::vec LargeScaleMap::lambda_row(arma::uword j, arma::uword l, arma::uword k) const
{
    arma::vec row(num_antennas());
    for (arma::uword n = 0; n < row.n_elem; ++n)
        row[n] = value_[index(j, l, k, n / multiplicity_)];
    return row;
}

arma::vec LargeScaleMap::block_row(arma::uword j, arma::uword l, arma::uword k) const
{
    arma::vec row(blocks_);
    for (arma::uword b = 0; b < blocks_; ++b)
        row[b] = value_[index(j, l, k, b)];
    return row;
}

LargeScaleMap LargeScaleMap::with_antennas_per_subarray(arma::uword antennas_per_subarray) const
{
    if (!factorized_)
        throw std::logic_error("LargeScaleMap: antenna resizing requires a factorized map");
    LargeScaleMap map = *this;
    if (antennas_per_subarray < 1)
        throw std::invalid_argument("LargeScaleMap: antennas_per_subarray must be at least 1");
    map.multiplicity_ = antennas_per_subarray;
    return map;
}

LargeScaleMap assemble_large_scale(const NetworkLayout &layout, double shadow_variance,
                                   std::uint64_t seed)
{
    if (layout.ues_per_cell() == 0)
        throw std::invalid_argument("assemble_large_scale: layout has no UEs dropped");
    if (shadow_variance < 0.0)
        throw std::invalid_argument("assemble_large_scale: shadow variance must be nonnegative");

    const arma::uword cells = layout.num_cells();
    const arma::uword ues = layout.ues_per_cell();
    const arma::uword subarrays = layout.num_subarrays;
    const double shadow_std = std::sqrt(shadow_variance);
    const double w = layout.world_side();

    arma::vec values(cells * cells * ues * subarrays);
    for (arma::uword j = 0; j < cells; ++j)
        for (arma::uword l = 0; l < cells; ++l)
            for (arma::uword k = 0; k < ues; ++k)
                for (arma::uword a = 0; a < subarrays; ++a)
                {
                    rng::Stream stream(seed, {rng::tag_shadow, j, l, k, a});
                    const double s = shadow_std * stream.normal();
                    const double d = wraparound_distance(layout.ue_positions[l][k],
                                                         layout.subarray_center(j, a), w);
                    values[((j * cells + l) * ues + k) * subarrays + a] = attenuation(d, s);
                }

    return LargeScaleMap::factorized(cells, ues, subarrays, layout.antennas_per_subarray,
                                     std::move(values));
}

} // namespace dmimo

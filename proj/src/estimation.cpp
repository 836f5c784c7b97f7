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

#include "dmimo/estimation.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace dmimo
{

PhaseDecay phase_decay(double t, arma::uword pilot_len, double delta)
{
    if (pilot_len < 1)
        throw std::invalid_argument("phase_decay: pilot_len must be at least 1");
    if (delta < 0.0)
        throw std::invalid_argument("phase_decay: delta must be nonnegative");

    PhaseDecay decay;
    decay.t = t;
    decay.delta = delta;
    decay.d.set_size(pilot_len);
    for (arma::uword b = 0; b < pilot_len; ++b)
        decay.d[b] = std::exp(-0.5 * delta * std::abs(t - static_cast<double>(b + 1)));
    return decay;
}

arma::cx_vec PhiBlocks::solve(arma::uword blk, const arma::cx_vec &rhs) const
{
    const arma::cx_mat &lower = chol_lower.at(blk);
    if (lower.is_empty())
        throw std::runtime_error("singular-phi: pilot covariance block is not positive definite "
                                 "(bs_noise = 0 with degenerate pilots)");
    // two triangular solves against the cached factor
    arma::cx_vec y = arma::solve(arma::trimatl(lower), rhs);
    return arma::solve(arma::trimatu(lower.t()), y);
}

arma::cx_mat PhiBlocks::expand_full() const
{
    const arma::uword n_ant = num_antennas();
    const arma::uword dim = pilot_len * n_ant;
    arma::cx_mat full(dim, dim, arma::fill::zeros);
    for (arma::uword n = 0; n < n_ant; ++n)
    {
        const arma::cx_mat &b = block[block_of_antenna(n)];
        for (arma::uword b1 = 0; b1 < pilot_len; ++b1)
            for (arma::uword b2 = 0; b2 < pilot_len; ++b2)
                full(b1 * n_ant + n, b2 * n_ant + n) = b(b1, b2);
    }
    return full;
}

PhiBlocks assemble_phi(const LargeScaleMap &map, const std::vector<arma::cx_mat> &grams,
                       double bs_noise, arma::uword cell)
{
    const arma::uword cells = map.num_cells();
    const arma::uword ues = map.ues_per_cell();
    if (grams.size() != cells * ues)
        throw std::invalid_argument("dimension-mismatch: need one gram per (cell, UE) pair");
    const arma::uword b_len = grams.front().n_rows;
    for (const auto &g : grams)
        if (g.n_rows != b_len || g.n_cols != b_len)
            throw std::invalid_argument("dimension-mismatch: grams must share the pilot length");
    if (bs_noise < 0.0)
        throw std::invalid_argument("assemble_phi: bs_noise must be nonnegative");

    PhiBlocks phi;
    phi.cell = cell;
    phi.pilot_len = b_len;
    phi.num_blocks = map.num_blocks();
    phi.block_multiplicity = map.block_multiplicity();
    phi.block.resize(phi.num_blocks);
    phi.chol_lower.resize(phi.num_blocks);

    const arma::cx_mat noise =
        arma::cx_mat(bs_noise * arma::eye<arma::mat>(b_len, b_len),
                     arma::zeros<arma::mat>(b_len, b_len));

    for (arma::uword blk = 0; blk < phi.num_blocks; ++blk)
    {
        arma::cx_mat acc = noise;
        for (arma::uword l = 0; l < cells; ++l)
            for (arma::uword m = 0; m < ues; ++m)
            {
                const double gain = map.block_row(cell, l, m)[blk];
                if (gain != 0.0)
                    acc += gain * grams[l * ues + m];
            }
        // force exact Hermitian symmetry before factorizing
        acc = 0.5 * (acc + acc.t());
        phi.block[blk] = acc;

        arma::cx_mat lower;
        if (arma::chol(lower, acc, "lower"))
            phi.chol_lower[blk] = std::move(lower);
        // else: left empty; solve() reports singular-phi
    }
    return phi;
}

namespace
{

// One solve per block; antennas within a block reuse it.
std::vector<arma::cx_vec> solved_pilot_per_block(const PhiBlocks &phi, const PhaseDecay &decay,
                                                 const arma::cx_vec &pilot)
{
    if (pilot.n_elem != phi.pilot_len || decay.d.n_elem != phi.pilot_len)
        throw std::invalid_argument("dimension-mismatch: pilot/decay length vs covariance blocks");
    const arma::cx_vec weighted = decay.d % pilot;
    std::vector<arma::cx_vec> out(phi.num_blocks);
    for (arma::uword blk = 0; blk < phi.num_blocks; ++blk)
        out[blk] = phi.solve(blk, weighted);
    return out;
}

} // namespace

arma::cx_vec lmmse_estimate(const arma::cx_mat &pilot_obs, const PhiBlocks &phi,
                            const PhaseDecay &decay, const arma::vec &lambda_row,
                            const arma::cx_vec &pilot)
{
    const arma::uword n_ant = phi.num_antennas();
    if (pilot_obs.n_rows != phi.pilot_len || pilot_obs.n_cols != n_ant)
        throw std::invalid_argument("dimension-mismatch: pilot observation must be B x N");
    if (lambda_row.n_elem != n_ant)
        throw std::invalid_argument("dimension-mismatch: lambda_row length vs antennas");

    const auto solved = solved_pilot_per_block(phi, decay, pilot);
    arma::cx_vec est(n_ant);
    for (arma::uword n = 0; n < n_ant; ++n)
        est[n] = lambda_row[n] * arma::cdot(solved[phi.block_of_antenna(n)], pilot_obs.col(n));
    return est;
}

arma::vec error_covariance(const PhiBlocks &phi, const PhaseDecay &decay,
                           const arma::vec &lambda_row, const arma::cx_vec &pilot)
{
    return estimate_stats(phi, decay, lambda_row, pilot).c;
}

EstimateStats estimate_stats(const PhiBlocks &phi, const PhaseDecay &decay,
                             const arma::vec &lambda_row, const arma::cx_vec &pilot)
{
    const arma::uword n_ant = phi.num_antennas();
    if (lambda_row.n_elem != n_ant)
        throw std::invalid_argument("dimension-mismatch: lambda_row length vs antennas");

    const arma::cx_vec weighted = decay.d % pilot;
    const auto solved = solved_pilot_per_block(phi, decay, pilot);

    arma::vec quad(phi.num_blocks);
    for (arma::uword blk = 0; blk < phi.num_blocks; ++blk)
        quad[blk] = std::real(arma::cdot(weighted, solved[blk]));

    EstimateStats stats;
    stats.q.set_size(n_ant);
    stats.c.set_size(n_ant);
    for (arma::uword n = 0; n < n_ant; ++n)
    {
        const double lam = lambda_row[n];
        stats.q[n] = lam * lam * quad[phi.block_of_antenna(n)];
        stats.c[n] = lam - stats.q[n];
    }
    return stats;
}

void dump_estimate_stats_csv(std::ostream &os, const PhiBlocks &phi, const arma::vec &lambda_row,
                             const arma::cx_vec &pilot, double delta, double t_first,
                             double t_last)
{
    os << "t,antenna,q,c\n";
    for (double t = t_first; t <= t_last; t += 1.0)
    {
        const auto stats = estimate_stats(phi, phase_decay(t, phi.pilot_len, delta), lambda_row,
                                          pilot);
        for (arma::uword n = 0; n < stats.q.n_elem; ++n)
            os << t << ',' << n << ',' << stats.q[n] << ',' << stats.c[n] << '\n';
    }
}

} // namespace dmimo

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

#ifndef DMIMO_ESTIMATION_HPP
#define DMIMO_ESTIMATION_HPP

#include <armadillo>
#include <iosfwd>
#include <vector>

#include "dmimo/geometry.hpp"
#include "dmimo/pilots.hpp"

namespace dmimo
{

/// Phase-coherence weights between symbol time t and each pilot symbol:
/// d_b = exp(-delta |t - b| / 2) with pilots at times 1..B.
struct PhaseDecay
{
    arma::vec d;      // length B, entries in (0, 1]
    double t = 0.0;   // symbol time the weights refer to
    double delta = 0.0;
};

PhaseDecay phase_decay(double t, arma::uword pilot_len, double delta);

/// The pilot-observation covariance of one BS, stored as independent B x B
/// Hermitian blocks. Because the channel covariances are diagonal, the full
/// covariance over all antennas is block-diagonal after reordering, with one
/// block per distinct channel-gain class: one per subarray for factorized
/// maps, one per antenna otherwise. Linear solves go through a cached
/// Cholesky factor per block; the full matrix is never materialized.
struct PhiBlocks
{
    arma::uword cell = 0;
    arma::uword pilot_len = 0;
    arma::uword num_blocks = 0;
    arma::uword block_multiplicity = 1; // antennas sharing each block
    std::vector<arma::cx_mat> block;
    std::vector<arma::cx_mat> chol_lower; // empty entry = block not positive definite

    arma::uword num_antennas() const { return num_blocks * block_multiplicity; }
    arma::uword block_of_antenna(arma::uword n) const { return n / block_multiplicity; }

    /// Solves block * x = rhs; throws singular-phi if the block has no factor.
    arma::cx_vec solve(arma::uword blk, const arma::cx_vec &rhs) const;

    /// Literal covariance over all antennas of the cell, with the combined
    /// pilot observation stacked symbol-major: index (b, n) -> b * N + n.
    /// Test support; size (B N) x (B N).
    arma::cx_mat expand_full() const;
};

/// Builds the per-block pilot covariance of one cell: block = sum over all
/// (cell, UE) pairs of lambda * gram + bs_noise * I.
PhiBlocks assemble_phi(const LargeScaleMap &map, const std::vector<arma::cx_mat> &grams,
                       double bs_noise, arma::uword cell);

/// LMMSE estimate of the effective (phase-rotated) channel of one link at
/// symbol time t, per antenna:
///   est_n = lambda_n * (d .* pilot)^H * inv(block_n) * obs_n
/// where obs is the B x N pilot observation of the cell. Linear in obs.
arma::cx_vec lmmse_estimate(const arma::cx_mat &pilot_obs, const PhiBlocks &phi,
                            const PhaseDecay &decay, const arma::vec &lambda_row,
                            const arma::cx_vec &pilot);

/// Per-antenna estimation error variances:
///   c_n = lambda_n - lambda_n^2 * (d .* pilot)^H inv(block_n) (d .* pilot).
arma::vec error_covariance(const PhiBlocks &phi, const PhaseDecay &decay,
                           const arma::vec &lambda_row, const arma::cx_vec &pilot);

/// Second moments of the estimate (q) and the matching error variances (c),
/// per antenna; q + c = lambda entrywise.
struct EstimateStats
{
    arma::vec q;
    arma::vec c;
};

EstimateStats estimate_stats(const PhiBlocks &phi, const PhaseDecay &decay,
                             const arma::vec &lambda_row, const arma::cx_vec &pilot);

/// Diagnostic CSV dump of per-antenna q and c values over a range of symbol
/// times. Columns: t, antenna, q, c.
void dump_estimate_stats_csv(std::ostream &os, const PhiBlocks &phi, const arma::vec &lambda_row,
                             const arma::cx_vec &pilot, double delta, double t_first,
                             double t_last);

} // namespace dmimo

#endif

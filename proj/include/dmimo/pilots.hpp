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

#ifndef DMIMO_PILOTS_HPP
#define DMIMO_PILOTS_HPP

#include <armadillo>
#include <vector>

namespace dmimo
{

/// Uplink pilot sequences per (cell, UE). Sequences have constant energy per
/// symbol: |x(b)|^2 equals the UE's uplink power for every pilot symbol b.
struct PilotBook
{
    arma::uword pilot_len = 0; // B
    arma::uword num_cells = 0;
    arma::uword ues_per_cell = 0;
    arma::cx_mat sequences;       // B x (num_cells * ues_per_cell), column (l*K + k)
    arma::mat ul_power;           // num_cells x ues_per_cell, watts per symbol
    arma::umat column_assignment; // Fourier column used by each (cell, UE)

    arma::cx_vec sequence(arma::uword cell, arma::uword ue) const
    {
        return sequences.col(cell * ues_per_cell + ue);
    }
    double power(arma::uword cell, arma::uword ue) const { return ul_power(cell, ue); }
};

/// Pilot sequences as scaled columns of the B-point DFT matrix. Sequences
/// within a cell are mutually orthogonal when their assigned columns differ.
/// reuse maps each (cell, UE) to a column index; when empty, every cell uses
/// columns 0..K-1 (full reuse across cells).
PilotBook fourier_pilot_book(arma::uword pilot_len, arma::uword ues_per_cell,
                             arma::uword num_cells, const arma::mat &ul_power,
                             const arma::umat &reuse = {});

/// Second-moment matrix of one UE's effective pilot as seen through phase
/// noise and uplink distortion: diagonal entries p (1 + kappa_ul^2), off
/// diagonals x(b1) x*(b2) exp(-delta |b1 - b2| / 2).
struct PilotGram
{
    arma::cx_mat x; // B x B, Hermitian
    double kappa_ul = 0.0;
    double delta = 0.0;
    double power = 0.0;
};

PilotGram pilot_gram(const PilotBook &book, arma::uword cell, arma::uword ue, double delta,
                     double kappa_ul);

/// Grams for every (cell, UE) pair, indexed cell * ues_per_cell + ue.
std::vector<arma::cx_mat> build_gram_set(const PilotBook &book, double delta, double kappa_ul);

/// The gram with its distortion diagonal removed (equivalently, the gram at
/// kappa_ul = 0). This is the kernel that drives pilot-contaminated
/// interference; at delta = 0 it reduces to the rank-one outer product of the
/// pilot sequence.
arma::cx_mat contamination_kernel(const PilotBook &book, arma::uword cell, arma::uword ue,
                                  double delta);

struct GramDiagnostics
{
    double rank1_residual = 0.0;    // max |X - kappa^2 p I - x x^H|, exact zero at delta = 0
    double hermitian_residual = 0.0; // max |X - X^H|
};

GramDiagnostics gram_identities(const PilotGram &gram, const PilotBook &book, arma::uword cell,
                                arma::uword ue);

} // namespace dmimo

#endif

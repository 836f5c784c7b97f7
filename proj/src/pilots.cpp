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

#include "dmimo/pilots.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace dmimo
{

namespace
{
constexpr double two_pi = 6.283185307179586476925286766559;
}

PilotBook fourier_pilot_book(arma::uword pilot_len, arma::uword ues_per_cell,
                             arma::uword num_cells, const arma::mat &ul_power,
                             const arma::umat &reuse)
{
    if (pilot_len < 1 || ues_per_cell < 1 || num_cells < 1)
        throw std::invalid_argument("fourier_pilot_book: counts must be at least 1");
    if (ues_per_cell > pilot_len)
        throw std::invalid_argument(
            "too-many-ues: within-cell orthogonality needs ues_per_cell <= pilot_len");
    if (ul_power.n_rows != num_cells || ul_power.n_cols != ues_per_cell)
        throw std::invalid_argument("fourier_pilot_book: ul_power must be cells x ues");

    arma::umat columns;
    if (reuse.is_empty())
    {
        // full reuse: every cell uses the same K columns
        columns.set_size(num_cells, ues_per_cell);
        for (arma::uword l = 0; l < num_cells; ++l)
            for (arma::uword k = 0; k < ues_per_cell; ++k)
                columns(l, k) = k;
    }
    else
    {
        if (reuse.n_rows != num_cells || reuse.n_cols != ues_per_cell)
            throw std::invalid_argument("fourier_pilot_book: reuse must be cells x ues");
        if (reuse.max() >= pilot_len)
            throw std::invalid_argument("fourier_pilot_book: column index out of range");
        columns = reuse;
    }

    PilotBook book;
    book.pilot_len = pilot_len;
    book.num_cells = num_cells;
    book.ues_per_cell = ues_per_cell;
    book.column_assignment = columns;
    book.ul_power = ul_power;
    book.sequences.set_size(pilot_len, num_cells * ues_per_cell);

    for (arma::uword l = 0; l < num_cells; ++l)
        for (arma::uword k = 0; k < ues_per_cell; ++k)
        {
            const double amp = std::sqrt(ul_power(l, k));
            const double col = static_cast<double>(columns(l, k));
            for (arma::uword b = 0; b < pilot_len; ++b)
            {
                const double angle = -two_pi * static_cast<double>(b) * col / pilot_len;
                book.sequences(b, l * ues_per_cell + k) =
                    amp * std::complex<double>(std::cos(angle), std::sin(angle));
            }
        }
    return book;
}

PilotGram pilot_gram(const PilotBook &book, arma::uword cell, arma::uword ue, double delta,
                     double kappa_ul)
{
    if (delta < 0.0 || kappa_ul < 0.0)
        throw std::invalid_argument("pilot_gram: delta and kappa_ul must be nonnegative");

    const arma::cx_vec seq = book.sequence(cell, ue);
    const double p = book.power(cell, ue);
    const arma::uword b_len = book.pilot_len;

    PilotGram gram;
    gram.kappa_ul = kappa_ul;
    gram.delta = delta;
    gram.power = p;
    gram.x.set_size(b_len, b_len);

    // pilot symbols occupy contiguous times 1..B
    for (arma::uword b1 = 0; b1 < b_len; ++b1)
        for (arma::uword b2 = 0; b2 < b_len; ++b2)
        {
            if (b1 == b2)
                gram.x(b1, b2) = p * (1.0 + kappa_ul * kappa_ul);
            else
            {
                const double lag = std::abs(static_cast<double>(b1) - static_cast<double>(b2));
                gram.x(b1, b2) = seq[b1] * std::conj(seq[b2]) * std::exp(-0.5 * delta * lag);
            }
        }
    return gram;
}

std::vector<arma::cx_mat> build_gram_set(const PilotBook &book, double delta, double kappa_ul)
{
    std::vector<arma::cx_mat> set;
    set.reserve(book.num_cells * book.ues_per_cell);
    for (arma::uword l = 0; l < book.num_cells; ++l)
        for (arma::uword k = 0; k < book.ues_per_cell; ++k)
            set.push_back(pilot_gram(book, l, k, delta, kappa_ul).x);
    return set;
}

arma::cx_mat contamination_kernel(const PilotBook &book, arma::uword cell, arma::uword ue,
                                  double delta)
{
    return pilot_gram(book, cell, ue, delta, 0.0).x;
}

GramDiagnostics gram_identities(const PilotGram &gram, const PilotBook &book, arma::uword cell,
                                arma::uword ue)
{
    const arma::cx_vec seq = book.sequence(cell, ue);
    const arma::cx_mat rank1 = seq * seq.t();
    const arma::cx_mat ident =
        gram.kappa_ul * gram.kappa_ul * gram.power *
        arma::cx_mat(arma::eye<arma::mat>(book.pilot_len, book.pilot_len),
                     arma::zeros<arma::mat>(book.pilot_len, book.pilot_len));

    GramDiagnostics diag;
    diag.rank1_residual = arma::abs(gram.x - ident - rank1).max();
    diag.hermitian_residual = arma::abs(gram.x - gram.x.t()).max();
    return diag;
}

} // namespace dmimo

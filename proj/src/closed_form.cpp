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

#include "dmimo/closed_form.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "dmimo/csv.hpp"

namespace dmimo
{

FrameConfig::FrameConfig(arma::uword total_symbols, arma::uword pilots, arma::uword ul,
                         arma::uword dl)
    : total(total_symbols), pilot_len(pilots), ul_data(ul), dl_data(dl)
{
    if (total != pilot_len + ul_data + dl_data)
        throw std::invalid_argument("FrameConfig: total must equal ul_data + pilot_len + dl_data");
    if (pilot_len < 1)
        throw std::invalid_argument("FrameConfig: need at least one pilot symbol");
}

const SinrEntry &SinrReport::at(arma::uword cell, arma::uword ue, arma::uword t) const
{
    if (!frame.in_dl_window(t))
        throw std::invalid_argument("out-of-window: t is outside the downlink data window");
    const arma::uword ti = t - frame.dl_first();
    return entries.at((cell * ues_per_cell + ue) * frame.dl_data + ti);
}

void SinrReport::write_csv(std::ostream &os) const
{
    os << "cell,ue,t,signal,interference_total,self_term,noise,sinr\n";
    for (const auto &e : entries)
    {
        os << e.cell << ',' << e.ue << ',' << e.t << ',' << csv::num(e.signal) << ','
           << csv::num(arma::accu(e.interference)) << ',' << csv::num(e.self_term) << ','
           << csv::num(e.noise) << ',' << csv::num(e.sinr) << '\n';
    }
    os << "cell,ue,rate_bits_per_symbol,,,,,\n";
    for (arma::uword j = 0; j < num_cells; ++j)
        for (arma::uword k = 0; k < ues_per_cell; ++k)
            os << j << ',' << k << ',' << csv::num(rate_bits_per_symbol(j, k)) << ",,,,,\n";
}

double rate(const FrameConfig &frame, const arma::vec &sinr_per_symbol)
{
    if (sinr_per_symbol.n_elem != frame.dl_data)
        throw std::invalid_argument("rate: need one SINR per downlink data symbol");
    double sum = 0.0;
    for (double s : sinr_per_symbol)
        sum += std::log2(1.0 + s);
    return frame.total == 0 ? 0.0 : sum / static_cast<double>(frame.total);
}

double assemble_sinr(double signal, const arma::mat &normalized_interference,
                     const arma::mat &dl_power, arma::uword j, arma::uword k, double ue_noise)
{
    const double self = dl_power(j, k) * signal;
    double gross = 0.0;
    for (arma::uword l = 0; l < normalized_interference.n_rows; ++l)
        for (arma::uword m = 0; m < normalized_interference.n_cols; ++m)
            gross += dl_power(l, m) * normalized_interference(l, m);

    const double den = gross - self + ue_noise;
    if (self == 0.0)
        return 0.0;
    if (den <= 0.0)
    {
        // exact cancellation (no noise, no estimation leakage) means an
        // unbounded SINR; anything clearly below zero is an inconsistency
        if (den >= -1e-12 * (gross + ue_noise))
            return std::numeric_limits<double>::infinity();
        throw std::logic_error("nonpositive-denominator: interference bookkeeping is broken");
    }
    return self / den;
}

MrtEvaluator::MrtEvaluator(const LargeScaleMap &map, const PilotBook &book,
                           const HardwareProfile &profile, const FrameConfig &frame)
    : map_(map), book_(book), profile_(profile), frame_(frame)
{
    if (map.num_cells() != book.num_cells || map.ues_per_cell() != book.ues_per_cell)
        throw std::invalid_argument("MrtEvaluator: map and pilot book disagree on dimensions");
    if (book.pilot_len != frame.pilot_len)
        throw std::invalid_argument("MrtEvaluator: pilot book and frame disagree on pilot_len");

    gram_ = build_gram_set(book_, profile_.phase_var, profile_.kappa_ul);
    kernel_.reserve(gram_.size());
    for (arma::uword l = 0; l < book_.num_cells; ++l)
        for (arma::uword m = 0; m < book_.ues_per_cell; ++m)
            kernel_.push_back(contamination_kernel(book_, l, m, profile_.phase_var));

    phi_.reserve(map_.num_cells());
    for (arma::uword j = 0; j < map_.num_cells(); ++j)
        phi_.push_back(assemble_phi(map_, gram_, profile_.bs_noise, j));
}

void MrtEvaluator::check_window(arma::uword t) const
{
    if (!frame_.in_dl_window(t))
        throw std::invalid_argument("out-of-window: t is outside the downlink data window");
}

MrtEvaluator::SymbolCache MrtEvaluator::symbol_cache(arma::uword t) const
{
    const arma::uword cells = map_.num_cells();
    const arma::uword ues = map_.ues_per_cell();
    const arma::uword blocks = map_.num_blocks();
    const double mult = static_cast<double>(map_.block_multiplicity());
    const PhaseDecay decay = phase_decay(static_cast<double>(t), book_.pilot_len,
                                         profile_.phase_var);

    SymbolCache c;
    c.t = t;
    c.u.resize(cells * ues);
    c.a.resize(cells);
    c.qf.set_size(cells * ues, blocks);
    c.norm.set_size(cells, ues);

    for (arma::uword l = 0; l < cells; ++l)
    {
        c.a[l].set_size(book_.pilot_len, ues * blocks);
        for (arma::uword m = 0; m < ues; ++m)
        {
            const arma::uword lm = l * ues + m;
            c.u[lm] = decay.d % book_.sequence(l, m);
            const arma::vec lam = map_.block_row(l, l, m);
            double norm = 0.0;
            for (arma::uword blk = 0; blk < blocks; ++blk)
            {
                const arma::cx_vec solved = phi_[l].solve(blk, c.u[lm]);
                c.a[l].col(m * blocks + blk) = solved;
                const double qf = std::real(arma::cdot(c.u[lm], solved));
                c.qf(lm, blk) = qf;
                norm += lam[blk] * lam[blk] * qf;
            }
            c.norm(l, m) = mult * norm;
        }
    }
    return c;
}

double MrtEvaluator::signal_from_cache(const SymbolCache &c, arma::uword j, arma::uword k) const
{
    return c.norm(j, k);
}

InterferenceTerms MrtEvaluator::interference_from_cache(const SymbolCache &c, arma::uword l,
                                                        arma::uword m, arma::uword j,
                                                        arma::uword k) const
{
    const arma::uword ues = map_.ues_per_cell();
    const arma::uword blocks = map_.num_blocks();
    const double mult = static_cast<double>(map_.block_multiplicity());
    const arma::uword lm = l * ues + m;
    const arma::uword jk = j * ues + k;

    const arma::vec lam_serve = map_.block_row(l, l, m);
    const arma::vec lam_victim = map_.block_row(l, j, k);
    const double k_dl2 = profile_.kappa_dl * profile_.kappa_dl;
    const double k_ul2 = profile_.kappa_ul * profile_.kappa_ul;
    const double p_victim = book_.power(j, k);

    InterferenceTerms terms;

    // precoder-moment part, plus the DL distortion share of the served link
    double direct = 0.0;
    for (arma::uword blk = 0; blk < blocks; ++blk)
        direct += lam_victim[blk] * lam_serve[blk] * lam_serve[blk] * c.qf(lm, blk);
    terms.direct = (1.0 + k_dl2) * mult * direct;

    // gain-weighted sum of solves; shared by all antennas of a block
    arma::cx_vec v(book_.pilot_len, arma::fill::zeros);
    for (arma::uword blk = 0; blk < blocks; ++blk)
        v += (mult * lam_serve[blk] * lam_victim[blk]) * c.a[l].col(m * blocks + blk);

    const arma::cx_vec &u_victim = c.u[jk];
    if (profile_.lo == LoArchitecture::common)
    {
        terms.contamination = std::real(arma::cdot(v, kernel_[jk] * v));
    }
    else
    {
        const std::complex<double> trace = arma::cdot(v, u_victim);
        terms.contamination = std::norm(trace);
    }

    // per-antenna correction
    arma::cx_mat m3;
    if (profile_.lo == LoArchitecture::common)
    {
        m3 = k_dl2 * gram_[jk];
        m3.diag() += arma::cx_double(k_ul2 * p_victim, 0.0);
    }
    else
    {
        m3 = (1.0 + k_dl2) * gram_[jk] - u_victim * u_victim.t();
    }
    double corr = 0.0;
    for (arma::uword blk = 0; blk < blocks; ++blk)
    {
        const arma::cx_vec a_col = c.a[l].col(m * blocks + blk);
        const double w = lam_serve[blk] * lam_victim[blk];
        corr += w * w * std::real(arma::cdot(a_col, m3 * a_col));
    }
    terms.correction = mult * corr;
    return terms;
}

double MrtEvaluator::mrt_signal(arma::uword j, arma::uword k, arma::uword t) const
{
    check_window(t);
    const PhaseDecay decay = phase_decay(static_cast<double>(t), book_.pilot_len,
                                         profile_.phase_var);
    const auto stats = estimate_stats(phi_[j], decay, map_.lambda_row(j, j, k),
                                      book_.sequence(j, k));
    return arma::accu(stats.q);
}

InterferenceTerms MrtEvaluator::mrt_interference(arma::uword l, arma::uword m, arma::uword j,
                                                 arma::uword k, arma::uword t) const
{
    check_window(t);
    // small dedicated cache: solves of cell l only would suffice, but the
    // shared path keeps one code route for all callers
    const SymbolCache c = symbol_cache(t);
    return interference_from_cache(c, l, m, j, k);
}

double MrtEvaluator::contamination_literal(arma::uword l, arma::uword m, arma::uword j,
                                           arma::uword k, arma::uword t) const
{
    check_window(t);
    const SymbolCache c = symbol_cache(t);
    const arma::uword ues = map_.ues_per_cell();
    const arma::uword blocks = map_.num_blocks();
    const arma::uword n_ant = map_.num_antennas();
    const arma::uword jk = j * ues + k;

    const arma::vec lam_serve = map_.lambda_row(l, l, m);
    const arma::vec lam_victim = map_.lambda_row(l, j, k);

    arma::cx_mat kernel_mixed;
    arma::cx_vec u_victim = c.u[jk];
    const bool clo = profile_.lo == LoArchitecture::common;

    std::complex<double> total = 0.0;
    for (arma::uword n2 = 0; n2 < n_ant; ++n2)
    {
        const arma::cx_vec a2 = c.a[l].col(m * blocks + map_.block_of_antenna(n2));
        const arma::cx_vec w = clo ? arma::cx_vec(kernel_[jk] * a2)
                                   : arma::cx_vec(u_victim * arma::cdot(u_victim, a2));
        const double c2 = lam_serve[n2] * lam_victim[n2];
        std::complex<double> inner = 0.0;
        for (arma::uword n1 = 0; n1 < n_ant; ++n1)
        {
            const arma::cx_vec a1 = c.a[l].col(m * blocks + map_.block_of_antenna(n1));
            inner += lam_serve[n1] * lam_victim[n1] * arma::cdot(a1, w);
        }
        total += c2 * inner;
    }
    return std::real(total);
}

SinrEntry MrtEvaluator::entry_from_cache(const SymbolCache &c, arma::uword j, arma::uword k,
                                         const arma::mat &dl_power) const
{
    const arma::uword cells = map_.num_cells();
    const arma::uword ues = map_.ues_per_cell();

    SinrEntry e;
    e.cell = j;
    e.ue = k;
    e.t = c.t;
    e.signal = signal_from_cache(c, j, k);
    e.noise = profile_.ue_noise;
    e.self_term = dl_power(j, k) * e.signal;
    e.interference.set_size(cells, ues);

    arma::mat normalized(cells, ues, arma::fill::zeros);
    for (arma::uword l = 0; l < cells; ++l)
        for (arma::uword m = 0; m < ues; ++m)
        {
            const double norm = c.norm(l, m);
            if (norm <= 0.0)
            {
                // zero-gain serving link transmits nothing
                e.interference(l, m) = 0.0;
                continue;
            }
            const InterferenceTerms terms = interference_from_cache(c, l, m, j, k);
            normalized(l, m) = terms.total() / norm;
            e.interference(l, m) = dl_power(l, m) * normalized(l, m);
        }

    e.sinr = assemble_sinr(e.signal, normalized, dl_power, j, k, profile_.ue_noise);
    return e;
}

double MrtEvaluator::sinr(arma::uword j, arma::uword k, arma::uword t,
                          const arma::mat &dl_power) const
{
    check_window(t);
    const SymbolCache c = symbol_cache(t);
    return entry_from_cache(c, j, k, dl_power).sinr;
}

SinrReport MrtEvaluator::report(const arma::mat &dl_power) const
{
    const arma::uword cells = map_.num_cells();
    const arma::uword ues = map_.ues_per_cell();

    SinrReport rep;
    rep.num_cells = cells;
    rep.ues_per_cell = ues;
    rep.frame = frame_;
    rep.entries.resize(cells * ues * frame_.dl_data);
    rep.rate_bits_per_symbol.set_size(cells, ues);

    arma::cube sinr(cells, ues, frame_.dl_data);
    for (arma::uword t = frame_.dl_first(); t <= frame_.dl_last(); ++t)
    {
        const SymbolCache c = symbol_cache(t);
        const arma::uword ti = t - frame_.dl_first();
        for (arma::uword j = 0; j < cells; ++j)
            for (arma::uword k = 0; k < ues; ++k)
            {
                SinrEntry e = entry_from_cache(c, j, k, dl_power);
                sinr(j, k, ti) = e.sinr;
                rep.entries[(j * ues + k) * frame_.dl_data + ti] = std::move(e);
            }
    }
    for (arma::uword j = 0; j < cells; ++j)
        for (arma::uword k = 0; k < ues; ++k)
        {
            const arma::vec per_t = sinr.tube(j, k);
            rep.rate_bits_per_symbol(j, k) = rate(frame_, per_t);
        }
    return rep;
}

arma::mat MrtEvaluator::rates(const arma::mat &dl_power) const
{
    const arma::uword cells = map_.num_cells();
    const arma::uword ues = map_.ues_per_cell();

    arma::mat log_sum(cells, ues, arma::fill::zeros);
    for (arma::uword t = frame_.dl_first(); t <= frame_.dl_last(); ++t)
    {
        const SymbolCache c = symbol_cache(t);
        for (arma::uword j = 0; j < cells; ++j)
            for (arma::uword k = 0; k < ues; ++k)
                log_sum(j, k) += std::log2(1.0 + entry_from_cache(c, j, k, dl_power).sinr);
    }
    return log_sum / static_cast<double>(frame_.total);
}

} // namespace dmimo

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

#ifndef DMIMO_CLOSED_FORM_HPP
#define DMIMO_CLOSED_FORM_HPP

#include <armadillo>
#include <iosfwd>
#include <vector>

#include "dmimo/common.hpp"
#include "dmimo/estimation.hpp"
#include "dmimo/geometry.hpp"
#include "dmimo/pilots.hpp"

namespace dmimo
{

/// Transceiver quality constants. Distortion coefficients scale the additive
/// distortion noise with the per-antenna signal power; phase_var is the
/// variance of the Wiener phase-noise increments per symbol; the noise
/// variances are in watts and include noise amplification.
struct HardwareProfile
{
    double kappa_ul = 0.0;
    double kappa_dl = 0.0;
    double phase_var = 0.0; // rad^2 per symbol
    double bs_noise = 0.0;  // watts
    double ue_noise = 0.0;  // watts
    LoArchitecture lo = LoArchitecture::common;
};

/// Coherence-block schedule: total = ul_data + pilot_len + dl_data symbols.
/// Pilots occupy times 1..pilot_len, downlink data the window
/// (pilot_len, pilot_len + dl_data].
struct FrameConfig
{
    arma::uword total = 0;
    arma::uword pilot_len = 0;
    arma::uword ul_data = 0;
    arma::uword dl_data = 0;

    FrameConfig() = default;
    FrameConfig(arma::uword total_symbols, arma::uword pilots, arma::uword ul, arma::uword dl);

    arma::uword dl_first() const { return pilot_len + 1; }
    arma::uword dl_last() const { return pilot_len + dl_data; }
    bool in_dl_window(arma::uword t) const { return t >= dl_first() && t <= dl_last(); }
};

/// The three parts of the interference second moment for one
/// (serving cell l, served UE m, victim cell j, victim UE k, time t):
/// a term proportional to the precoder second moments, the
/// pilot-contamination term (the only one scaling with the antenna count
/// squared), and a per-antenna correction. The split depends on the LO
/// architecture; the parts are exposed separately for testability.
struct InterferenceTerms
{
    double direct = 0.0;
    double contamination = 0.0;
    double correction = 0.0;
    double total() const { return direct + contamination + correction; }
};

struct SinrEntry
{
    arma::uword cell = 0, ue = 0, t = 0;
    double signal = 0.0;      // normalized received signal coefficient
    arma::mat interference;   // cells x ues: power-weighted normalized interference
    double self_term = 0.0;   // the subtracted own-signal part
    double noise = 0.0;       // UE receiver noise, watts
    double sinr = 0.0;
};

struct SinrReport
{
    arma::uword num_cells = 0;
    arma::uword ues_per_cell = 0;
    FrameConfig frame;
    std::vector<SinrEntry> entries; // index ((j * K + k) * dl_data + (t - dl_first))
    arma::mat rate_bits_per_symbol; // cells x ues

    const SinrEntry &at(arma::uword cell, arma::uword ue, arma::uword t) const;
    void write_csv(std::ostream &os) const;
};

/// Achievable rate from the per-symbol SINRs of the downlink window:
/// mean of log2(1 + sinr) over the window, weighted by dl_data / total.
double rate(const FrameConfig &frame, const arma::vec &sinr_per_symbol);

/// Assembles the SINR from precomputed normalized parts. interference(l, m)
/// must hold the (l, m) interference numerator already divided by the serving
/// precoder's second moment. Throws nonpositive-denominator if the inputs are
/// inconsistent (the own-entry interference can never be below the signal).
double assemble_sinr(double signal, const arma::mat &normalized_interference,
                     const arma::mat &dl_power, arma::uword j, arma::uword k, double ue_noise);

/// Closed-form evaluator for maximum ratio transmission. Precomputes the
/// per-cell pilot covariance blocks once; all per-symbol quantities reduce to
/// B-dimensional quadratic forms against cached Cholesky solves, with one
/// solve per distinct channel-gain class (subarray) and time.
class MrtEvaluator
{
  public:
    MrtEvaluator(const LargeScaleMap &map, const PilotBook &book, const HardwareProfile &profile,
                 const FrameConfig &frame);

    const HardwareProfile &profile() const { return profile_; }
    const FrameConfig &frame() const { return frame_; }
    const LargeScaleMap &map() const { return map_; }

    /// Second moment of the unnormalized precoder, which for MRT equals the
    /// mean received signal coefficient of the served link.
    double mrt_signal(arma::uword j, arma::uword k, arma::uword t) const;

    /// Unnormalized interference numerator from BS l serving UE m onto the
    /// UE k of cell j at time t (includes the DL distortion moment).
    InterferenceTerms mrt_interference(arma::uword l, arma::uword m, arma::uword j, arma::uword k,
                                       arma::uword t) const;

    /// Contamination part evaluated by the literal double sum over antenna
    /// pairs. Used to guard the blockwise accumulation; O(N^2 B) per call.
    double contamination_literal(arma::uword l, arma::uword m, arma::uword j, arma::uword k,
                                 arma::uword t) const;

    double sinr(arma::uword j, arma::uword k, arma::uword t, const arma::mat &dl_power) const;

    /// Full per-symbol report with interference matrices and per-UE rates.
    SinrReport report(const arma::mat &dl_power) const;

    /// Per-UE rates only; does not keep per-entry matrices.
    arma::mat rates(const arma::mat &dl_power) const;

  private:
    struct SymbolCache
    {
        arma::uword t = 0;
        std::vector<arma::cx_vec> u; // weighted pilot per (l * K + m)
        std::vector<arma::cx_mat> a; // per cell: B x (K * blocks), solves per (m, block)
        arma::mat qf;                // (l * K + m) x blocks quadratic forms
        arma::mat norm;              // cells x ues precoder second moments
    };

    SymbolCache symbol_cache(arma::uword t) const;
    double signal_from_cache(const SymbolCache &c, arma::uword j, arma::uword k) const;
    InterferenceTerms interference_from_cache(const SymbolCache &c, arma::uword l, arma::uword m,
                                              arma::uword j, arma::uword k) const;
    SinrEntry entry_from_cache(const SymbolCache &c, arma::uword j, arma::uword k,
                               const arma::mat &dl_power) const;
    void check_window(arma::uword t) const;

    LargeScaleMap map_;
    PilotBook book_;
    HardwareProfile profile_;
    FrameConfig frame_;
    std::vector<arma::cx_mat> gram_;   // per (l * K + m)
    std::vector<arma::cx_mat> kernel_; // contamination kernels per (l * K + m)
    std::vector<PhiBlocks> phi_;       // per cell
};

} // namespace dmimo

#endif

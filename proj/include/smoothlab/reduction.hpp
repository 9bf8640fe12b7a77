#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "smoothlab/code.hpp"
#include "smoothlab/lpn.hpp"
#include "smoothlab/pmf.hpp"

namespace smoothlab {

/// A decoding instance y = G^T m + e with |e| = w. The planted message and
/// error stay available to the harness for exact accounting and scoring;
/// the reduction itself never reads them.
struct WdpInstance {
    LinearCode code;
    GF2Vector y;
    int w = 0;
    std::optional<GF2Vector> planted_m;
    std::optional<GF2Vector> planted_e;
};

WdpInstance gen_wdp(const LinearCode& c, int w, uint64_t seed);

struct ReduceOutcome {
    GF2Vector m_hat;
    bool success = false;  // |y + G^T m_hat| == w: any valid solution counts
};

/// One run of the reduction: draw m' uniformly, sample Z_1..Z_N from P,
/// feed (G Z_i, Z_i^T (y + G^T m')) to the ML solver, undo the m' shift.
ReduceOutcome reduce_once(const WdpInstance& inst, const PmfSampler& sampler, size_t N,
                          uint64_t seed);
ReduceOutcome reduce_once(const WdpInstance& inst, const Pmf& p, size_t N, uint64_t seed);

/// Threshold for the bias condition of a meaningful reduction:
/// bias >= coeff * k^{-l}. The polynomial is the caller's choice.
struct MeaningfulBiasThreshold {
    int l = 1;
    double coeff = 1.0;
};

struct ReductionReport {
    int n = 0, k = 0, w = 0;
    size_t N = 0, trials = 0;
    double gamma = 0;
    double delta = 0;        // 1/2 - bias(e^T Z) for the planted e
    double eps_exact = 0;    // tv of the joint sample law from U_k x Ber(delta)
    double tv_syndrome = 0;  // tv(P_{G Z}, U_k); never exceeds eps_exact
    double bias = 0;
    double alpha_hat = 0;  // ML success rate on genuine LPN at (k, delta, N)
    double alpha_ci = 0;
    double success_rate = 0;  // reduction success rate over the trials
    double success_ci = 0;
    double sigma = 0;      // combined Monte-Carlo sigma for the guarantee check
    double guarantee = 0;  // alpha_hat - N * eps_exact
    bool no_guarantee = false;   // N eps >= alpha, or delta at the pure-noise boundary
    bool guarantee_ok = false;   // success_rate >= guarantee - 3 sigma
    bool meaningful_syndrome = false;  // tv(P_{G Z}, U_k) < alpha_hat / N
    bool meaningful_bias = false;      // bias >= coeff * k^{-l}
    uint64_t seed = 0;

    /// The 13 report fields in schema order (the CSV additionally carries a
    /// leading timestamp): n,k,w,N,gamma,delta,eps_exact,bias,alpha_hat,
    /// guarantee,success_rate,meaningful_syndrome,meaningful_bias.
    std::string csv_row() const;
};

/// Full experiment against one planted instance: builds the achievability
/// mixture at gamma, computes the exact per-sample TV to the product target,
/// estimates alpha on genuine LPN at the induced delta, then measures the
/// reduction's success rate over independent trials.
ReductionReport run_experiment(const LinearCode& c, int w, double gamma, size_t N, size_t trials,
                               uint64_t seed, MeaningfulBiasThreshold thr = {});

}  // namespace smoothlab

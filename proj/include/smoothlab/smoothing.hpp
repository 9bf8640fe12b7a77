#pragma once

#include <optional>
#include <string>

#include "smoothlab/code.hpp"
#include "smoothlab/gf2.hpp"
#include "smoothlab/krawtchouk.hpp"
#include "smoothlab/pmf.hpp"

namespace smoothlab {

// Slack applied to exact identities and proven inequalities. A violation
// beyond this under valid hypotheses is a build-stopping bug, not noise.
inline constexpr double kNumericTol = 1e-12;

/// The three equivalent smoothing distances for a code/noise pair. The
/// codeword and syndrome forms are equal as an identity, not a bound;
/// eq_residual records how far numerics drifted.
struct SmoothingReport {
    int n = 0, k = 0;
    double tv_codeword = 0;  // d(P_{X_C + Z}, U_n)
    double tv_syndrome = 0;  // d(P_{H Z}, U_{n-k})
    double tv_message = 0;   // d(P_{G Z}, U_k)
    double eq_residual() const { return std::abs(tv_codeword - tv_syndrome); }
};

SmoothingReport smooths_check(const LinearCode& c, const Pmf& p);

/// (1 - gamma) uniform + gamma * (uniform on the weight-1 sphere).
Pmf achievability_dist(int n, double gamma);

/// Checks the mixture distribution's two guarantees against a code and an
/// error vector: exact bias value and the joint-TV bound. Hypothesis
/// violations are reported, never silently passed.
struct AchievabilityCheck {
    bool hypotheses_ok = true;
    std::string hypothesis_violation;
    double bias = 0;
    double bias_predicted = 0;  // (gamma/2)(1 - 2|e|/n)
    double tv_joint = 0;        // d((GZ, e^T Z), U_k x Ber(delta)), delta = 1/2 - bias
    double tv_bound = 0;        // gamma (3/2 - |e|/n)
    bool bias_ok = false;
    bool tv_ok = false;
    bool ok = false;
};

AchievabilityCheck verify_achievability(const LinearCode& c, const GF2Vector& e, double gamma);

/// Tail-mass bound for any rho that smooths a code to within eps: both the
/// |x| <= t and |x| >= n - t tails are at most |C0| V_n(t) / 2^n + eps,
/// t = floor((d-1)/2).
struct FlatnessCheck {
    bool precondition_ok = false;  // tv(P_C0 * rho, U_n) <= eps actually holds
    double actual_tv = 0;
    double eps = 0;
    int d = 0, t = 0;
    double low_tail = 0, high_tail = 0, bound = 0;
    bool ok = false;  // both tails within the bound (separate from precondition)
};

FlatnessCheck verify_flatness(const LinearCode& c0, const Pmf& rho, double eps);

/// One verified inequality instance with its term-by-term right side.
struct BoundCertificate {
    int n = 0, k = 0, w = 0;
    int d_dual = 0, t_dual = 0;
    double eps = 0;
    double kraw_C = 1;  // the C constant in use
    double lhs = 0;
    double term_ball = 0, term_kraw = 0, term_eps = 0;
    bool hypotheses_ok = true;
    std::string hypothesis_violation;
    std::optional<GF2Vector> witness_e;

    double rhs() const { return term_ball + term_kraw + term_eps; }
    bool holds() const { return lhs <= rhs() + kNumericTol; }
    /// n,k,w,d_dual,t_dual,eps,C,lhs,rhs,term1,term2,term3,ok  (ok is 1, 0
    /// or "hyp_fail").
    std::string csv_row() const;
};

/// Average of the dual-sphere Fourier sum: for rho with
/// tv(P_{C_perp} * rho, U_n) <= eps, dual distance d_perp < n/2 and
/// w <= c n,
///   (1/C(n,w)) sum_{|x|=w} 2^n rho^(x)
///     <= |C_perp| V_n(t_perp) / 2^{n-1} + C n (1-2w/n)^{t_perp} + 2 eps.
BoundCertificate verify_dual_bound(const LinearCode& c, const Pmf& rho, int w, double eps,
                                   const KrawtchoukBoundParams& params);

/// Worst-case bias bound: if tv(P_{GZ}, U_k) <= eps and w <= c n, the
/// weight-w vector e minimizing |2^n P^(e)| satisfies
///   |bias(e^T Z)| <= sqrt(|C_perp| V_n(t_perp) / 2^{n+1})
///                  + (sqrt(C n)/2)(1-2w/n)^{t_perp/2} + sqrt(eps/2).
/// Ties in the argmin break toward the smallest integer encoding.
BoundCertificate theorem_bound(const LinearCode& c, const Pmf& p, int w, double eps,
                               const KrawtchoukBoundParams& params);

/// (1/C(n,w)) sum_{|x|=w} |2^{n-1} P^(x)|; at least the witness bias.
double average_bias(const Pmf& p, int w);

}  // namespace smoothlab

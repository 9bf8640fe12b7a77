#include "smoothlab/smoothing.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "smoothlab/util.hpp"

namespace smoothlab {

namespace {

double exact_binom_d(int n, int k) {
    // n <= kMaxPmfDim keeps this below 2^53, so the conversion is exact.
    BinomialTable b(n);
    return b(n, k).convert_to<double>();
}

// d_perp and t_perp for a code, enumerated exactly.
std::pair<int, int> dual_distance_pair(const LinearCode& c) {
    if (auto cached = c.cached_dual_min_dist()) {
        return {*cached, (*cached - 1) / 2};
    }
    int d = min_distance(dual_code(c));
    return {d, (d - 1) / 2};
}

}  // namespace

SmoothingReport smooths_check(const LinearCode& c, const Pmf& p) {
    if (p.n() != c.n()) throw std::invalid_argument("smooths_check: dimension mismatch");
    SmoothingReport r;
    r.n = c.n();
    r.k = c.k();
    r.tv_codeword = tv_distance(convolve(Pmf::code_uniform(c), p), Pmf::uniform(c.n()));
    r.tv_syndrome = tv_distance(pushforward(c.parity(), p), Pmf::uniform(c.n() - c.k()));
    r.tv_message = tv_distance(pushforward(c.gen(), p), Pmf::uniform(c.k()));
    return r;
}

Pmf achievability_dist(int n, double gamma) {
    if (gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("achievability_dist: gamma outside [0, 1]");
    if (n < 1) throw std::invalid_argument("achievability_dist: n must be >= 1");
    size_t size = size_t{1} << n;
    std::vector<double> mass(size, (1.0 - gamma) * std::ldexp(1.0, -n));
    for (int j = 0; j < n; ++j) mass[size_t{1} << j] += gamma / n;
    return Pmf::from_mass(std::move(mass), 1e-9);
}

AchievabilityCheck verify_achievability(const LinearCode& c, const GF2Vector& e, double gamma) {
    if (e.n() != c.n()) throw std::invalid_argument("verify_achievability: dimension mismatch");
    AchievabilityCheck out;
    int n = c.n();
    int ew = e.weight();

    // Hypotheses: |C| < 2^{n-1} / V_n(2), e != 0, |e| < n/2 (exact checks).
    if ((BigInt(1) << c.k()) * ball_volume(n, 2) >= (BigInt(1) << (n - 1))) {
        out.hypotheses_ok = false;
        out.hypothesis_violation = "|C| >= 2^{n-1} / V_n(2)";
    }
    if (e.is_zero()) {
        out.hypotheses_ok = false;
        out.hypothesis_violation += std::string(out.hypothesis_violation.empty() ? "" : "; ") +
                                    "e is the zero vector";
    }
    if (2 * ew >= n) {
        out.hypotheses_ok = false;
        out.hypothesis_violation += std::string(out.hypothesis_violation.empty() ? "" : "; ") +
                                    "|e| >= n/2";
    }
    // The stacked map [G; e^T] must be surjective onto F_2^{k+1}: when e is a
    // codeword, e^T Z is a function of G Z and the joint law stays at tv >= 1/2
    // from any product. The proof treats the stacked code as (k+1)-dimensional.
    if (c.gen().stacked(e).rank() != c.k() + 1) {
        out.hypotheses_ok = false;
        out.hypothesis_violation += std::string(out.hypothesis_violation.empty() ? "" : "; ") +
                                    "e lies in the row space of G";
    }

    Pmf pz = achievability_dist(n, gamma);
    out.bias = bias_of(e, pz);
    out.bias_predicted = 0.5 * gamma * (1.0 - 2.0 * ew / n);
    double delta = 0.5 - out.bias;
    Pmf joint = joint_pushforward(c.gen(), e, pz);
    Pmf ref = product_with_bernoulli(Pmf::uniform(c.k()), delta);
    out.tv_joint = tv_distance(joint, ref);
    out.tv_bound = gamma * (1.5 - double(ew) / n);
    out.bias_ok = std::abs(out.bias - out.bias_predicted) <= kNumericTol;
    out.tv_ok = out.tv_joint <= out.tv_bound + kNumericTol;
    out.ok = out.bias_ok && out.tv_ok;
    return out;
}

FlatnessCheck verify_flatness(const LinearCode& c0, const Pmf& rho, double eps) {
    if (rho.n() != c0.n()) throw std::invalid_argument("verify_flatness: dimension mismatch");
    FlatnessCheck out;
    out.eps = eps;
    out.d = min_distance(c0);
    out.t = (out.d - 1) / 2;
    int n = c0.n();

    out.actual_tv = tv_distance(convolve(Pmf::code_uniform(c0), rho), Pmf::uniform(n));
    out.precondition_ok = out.actual_tv <= eps + kNumericTol;

    NeumaierSum low, high;
    for (uint64_t x = 0; x < rho.size(); ++x) {
        int w = std::popcount(x);
        if (w <= out.t) low.add(rho[x]);
        if (w >= n - out.t) high.add(rho[x]);
    }
    out.low_tail = low.value();
    out.high_tail = high.value();
    out.bound = std::ldexp(ball_volume_d(n, out.t), c0.k() - n) + eps;
    out.ok = out.low_tail <= out.bound + kNumericTol && out.high_tail <= out.bound + kNumericTol;
    return out;
}

std::string BoundCertificate::csv_row() const {
    char buf[512];
    std::string ok = hypotheses_ok ? (holds() ? "1" : "0") : "hyp_fail";
    std::snprintf(buf, sizeof buf,
                  "%d,%d,%d,%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s", n, k, w, d_dual,
                  t_dual, eps, kraw_C, lhs, rhs(), term_ball, term_kraw, term_eps, ok.c_str());
    return buf;
}

BoundCertificate verify_dual_bound(const LinearCode& c, const Pmf& rho, int w, double eps,
                                   const KrawtchoukBoundParams& params) {
    if (rho.n() != c.n()) throw std::invalid_argument("verify_dual_bound: dimension mismatch");
    if (w < 0 || w > c.n()) throw std::invalid_argument("verify_dual_bound: w outside [0, n]");
    BoundCertificate cert;
    cert.n = c.n();
    cert.k = c.k();
    cert.w = w;
    cert.eps = eps;
    cert.kraw_C = params.C;

    auto [d_dual, t_dual] = dual_distance_pair(c);
    cert.d_dual = d_dual;
    cert.t_dual = t_dual;

    int n = c.n();
    if (2 * d_dual >= n) {
        cert.hypotheses_ok = false;
        cert.hypothesis_violation = "dual distance >= n/2";
    }
    if (double(w) > params.c * n) {
        cert.hypotheses_ok = false;
        cert.hypothesis_violation += std::string(cert.hypothesis_violation.empty() ? "" : "; ") +
                                     "w > c n";
    }
    LinearCode cd = dual_code(c);
    double smooth_tv = tv_distance(convolve(Pmf::code_uniform(cd), rho), Pmf::uniform(n));
    if (smooth_tv > eps + kNumericTol) {
        cert.hypotheses_ok = false;
        cert.hypothesis_violation += std::string(cert.hypothesis_violation.empty() ? "" : "; ") +
                                     "tv(P_dual * rho, U_n) > eps";
    }

    // lhs = (1/C(n,w)) sum_{|x|=w} 2^n rho^(x); the butterfly gives 2^n rho^.
    std::vector<double> bf(rho.mass().begin(), rho.mass().end());
    fwht_butterfly(std::span<double>(bf));
    NeumaierSum sphere_sum;
    for (uint64_t x = 0; x < bf.size(); ++x)
        if (std::popcount(x) == w) sphere_sum.add(bf[x]);
    cert.lhs = sphere_sum.value() / exact_binom_d(n, w);

    cert.term_ball = std::ldexp(ball_volume_d(n, t_dual), 1 - c.k());
    cert.term_kraw = params.C * n * std::pow(1.0 - 2.0 * w / n, t_dual);
    cert.term_eps = 2.0 * eps;
    return cert;
}

BoundCertificate theorem_bound(const LinearCode& c, const Pmf& p, int w, double eps,
                               const KrawtchoukBoundParams& params) {
    if (p.n() != c.n()) throw std::invalid_argument("theorem_bound: dimension mismatch");
    if (w < 0 || w > c.n()) throw std::invalid_argument("theorem_bound: w outside [0, n]");
    BoundCertificate cert;
    cert.n = c.n();
    cert.k = c.k();
    cert.w = w;
    cert.eps = eps;
    cert.kraw_C = params.C;

    auto [d_dual, t_dual] = dual_distance_pair(c);
    cert.d_dual = d_dual;
    cert.t_dual = t_dual;

    int n = c.n();
    if (2 * d_dual >= n) {
        cert.hypotheses_ok = false;
        cert.hypothesis_violation = "dual distance >= n/2";
    }
    if (double(w) > params.c * n) {
        cert.hypotheses_ok = false;
        cert.hypothesis_violation += std::string(cert.hypothesis_violation.empty() ? "" : "; ") +
                                     "w > c n";
    }
    double message_tv = tv_distance(pushforward(c.gen(), p), Pmf::uniform(c.k()));
    if (message_tv > eps + kNumericTol) {
        cert.hypotheses_ok = false;
        cert.hypothesis_violation += std::string(cert.hypothesis_violation.empty() ? "" : "; ") +
                                     "tv(P_GZ, U_k) > eps";
    }

    // Witness: weight-w vector minimizing |2^n P^(x)|, smallest encoding on
    // ties (strict < keeps the first minimizer in index order).
    std::vector<double> bf(p.mass().begin(), p.mass().end());
    fwht_butterfly(std::span<double>(bf));
    uint64_t witness = 0;
    double best = std::numeric_limits<double>::infinity();
    for (uint64_t x = 0; x < bf.size(); ++x) {
        if (std::popcount(x) != w) continue;
        double v = std::abs(bf[x]);
        if (v < best) {
            best = v;
            witness = x;
        }
    }
    if (std::isinf(best)) throw std::logic_error("theorem_bound: empty sphere");
    cert.witness_e = GF2Vector::from_index(n, witness);
    cert.lhs = 0.5 * best;  // |2^{n-1} P^(e)|

    cert.term_ball = std::sqrt(std::ldexp(ball_volume_d(n, t_dual), -(c.k() + 1)));
    cert.term_kraw = 0.5 * std::sqrt(params.C * n) * std::pow(1.0 - 2.0 * w / n, t_dual / 2.0);
    cert.term_eps = std::sqrt(eps / 2.0);
    return cert;
}

double average_bias(const Pmf& p, int w) {
    if (w < 1 || w > p.n()) throw std::invalid_argument("average_bias: w outside [1, n]");
    std::vector<double> bf(p.mass().begin(), p.mass().end());
    fwht_butterfly(std::span<double>(bf));
    NeumaierSum s;
    for (uint64_t x = 0; x < bf.size(); ++x)
        if (std::popcount(x) == w) s.add(std::abs(bf[x]));
    return 0.5 * s.value() / exact_binom_d(p.n(), w);
}

}  // namespace smoothlab

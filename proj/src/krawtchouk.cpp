#include "smoothlab/krawtchouk.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace smoothlab {

namespace {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

double ratio_to_double(const BigInt& num, const BigInt& den) {
    return (BigFloat(num) / BigFloat(den)).convert_to<double>();
}

// num <= bound * den with the double treated as an exact dyadic rational.
bool dyadic_le(const BigInt& num, const BigInt& den, double bound) {
    if (bound < 0) return num < 0;
    if (std::isinf(bound)) return true;
    int exp = 0;
    double mant = std::frexp(bound, &exp);  // bound = mant * 2^exp, mant in [0.5, 1)
    auto scaled = BigInt(int64_t(std::ldexp(mant, 53)));  // bound = scaled * 2^{exp-53}
    int shift = exp - 53;
    if (shift >= 0) return num <= (scaled * den) << shift;
    return (num << -shift) <= scaled * den;
}

}  // namespace

BinomialTable::BinomialTable(int max_n) : max_n_(max_n) {
    if (max_n < 0) throw std::invalid_argument("BinomialTable: negative n");
    c_.resize(size_t(max_n + 1) * (max_n + 2) / 2);
    auto at = [this](int n, int k) -> BigInt& {
        return c_[size_t(n) * (n + 1) / 2 + k];
    };
    for (int n = 0; n <= max_n; ++n) {
        at(n, 0) = 1;
        at(n, n) = 1;
        for (int k = 1; k < n; ++k) at(n, k) = at(n - 1, k - 1) + at(n - 1, k);
    }
}

const BigInt& BinomialTable::operator()(int n, int k) const {
    static const BigInt zero = 0;
    if (n < 0 || n > max_n_) throw std::out_of_range("BinomialTable: n out of range");
    if (k < 0 || k > n) return zero;
    return c_[size_t(n) * (n + 1) / 2 + k];
}

KrawtchoukTable::KrawtchoukTable(int n) : n_(n), binom_(n) {
    if (n < 0) throw std::invalid_argument("KrawtchoukTable: negative n");
}

BigInt KrawtchoukTable::value(int w, int i) const {
    if (w < 0 || w > n_ || i < 0 || i > n_)
        throw std::out_of_range("krawtchouk: indices outside [0, n]");
    BigInt acc = 0;
    for (int j = 0; j <= w; ++j) {
        BigInt term = binom_(i, j) * binom_(n_ - i, w - j);
        if (j & 1) {
            acc -= term;
        } else {
            acc += term;
        }
    }
    return acc;
}

BigInt krawtchouk(int n, int w, int i) { return KrawtchoukTable(n).value(w, i); }

BigInt ball_volume(int n, int t) {
    if (t < 0 || t > n) throw std::out_of_range("ball_volume: radius outside [0, n]");
    BinomialTable binom(n);
    BigInt acc = 0;
    for (int j = 0; j <= t; ++j) acc += binom(n, j);
    return acc;
}

double ball_volume_d(int n, int t) { return ball_volume(n, t).convert_to<double>(); }

KboundReport kbound_check(int n, const KrawtchoukBoundParams& params) {
    if (n < 1) throw std::invalid_argument("kbound_check: n must be >= 1");
    KrawtchoukTable kt(n);
    const BinomialTable& binom = kt.binomials();

    int w_max = int(std::floor(params.c * n));
    if (w_max > n) w_max = n;
    int i_max = n / 2;

    KboundReport report;
    report.pass = true;
    // Exact running max of |K_w(i)| n^i / (C(n,w) (n-2w)^i), tracked as a
    // big-integer fraction.
    BigInt best_num = 0, best_den = 1;
    bool best_infinite = false;

    for (int w = 0; w <= w_max; ++w) {
        BigInt base = n - 2 * w;
        BigInt npow = 1, dpow = 1;
        for (int i = 0; i <= i_max; ++i) {
            BigInt num = abs(kt.value(w, i)) * npow;
            BigInt den = binom(n, w) * dpow;
            if (den == 0) {
                // n = 2w and i >= 1: the bound degenerates to K_w(i) = 0.
                if (num != 0) {
                    report.pass = false;
                    if (!best_infinite) {
                        best_infinite = true;
                        report.worst_w = w;
                        report.worst_i = i;
                    }
                }
            } else {
                if (!dyadic_le(num, den, params.C)) report.pass = false;
                if (!best_infinite && num * best_den > best_num * den) {
                    best_num = num;
                    best_den = den;
                    report.worst_w = w;
                    report.worst_i = i;
                }
            }
            npow *= n;
            dpow *= base;
        }
    }
    report.worst_ratio = best_infinite ? std::numeric_limits<double>::infinity()
                                       : ratio_to_double(best_num, best_den);
    return report;
}

KrawtchoukBoundParams kbound_fit(int n, double c) {
    if (!(c > 0.0 && c < 0.5)) throw std::invalid_argument("kbound_fit: need c in (0, 1/2)");
    KboundReport scan = kbound_check(n, {std::numeric_limits<double>::infinity(), c});
    double C = std::max(1.0, std::ceil(scan.worst_ratio * 1e6) / 1e6);
    KrawtchoukBoundParams params{C, c};
    while (!kbound_check(n, params).pass) params.C += 1e-6;
    return params;
}

}  // namespace smoothlab

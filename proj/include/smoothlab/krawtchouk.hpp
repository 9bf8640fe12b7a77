#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

namespace smoothlab {

using BigInt = boost::multiprecision::cpp_int;

/// Pascal triangle up to max_n, exact.
class BinomialTable {
  public:
    explicit BinomialTable(int max_n);
    const BigInt& operator()(int n, int k) const;
    int max_n() const { return max_n_; }

  private:
    int max_n_;
    std::vector<BigInt> c_;  // row-major triangle, row n has n+1 entries
};

/// K_w(i) = sum_j (-1)^j C(i,j) C(n-i, w-j), exact.
BigInt krawtchouk(int n, int w, int i);

/// All Krawtchouk values for one n, backed by a shared binomial table.
class KrawtchoukTable {
  public:
    explicit KrawtchoukTable(int n);
    BigInt value(int w, int i) const;
    const BinomialTable& binomials() const { return binom_; }
    int n() const { return n_; }

  private:
    int n_;
    BinomialTable binom_;
};

/// V_n(t) = sum_{j<=t} C(n,j), exact.
BigInt ball_volume(int n, int t);

/// ball_volume as a double (exact while below 2^53).
double ball_volume_d(int n, int t);

/// Constants (C, c) for the sphere-transform magnitude bound
/// |K_w(i)| / C(n,w) <= C (1 - 2w/n)^i over 0 <= w <= c n, 0 <= i <= n/2.
/// The bound is known to hold with C = 1, c = 0.16 for n >= 300; smaller n
/// get certified constants from kbound_fit.
struct KrawtchoukBoundParams {
    double C = 1.0;
    double c = 0.16;
};

struct KboundReport {
    bool pass = false;
    double worst_ratio = 0.0;  // max of (|K_w(i)|/C(n,w)) / (1-2w/n)^i
    int worst_w = 0;
    int worst_i = 0;
};

/// Exhaustive exact-integer check of the bound at one n. Comparisons are
/// done in integer arithmetic (the double C is treated as an exact dyadic);
/// no floating-point slack is involved.
KboundReport kbound_check(int n, const KrawtchoukBoundParams& params);

/// Smallest C >= 1 (on a 1e-6 grid) making kbound_check pass at this n.
KrawtchoukBoundParams kbound_fit(int n, double c);

}  // namespace smoothlab

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "smoothlab/gf2.hpp"

namespace smoothlab {

// solve_ml scans all 2^k candidate secrets.
inline constexpr int kMaxSolverDim = 20;

/// A batch of LPN samples (a_i, b_i) with b_i = a_i^T m + noise. Sample
/// vectors are stored index-encoded (bit i = coordinate i). The planted
/// secret is kept for scoring synthetic instances; solvers never read it.
struct LpnInstance {
    int k = 0;
    std::optional<double> delta;  // generation noise rate, when known
    std::vector<uint64_t> a;
    std::vector<uint8_t> b;
    std::optional<uint64_t> secret;

    size_t size() const { return a.size(); }
};

/// m uniform, a_i i.i.d. uniform, b_i = a_i^T m xor Ber(delta).
LpnInstance gen_lpn(int k, double delta, size_t N, uint64_t seed);

/// Maximum-likelihood secret: the m' maximizing the number of satisfied
/// samples, ties broken toward the smallest integer encoding. Implemented
/// as one integer Walsh transform over the +/-1 sample histogram, so the
/// cost is O(2^k k + N) rather than O(2^k N).
GF2Vector solve_ml(const LpnInstance& inst);

struct SolverStats {
    size_t trials = 0;
    size_t successes = 0;
    double alpha_hat = 0;
    double ci_halfwidth = 0;  // 1.96 sqrt(a(1-a)/trials)
};

/// Monte-Carlo success probability of solve_ml over fresh instances.
/// Trial t draws its own engine from (seed, t); results are independent of
/// the worker schedule.
SolverStats estimate_alpha(int k, double delta, size_t N, size_t trials, uint64_t seed);

// CSV serialization: "# k=<k> delta=<delta> seed=<seed>" comment line,
// "a_bits,b" header, then one row per sample with a as a 0/1 string.
void save_lpn_csv(const LpnInstance& inst, std::ostream& out, uint64_t seed);
LpnInstance load_lpn_csv(std::istream& in);

}  // namespace smoothlab

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "smoothlab/gf2.hpp"

namespace smoothlab {

// Exhaustive codeword enumeration (min distance, weight distribution) is
// refused above this dimension rather than approximated.
inline constexpr int kMaxEnumerationDim = 28;

/// An [n, k] linear code held as a generator / parity-check pair with
/// gen * parity^T = 0, rank(gen) = k and rank(parity) = n - k. k = 0 and
/// k = n are permitted (one of the two matrices then has zero rows).
class LinearCode {
  public:
    explicit LinearCode(GF2Matrix gen);
    LinearCode(GF2Matrix gen, GF2Matrix parity);

    int n() const { return gen_.cols(); }
    int k() const { return gen_.rows(); }
    const GF2Matrix& gen() const { return gen_; }
    const GF2Matrix& parity() const { return parity_; }

    std::optional<int> cached_min_dist() const { return min_dist_; }
    std::optional<int> cached_dual_min_dist() const { return dual_min_dist_; }

    /// Fills both distance caches (idempotent). Mutating call: do this
    /// during single-threaded setup, before the code is shared.
    void ensure_distances();

  private:
    GF2Matrix gen_;
    GF2Matrix parity_;
    std::optional<int> min_dist_;
    std::optional<int> dual_min_dist_;
};

/// Swaps the roles of generator and parity-check matrix.
LinearCode dual_code(const LinearCode& c);

/// Exact minimum nonzero codeword weight by enumeration of all 2^k - 1
/// codewords (early exit at weight 1). Requires 1 <= k <= kMaxEnumerationDim.
int min_distance(const LinearCode& c);

/// entry[w] = #{codewords of weight w}; entries sum to 2^k.
std::vector<uint64_t> weight_distribution(const LinearCode& c);

/// Uniform full-row-rank k x n generator by rejection resampling,
/// deterministic in seed. Throws after 1000 failed attempts.
LinearCode random_linear_code(int n, int k, uint64_t seed);

// Text format: first line "n k", then k generator rows as 0/1 strings.
void save_code(const LinearCode& c, std::ostream& out);
void save_code(const LinearCode& c, const std::string& path);
LinearCode load_code(std::istream& in);
LinearCode load_code(const std::string& path);

}  // namespace smoothlab

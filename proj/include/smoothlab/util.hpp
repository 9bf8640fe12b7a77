#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>

namespace smoothlab {

// Compensated (Neumaier) summation. TV distances, tail masses and
// normalization checks compare against 1e-12 tolerances, so plain
// left-to-right accumulation over 2^n terms is not good enough.
class NeumaierSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double neumaier_total(std::span<const double> xs) {
    NeumaierSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

inline int parity64(uint64_t x) { return std::popcount(x) & 1; }

inline bool is_pow2(size_t x) { return x != 0 && (x & (x - 1)) == 0; }

inline int log2_exact(size_t x) {
    if (!is_pow2(x)) throw std::invalid_argument("length is not a power of two");
    return std::countr_zero(x);
}

// Runs fn(0..count-1) on a static partition of worker threads. Every index
// is processed exactly once and workers never share mutable state, so
// results do not depend on scheduling. SMOOTHLAB_THREADS caps the pool.
void parallel_for(size_t count, const std::function<void(size_t)>& fn);

size_t worker_count();

}  // namespace smoothlab

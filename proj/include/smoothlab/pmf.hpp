#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "smoothlab/code.hpp"
#include "smoothlab/gf2.hpp"

namespace smoothlab {

// Dense pmfs allocate 2^n doubles; 26 is the hard library cap (512 MB).
// The CLI additionally gates n > 22 behind --max-n.
inline constexpr int kMaxPmfDim = 26;
inline constexpr int kDefaultPmfDim = 22;

// Negative mass beyond this magnitude indicates a logic bug rather than
// transform roundoff and is rejected instead of clamped.
inline constexpr double kMassClampFloor = -1e-15;

/// Probability mass function on F_2^n, stored dense and indexed by the
/// little-endian integer encoding (bit i of the index = coordinate i).
class Pmf {
  public:
    static Pmf uniform(int n);
    static Pmf delta(int n, uint64_t x);
    static Pmf bernoulli_product(int n, double delta);
    /// Uniform distribution on the Hamming sphere S(0, w).
    static Pmf sphere_uniform(int n, int w);
    /// P_C: uniform over the 2^k codewords of C.
    static Pmf code_uniform(const LinearCode& c);
    /// Validates length 2^n, clamps roundoff negatives, requires the total
    /// within `tol` of 1, then renormalizes exactly.
    static Pmf from_mass(std::vector<double> mass, double tol = 1e-9);

    int n() const { return n_; }
    size_t size() const { return mass_.size(); }
    double operator[](uint64_t x) const { return mass_[x]; }
    std::span<const double> mass() const { return mass_; }
    double total() const;

  private:
    Pmf(int n, std::vector<double> mass) : n_(n), mass_(std::move(mass)) {}
    static Pmf from_raw(int n, std::vector<double> mass, double tol);

    int n_;
    std::vector<double> mass_;
};

/// Fourier coefficient table; coef[y] = (1/2^n) sum_x f(x) (-1)^{x.y}.
struct Spectrum {
    int n = 0;
    std::vector<double> coef;
};

/// In-place unnormalized Walsh-Hadamard butterfly: a[y] <- sum_x a[x](-1)^{x.y}.
/// Self-inverse up to a factor 2^n. Exact on integer-valued input that stays
/// below 2^53, which the Krawtchouk identities rely on.
void fwht_butterfly(std::span<double> a);
void fwht_butterfly(std::span<int64_t> a);

Spectrum fwht_forward(std::span<const double> f);
Spectrum fwht_forward(const Pmf& p);
std::vector<double> fwht_inverse(const Spectrum& s);

/// (f * g)(x) = sum_y f(y) g(x - y), computed through the transform domain.
Pmf convolve(const Pmf& f, const Pmf& g);

/// (1/2) sum_x |P(x) - Q(x)|, compensated summation.
double tv_distance(const Pmf& p, const Pmf& q);

/// bias(e^T Z) = (Pr[e^T Z = 0] - Pr[e^T Z = 1]) / 2, evaluated as the
/// direct signed sum; equals 2^{n-1} * spectrum(P).coef[e].
double bias_of(const GF2Vector& e, const Pmf& p);

/// Exact law of M Z for Z ~ P: mass is binned over preimages.
Pmf pushforward(const GF2Matrix& m, const Pmf& p);

/// Law of (G Z, e^T Z) on F_2^{k+1}; bit k of the index carries e^T Z.
Pmf joint_pushforward(const GF2Matrix& g, const GF2Vector& e, const Pmf& p);

/// base x Ber(delta) on n+1 bits: the top bit is the Bernoulli coordinate.
Pmf product_with_bernoulli(const Pmf& base, double delta);

/// Inverse-CDF sampler over a dense pmf (cumulative table + binary search).
class PmfSampler {
  public:
    explicit PmfSampler(const Pmf& p);
    uint64_t draw(std::mt19937_64& g) const;
    int n() const { return n_; }

  private:
    int n_;
    std::vector<double> cdf_;
};

// CSV serialization: header "index,mass", one row per point. The loader
// infers n from the row count and validates normalization within 1e-9.
void save_pmf_csv(const Pmf& p, std::ostream& out);
void save_pmf_csv(const Pmf& p, const std::string& path);
Pmf load_pmf_csv(std::istream& in);
Pmf load_pmf_csv(const std::string& path);

}  // namespace smoothlab

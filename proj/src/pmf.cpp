#include "smoothlab/pmf.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "smoothlab/rng.hpp"
#include "smoothlab/util.hpp"

namespace smoothlab {

namespace {

void check_dim(int n) {
    if (n < 0 || n > kMaxPmfDim)
        throw std::invalid_argument("Pmf: dimension outside [0, " +
                                    std::to_string(kMaxPmfDim) + "]");
}

}  // namespace

Pmf Pmf::uniform(int n) {
    check_dim(n);
    size_t size = size_t{1} << n;
    return Pmf(n, std::vector<double>(size, std::ldexp(1.0, -n)));
}

Pmf Pmf::delta(int n, uint64_t x) {
    check_dim(n);
    size_t size = size_t{1} << n;
    if (x >= size) throw std::invalid_argument("Pmf::delta: point out of range");
    std::vector<double> mass(size, 0.0);
    mass[x] = 1.0;
    return Pmf(n, std::move(mass));
}

Pmf Pmf::bernoulli_product(int n, double delta) {
    check_dim(n);
    if (delta < 0.0 || delta > 1.0)
        throw std::invalid_argument("Pmf::bernoulli_product: delta outside [0,1]");
    size_t size = size_t{1} << n;
    std::vector<double> by_weight(size_t(n) + 1);
    for (int w = 0; w <= n; ++w)
        by_weight[size_t(w)] = std::pow(delta, w) * std::pow(1.0 - delta, n - w);
    std::vector<double> mass(size);
    for (size_t x = 0; x < size; ++x) mass[x] = by_weight[size_t(std::popcount(x))];
    return from_raw(n, std::move(mass), 1e-9);
}

Pmf Pmf::sphere_uniform(int n, int w) {
    check_dim(n);
    if (w < 0 || w > n) throw std::invalid_argument("Pmf::sphere_uniform: radius out of range");
    size_t size = size_t{1} << n;
    std::vector<double> mass(size, 0.0);
    uint64_t count = 0;
    for (size_t x = 0; x < size; ++x)
        if (std::popcount(x) == w) ++count;
    double m = 1.0 / double(count);
    for (size_t x = 0; x < size; ++x)
        if (std::popcount(x) == w) mass[x] = m;
    return from_raw(n, std::move(mass), 1e-9);
}

Pmf Pmf::code_uniform(const LinearCode& c) {
    check_dim(c.n());
    if (c.k() > kMaxPmfDim) throw std::invalid_argument("Pmf::code_uniform: 2^k too large");
    size_t size = size_t{1} << c.n();
    std::vector<double> mass(size, 0.0);
    double atom = std::ldexp(1.0, -c.k());
    std::vector<uint64_t> rows(size_t(c.k()));
    for (int r = 0; r < c.k(); ++r) rows[size_t(r)] = c.gen().row(r).to_index();
    uint64_t cw = 0;
    mass[0] += atom;
    uint64_t total = c.k() >= 1 ? (uint64_t{1} << c.k()) : 1;
    for (uint64_t t = 1; t < total; ++t) {
        cw ^= rows[size_t(std::countr_zero(t))];
        mass[cw] += atom;
    }
    return Pmf(c.n(), std::move(mass));
}

Pmf Pmf::from_mass(std::vector<double> mass, double tol) {
    int n = log2_exact(mass.size());
    return from_raw(n, std::move(mass), tol);
}

Pmf Pmf::from_raw(int n, std::vector<double> mass, double tol) {
    check_dim(n);
    if (mass.size() != (size_t{1} << n)) throw std::invalid_argument("Pmf: length != 2^n");
    for (double& m : mass) {
        if (m < 0.0) {
            if (m < kMassClampFloor)
                throw std::invalid_argument("Pmf: negative mass beyond roundoff floor");
            m = 0.0;
        }
    }
    double total = neumaier_total(mass);
    if (std::abs(total - 1.0) > tol)
        throw std::invalid_argument("Pmf: mass does not sum to 1 within tolerance");
    if (total != 1.0) {
        for (double& m : mass) m /= total;
    }
    return Pmf(n, std::move(mass));
}

double Pmf::total() const { return neumaier_total(mass_); }

template <typename T>
static void butterfly_impl(std::span<T> a) {
    size_t size = a.size();
    if (!is_pow2(size)) throw std::invalid_argument("fwht: length is not a power of two");
    for (size_t h = 1; h < size; h <<= 1) {
        for (size_t i = 0; i < size; i += (h << 1)) {
            for (size_t j = i; j < i + h; ++j) {
                T x = a[j];
                T y = a[j + h];
                a[j] = x + y;
                a[j + h] = x - y;
            }
        }
    }
}

void fwht_butterfly(std::span<double> a) { butterfly_impl(a); }
void fwht_butterfly(std::span<int64_t> a) { butterfly_impl(a); }

Spectrum fwht_forward(std::span<const double> f) {
    int n = log2_exact(f.size());
    Spectrum s;
    s.n = n;
    s.coef.assign(f.begin(), f.end());
    fwht_butterfly(std::span<double>(s.coef));
    double scale = std::ldexp(1.0, -n);
    for (double& c : s.coef) c *= scale;
    return s;
}

Spectrum fwht_forward(const Pmf& p) { return fwht_forward(p.mass()); }

std::vector<double> fwht_inverse(const Spectrum& s) {
    if (s.coef.size() != (size_t{1} << s.n))
        throw std::invalid_argument("fwht_inverse: malformed spectrum");
    std::vector<double> f(s.coef);
    fwht_butterfly(std::span<double>(f));
    return f;
}

Pmf convolve(const Pmf& f, const Pmf& g) {
    if (f.n() != g.n()) throw std::invalid_argument("convolve: dimension mismatch");
    std::vector<double> a(f.mass().begin(), f.mass().end());
    std::vector<double> b(g.mass().begin(), g.mass().end());
    fwht_butterfly(std::span<double>(a));
    fwht_butterfly(std::span<double>(b));
    for (size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
    fwht_butterfly(std::span<double>(a));
    // butterfly(butterfly(f) . butterfly(g)) = 2^n (f*g)
    double scale = std::ldexp(1.0, -f.n());
    for (double& x : a) x *= scale;
    return Pmf::from_mass(std::move(a), 1e-9);
}

double tv_distance(const Pmf& p, const Pmf& q) {
    if (p.n() != q.n()) throw std::invalid_argument("tv_distance: dimension mismatch");
    NeumaierSum s;
    for (size_t x = 0; x < p.size(); ++x) s.add(std::abs(p[x] - q[x]));
    return 0.5 * s.value();
}

double bias_of(const GF2Vector& e, const Pmf& p) {
    if (e.n() != p.n()) throw std::invalid_argument("bias_of: dimension mismatch");
    uint64_t em = e.to_index();
    NeumaierSum s;
    for (size_t x = 0; x < p.size(); ++x) s.add(parity64(x & em) ? -p[x] : p[x]);
    return 0.5 * s.value();
}

Pmf pushforward(const GF2Matrix& m, const Pmf& p) {
    if (m.cols() != p.n()) throw std::invalid_argument("pushforward: dimension mismatch");
    int r = m.rows();
    if (r > kMaxPmfDim) throw std::invalid_argument("pushforward: output dimension too large");
    std::vector<uint64_t> col = column_images(m);
    std::vector<double> out(size_t{1} << r, 0.0);
    // Gray-code walk over the domain: z_t = t ^ (t >> 1), image updated by
    // one column per step.
    uint64_t y = 0;
    out[0] += p[0];
    uint64_t total = uint64_t{1} << p.n();
    for (uint64_t t = 1; t < total; ++t) {
        y ^= col[size_t(std::countr_zero(t))];
        out[y] += p[t ^ (t >> 1)];
    }
    return Pmf::from_mass(std::move(out), 1e-9);
}

Pmf joint_pushforward(const GF2Matrix& g, const GF2Vector& e, const Pmf& p) {
    if (g.cols() != p.n() || e.n() != p.n())
        throw std::invalid_argument("joint_pushforward: dimension mismatch");
    return pushforward(g.stacked(e), p);
}

Pmf product_with_bernoulli(const Pmf& base, double delta) {
    if (delta < 0.0 || delta > 1.0)
        throw std::invalid_argument("product_with_bernoulli: delta outside [0,1]");
    size_t half = base.size();
    std::vector<double> mass(half << 1);
    for (size_t x = 0; x < half; ++x) {
        mass[x] = base[x] * (1.0 - delta);
        mass[half + x] = base[x] * delta;
    }
    return Pmf::from_mass(std::move(mass), 1e-9);
}

PmfSampler::PmfSampler(const Pmf& p) : n_(p.n()), cdf_(p.size()) {
    double run = 0.0;
    for (size_t x = 0; x < p.size(); ++x) {
        run += p[x];
        cdf_[x] = run;
    }
    cdf_.back() = std::max(cdf_.back(), 1.0);
}

uint64_t PmfSampler::draw(std::mt19937_64& g) const {
    double u = uniform01(g);
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return uint64_t(it - cdf_.begin());
}

void save_pmf_csv(const Pmf& p, std::ostream& out) {
    out << "index,mass\n";
    char buf[64];
    for (size_t x = 0; x < p.size(); ++x) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", x, p[x]);
        out << buf;
    }
}

void save_pmf_csv(const Pmf& p, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("save_pmf_csv: cannot open " + path);
    save_pmf_csv(p, f);
}

Pmf load_pmf_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "index,mass")
        throw std::runtime_error("load_pmf_csv: expected 'index,mass' header");
    std::vector<double> mass;
    size_t expect = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        size_t comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("load_pmf_csv: malformed row");
        size_t idx = std::stoull(line.substr(0, comma));
        if (idx != expect) throw std::runtime_error("load_pmf_csv: indices must be consecutive");
        mass.push_back(std::stod(line.substr(comma + 1)));
        ++expect;
    }
    if (!is_pow2(mass.size()))
        throw std::runtime_error("load_pmf_csv: row count is not a power of two");
    return Pmf::from_mass(std::move(mass), 1e-9);
}

Pmf load_pmf_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_pmf_csv: cannot open " + path);
    return load_pmf_csv(f);
}

}  // namespace smoothlab

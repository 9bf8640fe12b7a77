#include "smoothlab/code.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "smoothlab/rng.hpp"

namespace smoothlab {

namespace {

void check_pair(const GF2Matrix& gen, const GF2Matrix& parity) {
    if (parity.cols() != gen.cols())
        throw std::invalid_argument("LinearCode: generator/parity width mismatch");
    int n = gen.cols();
    int k = gen.rows();
    if (parity.rows() != n - k)
        throw std::invalid_argument("LinearCode: parity must have n - k rows");
    if (gen.rank() != k) throw std::invalid_argument("LinearCode: generator is not full row rank");
    if (parity.rank() != n - k)
        throw std::invalid_argument("LinearCode: parity is not full row rank");
    for (int r = 0; r < k; ++r) {
        GF2Vector g = gen.row(r);
        for (int h = 0; h < parity.rows(); ++h) {
            if (g.dot(parity.row(h)))
                throw std::invalid_argument("LinearCode: gen * parity^T != 0");
        }
    }
}

}  // namespace

LinearCode::LinearCode(GF2Matrix gen) : gen_(gen), parity_(gen.nullspace()) {
    if (gen_.rank() != gen_.rows())
        throw std::invalid_argument("LinearCode: generator is not full row rank");
}

LinearCode::LinearCode(GF2Matrix gen, GF2Matrix parity)
    : gen_(std::move(gen)), parity_(std::move(parity)) {
    check_pair(gen_, parity_);
}

void LinearCode::ensure_distances() {
    if (!min_dist_ && k() >= 1) min_dist_ = min_distance(*this);
    if (!dual_min_dist_ && k() < n()) dual_min_dist_ = min_distance(dual_code(*this));
}

LinearCode dual_code(const LinearCode& c) { return LinearCode(c.parity(), c.gen()); }

int min_distance(const LinearCode& c) {
    int k = c.k();
    if (k < 1) throw std::invalid_argument("min_distance: code has no nonzero codewords");
    if (auto cached = c.cached_min_dist()) return *cached;
    if (k > kMaxEnumerationDim)
        throw std::invalid_argument("min_distance: k exceeds the exhaustive enumeration cap");

    GF2Vector cw(c.n());
    int best = c.n();
    uint64_t total = uint64_t{1} << k;
    // Gray-code walk: step t toggles generator row ctz(t).
    for (uint64_t t = 1; t < total; ++t) {
        cw ^= c.gen().row(std::countr_zero(t));
        int w = cw.weight();
        if (w < best) {
            best = w;
            if (best == 1) break;
        }
    }
    return best;
}

std::vector<uint64_t> weight_distribution(const LinearCode& c) {
    int k = c.k();
    if (k > kMaxEnumerationDim)
        throw std::invalid_argument("weight_distribution: k exceeds the enumeration cap");
    std::vector<uint64_t> counts(size_t(c.n()) + 1, 0);
    GF2Vector cw(c.n());
    counts[0] = 1;  // zero codeword
    uint64_t total = k >= 1 ? (uint64_t{1} << k) : 1;
    for (uint64_t t = 1; t < total; ++t) {
        cw ^= c.gen().row(std::countr_zero(t));
        counts[size_t(cw.weight())]++;
    }
    return counts;
}

LinearCode random_linear_code(int n, int k, uint64_t seed) {
    if (k < 1 || k >= n) throw std::invalid_argument("random_linear_code: need 1 <= k < n");
    auto g = make_engine(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        GF2Matrix m = GF2Matrix::random(k, n, g);
        if (m.rank() == k) return LinearCode(std::move(m));
    }
    throw std::runtime_error("random_linear_code: retry cap reached");
}

void save_code(const LinearCode& c, std::ostream& out) {
    out << c.n() << ' ' << c.k() << '\n';
    for (int r = 0; r < c.k(); ++r) out << c.gen().row(r).to_string() << '\n';
}

void save_code(const LinearCode& c, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("save_code: cannot open " + path);
    save_code(c, f);
}

LinearCode load_code(std::istream& in) {
    int n = 0, k = 0;
    if (!(in >> n >> k)) throw std::runtime_error("load_code: missing 'n k' header");
    if (n < 1 || k < 1 || k > n) throw std::runtime_error("load_code: bad dimensions");
    std::string line;
    std::getline(in, line);  // rest of header line
    std::vector<GF2Vector> rows;
    for (int r = 0; r < k; ++r) {
        if (!std::getline(in, line)) throw std::runtime_error("load_code: missing generator row");
        if (int(line.size()) != n) throw std::runtime_error("load_code: ragged row");
        rows.push_back(GF2Vector::from_string(line));
    }
    return LinearCode(GF2Matrix::from_rows(rows));
}

LinearCode load_code(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_code: cannot open " + path);
    return load_code(f);
}

}  // namespace smoothlab

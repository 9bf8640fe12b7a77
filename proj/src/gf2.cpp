#include "smoothlab/gf2.hpp"

#include <bit>
#include <stdexcept>

#include "smoothlab/rng.hpp"

namespace smoothlab {

namespace {
int words_for(int nbits) { return (nbits + 63) / 64; }
}  // namespace

GF2Vector::GF2Vector(int n) : n_(n), words_(size_t(words_for(n)), 0) {
    if (n < 1) throw std::invalid_argument("GF2Vector: length must be >= 1");
}

GF2Vector GF2Vector::from_index(int n, uint64_t index) {
    if (n > 63) throw std::invalid_argument("GF2Vector::from_index: n > 63");
    GF2Vector v(n);
    if (n < 64 && (index >> n) != 0)
        throw std::invalid_argument("GF2Vector::from_index: index out of range");
    v.words_[0] = index;
    return v;
}

GF2Vector GF2Vector::from_string(std::string_view s) {
    GF2Vector v(int(s.size()));
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') {
            v.set(int(i), true);
        } else if (s[i] != '0') {
            throw std::invalid_argument("GF2Vector::from_string: expected only 0/1");
        }
    }
    return v;
}

GF2Vector GF2Vector::random(int n, std::mt19937_64& g) {
    GF2Vector v(n);
    for (size_t w = 0; w < v.words_.size(); ++w) v.words_[w] = g();
    int tail = n % 64;
    if (tail) v.words_.back() &= (uint64_t{1} << tail) - 1;
    return v;
}

bool GF2Vector::get(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("GF2Vector::get");
    return (words_[size_t(i) / 64] >> (i % 64)) & 1;
}

void GF2Vector::set(int i, bool v) {
    if (i < 0 || i >= n_) throw std::out_of_range("GF2Vector::set");
    uint64_t mask = uint64_t{1} << (i % 64);
    if (v) {
        words_[size_t(i) / 64] |= mask;
    } else {
        words_[size_t(i) / 64] &= ~mask;
    }
}

int GF2Vector::weight() const {
    int w = 0;
    for (uint64_t x : words_) w += std::popcount(x);
    return w;
}

bool GF2Vector::is_zero() const {
    for (uint64_t x : words_)
        if (x) return false;
    return true;
}

bool GF2Vector::dot(const GF2Vector& other) const {
    if (n_ != other.n_) throw std::invalid_argument("GF2Vector::dot: length mismatch");
    uint64_t acc = 0;
    for (size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return std::popcount(acc) & 1;
}

uint64_t GF2Vector::to_index() const {
    if (n_ > 63) throw std::invalid_argument("GF2Vector::to_index: n > 63");
    return words_[0];
}

std::string GF2Vector::to_string() const {
    std::string s(size_t(n_), '0');
    for (int i = 0; i < n_; ++i)
        if (get(i)) s[size_t(i)] = '1';
    return s;
}

GF2Vector& GF2Vector::operator^=(const GF2Vector& other) {
    if (n_ != other.n_) throw std::invalid_argument("GF2Vector::operator^=: length mismatch");
    for (size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

GF2Matrix::GF2Matrix(int rows, int cols)
    : rows_(rows), cols_(cols), wpr_(words_for(cols)), bits_(size_t(rows) * wpr_, 0) {
    if (rows < 0 || cols < 1) throw std::invalid_argument("GF2Matrix: bad shape");
}

GF2Matrix GF2Matrix::identity(int n) {
    GF2Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

GF2Matrix GF2Matrix::random(int rows, int cols, std::mt19937_64& g) {
    GF2Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        auto w = m.row_words(r);
        for (auto& word : w) word = g();
        int tail = cols % 64;
        if (tail) w.back() &= (uint64_t{1} << tail) - 1;
    }
    return m;
}

GF2Matrix GF2Matrix::from_rows(const std::vector<GF2Vector>& rows) {
    if (rows.empty()) throw std::invalid_argument("GF2Matrix::from_rows: empty");
    GF2Matrix m(int(rows.size()), rows[0].n());
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].n() != m.cols_)
            throw std::invalid_argument("GF2Matrix::from_rows: ragged rows");
        auto dst = m.row_words(int(r));
        auto src = rows[r].words();
        for (size_t w = 0; w < dst.size(); ++w) dst[w] = src[w];
    }
    return m;
}

bool GF2Matrix::get(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("GF2Matrix::get");
    return (row_words(r)[size_t(c) / 64] >> (c % 64)) & 1;
}

void GF2Matrix::set(int r, int c, bool v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("GF2Matrix::set");
    uint64_t mask = uint64_t{1} << (c % 64);
    auto w = row_words(r);
    if (v) {
        w[size_t(c) / 64] |= mask;
    } else {
        w[size_t(c) / 64] &= ~mask;
    }
}

GF2Vector GF2Matrix::row(int r) const {
    if (r < 0 || r >= rows_) throw std::out_of_range("GF2Matrix::row");
    GF2Vector out(cols_);
    auto src = row_words(r);
    for (int i = 0; i < cols_; ++i)
        if ((src[size_t(i) / 64] >> (i % 64)) & 1) out.set(i, true);
    return out;
}

GF2Vector GF2Matrix::mul(const GF2Vector& v) const {
    if (v.n() != cols_) throw std::invalid_argument("GF2Matrix::mul: dimension mismatch");
    if (rows_ == 0) throw std::invalid_argument("GF2Matrix::mul: empty matrix");
    GF2Vector out(rows_);
    auto vw = v.words();
    for (int r = 0; r < rows_; ++r) {
        uint64_t acc = 0;
        auto rw = row_words(r);
        for (size_t w = 0; w < rw.size(); ++w) acc ^= rw[w] & vw[w];
        if (std::popcount(acc) & 1) out.set(r, true);
    }
    return out;
}

GF2Matrix GF2Matrix::transpose() const {
    if (rows_ == 0) throw std::invalid_argument("GF2Matrix::transpose: empty matrix");
    GF2Matrix out(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (get(r, c)) out.set(c, r, true);
    return out;
}

namespace {

// In-place row reduction; returns pivot columns. rows is mutated.
std::vector<int> rref_inplace(std::vector<std::vector<uint64_t>>& rows, int cols, int wpr) {
    std::vector<int> pivots;
    size_t pivot_row = 0;
    for (int c = 0; c < cols && pivot_row < rows.size(); ++c) {
        uint64_t mask = uint64_t{1} << (c % 64);
        size_t wi = size_t(c) / 64;
        size_t sel = rows.size();
        for (size_t r = pivot_row; r < rows.size(); ++r) {
            if (rows[r][wi] & mask) {
                sel = r;
                break;
            }
        }
        if (sel == rows.size()) continue;
        std::swap(rows[pivot_row], rows[sel]);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r != pivot_row && (rows[r][wi] & mask)) {
                for (int w = 0; w < wpr; ++w) rows[r][size_t(w)] ^= rows[pivot_row][size_t(w)];
            }
        }
        pivots.push_back(c);
        ++pivot_row;
    }
    return pivots;
}

}  // namespace

int GF2Matrix::rank() const {
    std::vector<std::vector<uint64_t>> rows(static_cast<size_t>(rows_));
    for (int r = 0; r < rows_; ++r) {
        auto w = row_words(r);
        rows[size_t(r)].assign(w.begin(), w.end());
    }
    return int(rref_inplace(rows, cols_, wpr_).size());
}

GF2Matrix GF2Matrix::nullspace() const {
    std::vector<std::vector<uint64_t>> rows(static_cast<size_t>(rows_));
    for (int r = 0; r < rows_; ++r) {
        auto w = row_words(r);
        rows[size_t(r)].assign(w.begin(), w.end());
    }
    std::vector<int> pivots = rref_inplace(rows, cols_, wpr_);

    std::vector<bool> is_pivot(size_t(cols_), false);
    for (int c : pivots) is_pivot[size_t(c)] = true;

    int dim = cols_ - int(pivots.size());
    GF2Matrix basis(dim, cols_);
    int out_row = 0;
    for (int f = 0; f < cols_; ++f) {
        if (is_pivot[size_t(f)]) continue;
        basis.set(out_row, f, true);
        // pivot variable p takes the value of the reduced row's entry at f
        for (size_t p = 0; p < pivots.size(); ++p) {
            uint64_t word = rows[p][size_t(f) / 64];
            if ((word >> (f % 64)) & 1) basis.set(out_row, pivots[p], true);
        }
        ++out_row;
    }
    return basis;
}

GF2Matrix GF2Matrix::stacked(const GF2Vector& extra_row) const {
    if (extra_row.n() != cols_) throw std::invalid_argument("GF2Matrix::stacked: length mismatch");
    GF2Matrix out(rows_ + 1, cols_);
    for (int r = 0; r < rows_; ++r) {
        auto src = row_words(r);
        auto dst = out.row_words(r);
        for (size_t w = 0; w < src.size(); ++w) dst[w] = src[w];
    }
    auto dst = out.row_words(rows_);
    auto src = extra_row.words();
    for (size_t w = 0; w < src.size(); ++w) dst[w] = src[w];
    return out;
}

std::vector<uint64_t> column_images(const GF2Matrix& m) {
    if (m.rows() > 63) throw std::invalid_argument("column_images: rows > 63");
    std::vector<uint64_t> col(size_t(m.cols()), 0);
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (m.get(r, c)) col[size_t(c)] |= uint64_t{1} << r;
    return col;
}

}  // namespace smoothlab

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace smoothlab {

/// Bit-packed vector over F_2. Coordinate i lives in bit (i % 64) of word
/// (i / 64); the same little-endian convention is used for the integer
/// encoding of F_2^n points everywhere in this library.
class GF2Vector {
  public:
    explicit GF2Vector(int n);
    static GF2Vector from_index(int n, uint64_t index);
    static GF2Vector from_string(std::string_view s);
    static GF2Vector random(int n, std::mt19937_64& g);

    int n() const { return n_; }
    bool get(int i) const;
    void set(int i, bool v);
    int weight() const;
    bool is_zero() const;

    // Inner product <x,y> over F_2.
    bool dot(const GF2Vector& other) const;

    uint64_t to_index() const;  // requires n <= 63
    std::string to_string() const;

    GF2Vector& operator^=(const GF2Vector& other);
    friend GF2Vector operator^(GF2Vector a, const GF2Vector& b) {
        a ^= b;
        return a;
    }
    friend bool operator==(const GF2Vector&, const GF2Vector&) = default;

    std::span<const uint64_t> words() const { return words_; }

  private:
    int n_;
    std::vector<uint64_t> words_;
};

/// Row-major bit-packed matrix over F_2.
class GF2Matrix {
  public:
    GF2Matrix(int rows, int cols);  // zero matrix; rows may be 0
    static GF2Matrix identity(int n);
    static GF2Matrix random(int rows, int cols, std::mt19937_64& g);
    static GF2Matrix from_rows(const std::vector<GF2Vector>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool get(int r, int c) const;
    void set(int r, int c, bool v);
    GF2Vector row(int r) const;

    /// M v over F_2; result[i] = parity(<row_i, v>).
    GF2Vector mul(const GF2Vector& v) const;
    GF2Matrix transpose() const;
    int rank() const;

    /// Basis of {x : M x = 0} as rows of a (cols - rank) x cols matrix.
    GF2Matrix nullspace() const;

    /// Copy with one extra row appended.
    GF2Matrix stacked(const GF2Vector& extra_row) const;

    friend bool operator==(const GF2Matrix&, const GF2Matrix&) = default;

  private:
    int rows_, cols_, wpr_;
    std::vector<uint64_t> bits_;

    std::span<uint64_t> row_words(int r) { return {bits_.data() + size_t(r) * wpr_, size_t(wpr_)}; }
    std::span<const uint64_t> row_words(int r) const {
        return {bits_.data() + size_t(r) * wpr_, size_t(wpr_)};
    }
};

/// Images of the unit vectors under M, as row-space indices: entry j is the
/// integer encoding of column j of M. Lets M z be computed for index-encoded
/// z by XORing entries over the set bits of z. Requires rows <= 63.
std::vector<uint64_t> column_images(const GF2Matrix& m);

inline uint64_t apply_column_images(const std::vector<uint64_t>& col, uint64_t z) {
    uint64_t acc = 0;
    while (z) {
        int j = std::countr_zero(z);
        acc ^= col[size_t(j)];
        z &= z - 1;
    }
    return acc;
}

}  // namespace smoothlab

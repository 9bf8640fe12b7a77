#include <doctest.h>

#include <random>
#include <stdexcept>

#include "smoothlab/gf2.hpp"
#include "smoothlab/rng.hpp"

using namespace smoothlab;

namespace {

// Unpacked reference: result[i] = XOR_j M[i][j] v[j].
GF2Vector naive_mul(const GF2Matrix& m, const GF2Vector& v) {
    GF2Vector out(m.rows());
    for (int r = 0; r < m.rows(); ++r) {
        int acc = 0;
        for (int c = 0; c < m.cols(); ++c) acc ^= (m.get(r, c) && v.get(c)) ? 1 : 0;
        out.set(r, acc != 0);
    }
    return out;
}

}  // namespace

TEST_CASE("vector encoding: bit i of the index is coordinate i") {
    GF2Vector v = GF2Vector::from_index(3, 0b101);
    CHECK(v.get(0));
    CHECK_FALSE(v.get(1));
    CHECK(v.get(2));
    CHECK(v.to_index() == 0b101);
    CHECK(v.to_string() == "101");
    CHECK(GF2Vector::from_string("101") == v);
    CHECK(v.weight() == 2);
}

TEST_CASE("mat_vec_mul examples") {
    GF2Vector v = GF2Vector::from_string("101");
    CHECK(GF2Matrix::identity(3).mul(v) == v);

    GF2Matrix zero(2, 3);
    CHECK(zero.mul(GF2Vector::from_string("111")) == GF2Vector(2));

    GF2Matrix m(2, 3);
    m.set(0, 0, true);
    m.set(0, 1, true);
    m.set(1, 1, true);
    m.set(1, 2, true);
    CHECK(m.mul(GF2Vector::from_string("110")) == GF2Vector::from_string("01"));
}

TEST_CASE("mat_vec_mul dimension mismatch is rejected") {
    CHECK_THROWS_AS(GF2Matrix::identity(3).mul(GF2Vector(4)), std::invalid_argument);
}

TEST_CASE("mat_vec_mul agrees with the naive bit-loop oracle") {
    std::mt19937_64 g(1234);
    for (int trial = 0; trial < 1000; ++trial) {
        int rows = 1 + int(uniform_below(g, 12));
        int cols = 1 + int(uniform_below(g, 40));
        GF2Matrix m = GF2Matrix::random(rows, cols, g);
        GF2Vector v = GF2Vector::random(cols, g);
        CHECK(m.mul(v) == naive_mul(m, v));
    }
}

TEST_CASE("column images reproduce mat_vec_mul for index-encoded input") {
    std::mt19937_64 g(99);
    for (int trial = 0; trial < 100; ++trial) {
        int rows = 1 + int(uniform_below(g, 10));
        int cols = 1 + int(uniform_below(g, 16));
        GF2Matrix m = GF2Matrix::random(rows, cols, g);
        auto col = column_images(m);
        GF2Vector v = GF2Vector::random(cols, g);
        CHECK(apply_column_images(col, v.to_index()) == m.mul(v).to_index());
    }
}

TEST_CASE("rank and nullspace") {
    std::mt19937_64 g(7);
    for (int trial = 0; trial < 100; ++trial) {
        int rows = 1 + int(uniform_below(g, 10));
        int cols = rows + int(uniform_below(g, 10));
        GF2Matrix m = GF2Matrix::random(rows, cols, g);
        GF2Matrix ns = m.nullspace();
        CHECK(m.rank() + ns.rows() == cols);
        CHECK(ns.rank() == ns.rows());
        for (int r = 0; r < ns.rows(); ++r) {
            GF2Vector x = ns.row(r);
            CHECK(m.mul(x).is_zero());
        }
    }
}

TEST_CASE("stacked appends one row") {
    GF2Matrix m = GF2Matrix::identity(3);
    GF2Matrix s = m.stacked(GF2Vector::from_string("111"));
    CHECK(s.rows() == 4);
    CHECK(s.row(3) == GF2Vector::from_string("111"));
    CHECK(s.row(1) == m.row(1));
}

TEST_CASE("xor and dot products") {
    GF2Vector a = GF2Vector::from_string("1100");
    GF2Vector b = GF2Vector::from_string("0110");
    CHECK((a ^ b) == GF2Vector::from_string("1010"));
    CHECK(a.dot(b) == true);   // one shared coordinate
    CHECK(a.dot(a) == false);  // even weight
}

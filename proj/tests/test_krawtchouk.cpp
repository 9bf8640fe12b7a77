#include <doctest.h>

#include <bit>
#include <cmath>

#include "smoothlab/krawtchouk.hpp"
#include "smoothlab/pmf.hpp"

using namespace smoothlab;

TEST_CASE("krawtchouk point values") {
    CHECK(krawtchouk(4, 2, 0) == 6);   // K_w(0) = C(n, w)
    CHECK(krawtchouk(4, 1, 3) == -2);  // K_1(i) = n - 2i
    CHECK(krawtchouk(4, 2, 1) == 0);
    CHECK(krawtchouk(4, 2, 2) == -2);
    for (int n = 1; n <= 12; ++n) {
        BinomialTable binom(n);
        for (int w = 0; w <= n; ++w) CHECK(krawtchouk(n, w, 0) == binom(n, w));
        for (int i = 0; i <= n; ++i) CHECK(krawtchouk(n, 1, i) == n - 2 * i);
    }
    CHECK_THROWS_AS(krawtchouk(4, 5, 0), std::out_of_range);
}

TEST_CASE("reflection identity K_w(i) = (-1)^w K_w(n-i), exact up to n = 20") {
    for (int n = 1; n <= 20; ++n) {
        KrawtchoukTable kt(n);
        for (int w = 0; w <= n; ++w) {
            for (int i = 0; i <= n; ++i) {
                BigInt lhs = kt.value(w, i);
                BigInt rhs = kt.value(w, n - i);
                if (w & 1) rhs = -rhs;
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("sphere indicator transform equals the Krawtchouk polynomial exactly") {
    // 2^n * FT(1_{S(0,w)}) = K_w(|x|); the unnormalized butterfly on 0/1
    // input is exact integer arithmetic in doubles.
    for (int n = 1; n <= 12; ++n) {
        size_t size = size_t{1} << n;
        KrawtchoukTable kt(n);
        for (int w = 0; w <= n; ++w) {
            std::vector<double> f(size, 0.0);
            for (size_t x = 0; x < size; ++x)
                if (std::popcount(x) == w) f[x] = 1.0;
            fwht_butterfly(std::span<double>(f));
            for (size_t x = 0; x < size; ++x) {
                BigInt expect = kt.value(w, std::popcount(x));
                CHECK(BigInt(int64_t(std::llround(f[x]))) == expect);
            }
        }
    }
}

TEST_CASE("ball volume values") {
    CHECK(ball_volume(4, 1) == 5);
    CHECK(ball_volume(10, 2) == 56);
    for (int n = 1; n <= 20; ++n) CHECK(ball_volume(n, n) == BigInt(1) << n);
    CHECK_THROWS_AS(ball_volume(4, 5), std::out_of_range);
}

TEST_CASE("kbound ratio is exactly 1 at w = 0") {
    for (int n : {4, 9, 17}) {
        KboundReport rep = kbound_check(n, {1.0, 0.01});  // only w = 0 in range
        CHECK(rep.pass);
        CHECK(rep.worst_ratio == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("kbound at n = 4 with c = 0.16 only sees w = 0") {
    KrawtchoukBoundParams p = kbound_fit(4, 0.16);
    CHECK(p.C == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(kbound_check(4, p).pass);
}

TEST_CASE("kbound fit produces a certified constant") {
    for (int n : {8, 12, 16, 20, 40}) {
        KrawtchoukBoundParams p = kbound_fit(n, 0.16);
        CHECK(p.C >= 1.0);
        KboundReport rep = kbound_check(n, p);
        CHECK(rep.pass);
        // the fit is tight on the 1e-6 grid whenever it exceeds 1
        if (p.C > 1.0 + 1e-9) {
            KrawtchoukBoundParams below{p.C - 2e-6, p.c};
            CHECK_FALSE(kbound_check(n, below).pass);
        }
    }
}

TEST_CASE("kbound check flags a violating constant") {
    // K_1(1)/C(n,1) = 1 - 2/n meets the bound with equality, so any C < 1
    // must fail once w = 1 is in range.
    KboundReport rep = kbound_check(10, {0.9, 0.16});
    CHECK_FALSE(rep.pass);
}

TEST_CASE("binomial table bounds") {
    BinomialTable b(10);
    CHECK(b(10, 5) == 252);
    CHECK(b(10, 11) == 0);
    CHECK(b(10, -1) == 0);
    CHECK_THROWS_AS(b(11, 0), std::out_of_range);
}

#include "oracles/combinatorics.hpp"

#include <doctest.h>

TEST_CASE("multi-index sum of rising factorials") {
    for (int n = 1; n <= 4; ++n)
        for (int m = 0; m <= 6; ++m) {
            CAPTURE(n);
            CAPTURE(m);
            CHECK(oracle::multiindex_sum(n, m).holds());
        }
}

TEST_CASE("derivative along (t x, t^2 y)") {
    for (int k = 0; k <= 6; ++k)
        for (int r = 0; r <= 6; ++r)
            for (int s = 0; s <= 6; ++s) {
                CAPTURE(k);
                CAPTURE(r);
                CAPTURE(s);
                const auto id = oracle::derivative_at_zero(k, r, s);
                CHECK(id.holds());
                // only r + 2s == k survives, with value k!
                CHECK(id.lhs.is_zero() == (r + 2 * s != k));
            }
}

TEST_CASE("the identities are not vacuous") {
    // dropping the 1/alpha! weights breaks the first one
    auto id = oracle::multiindex_sum(2, 3);
    id.lhs *= sbo::Rational(2);
    CHECK_FALSE(id.holds());
}

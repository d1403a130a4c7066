#pragma once
// Deterministic random rationals for property tests.

#include "sbo/hypercomplex.hpp"

#include <random>

namespace testing {

class RationalSource {
public:
    explicit RationalSource(std::uint64_t seed) : rng_(seed) {}

    sbo::Rational next(int span = 7, int max_den = 5) {
        std::uniform_int_distribution<int> num(-span, span), den(1, max_den);
        return sbo::ratio(num(rng_), den(rng_));
    }
    sbo::HNum number(sbo::Algebra alg) {
        sbo::HNum h(alg);
        for (int e = 0; e < h.dim(); ++e) h[e] = next();
        return h;
    }
    sbo::HNum imaginary(sbo::Algebra alg) {
        sbo::HNum h = number(alg);
        h[0] = 0;
        return h;
    }
    sbo::NilPoint point(sbo::Algebra alg, int n) {
        for (;;) {
            sbo::HVec x;
            for (int r = 0; r < n; ++r) x.push_back(number(alg));
            sbo::NilPoint pt(std::move(x), imaginary(alg));
            if (!pt.is_zero()) return pt;
        }
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace testing

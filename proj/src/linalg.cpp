#include "sbo/linalg.hpp"

#include <map>

namespace sbo {

std::vector<int> rref(RMatrix& rows, int ncols) {
    std::vector<int> pivots;
    std::size_t r = 0;
    for (int c = 0; c < ncols && r < rows.size(); ++c) {
        const auto uc = static_cast<std::size_t>(c);
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][uc] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        const Rational inv = 1 / rows[r][uc];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][uc] == 0) continue;
            const Rational f = rows[i][uc];
            for (std::size_t j = uc; j < rows[i].size(); ++j)
                if (rows[r][j] != 0) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rank(RMatrix rows, int ncols) { return static_cast<int>(rref(rows, ncols).size()); }

RMatrix nullspace(RMatrix rows, int ncols) {
    const auto pivots = rref(rows, ncols);
    std::vector<bool> is_pivot(static_cast<std::size_t>(ncols), false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    RMatrix basis;
    for (int free = 0; free < ncols; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        std::vector<Rational> v(static_cast<std::size_t>(ncols), Rational(0));
        v[static_cast<std::size_t>(free)] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<std::size_t>(pivots[r])] = -rows[r][static_cast<std::size_t>(free)];
        basis.push_back(std::move(v));
    }
    return basis;
}

CoefficientMatrix coefficient_matrix(const std::vector<Poly>& polys) {
    std::map<Exponent, std::size_t, GradedLex> index;
    for (const auto& f : polys)
        for (const auto& [e, c] : f.terms()) index.emplace(e, 0);
    CoefficientMatrix out;
    std::size_t col = 0;
    for (auto& [e, i] : index) {
        i = col++;
        out.monomials.push_back(e);
    }
    for (const auto& f : polys) {
        std::vector<Rational> row(col, Rational(0));
        for (const auto& [e, c] : f.terms()) row[index.at(e)] = c;
        out.rows.push_back(std::move(row));
    }
    return out;
}

int poly_rank(const std::vector<Poly>& polys) {
    auto cm = coefficient_matrix(polys);
    return rank(std::move(cm.rows), static_cast<int>(cm.monomials.size()));
}

}  // namespace sbo

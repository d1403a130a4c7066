#pragma once
// Exact Gaussian elimination over Q, and the bridge from lists of Poly to
// coefficient matrices.

#include "sbo/poly.hpp"
#include "sbo/rational.hpp"

#include <vector>

namespace sbo {

using RMatrix = std::vector<std::vector<Rational>>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RMatrix& rows, int ncols);
int rank(RMatrix rows, int ncols);
// Basis of {x : A x = 0}.
RMatrix nullspace(RMatrix rows, int ncols);

// Coefficient vectors of `polys` over the union of their monomials.
struct CoefficientMatrix {
    std::vector<Exponent> monomials;
    RMatrix rows;  // one row per input polynomial
};
CoefficientMatrix coefficient_matrix(const std::vector<Poly>& polys);

// Exact rank of the span of `polys`.
int poly_rank(const std::vector<Poly>& polys);

}  // namespace sbo

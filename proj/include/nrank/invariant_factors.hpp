#pragma once

#include <vector>

#include "nrank/rational_poly.hpp"

namespace nrank {

// Invariant factors f_1 | f_2 | ... | f_s of xI - A over Q[x], monic and
// nonconstant; their product is the characteristic polynomial and f_s is the
// minimal polynomial.
struct InvariantFactors {
    std::vector<RationalPoly> factors;

    const RationalPoly& minimal_poly() const { return factors.back(); }
};

InvariantFactors invariant_factors(const IntegerMatrix& A);

// Number of Jordan blocks of any root of the irreducible g: #{i : g | f_i}.
std::size_t jordan_block_count(const InvariantFactors& inv, const RationalPoly& g);

// p(A), exact.
IntegerMatrix eval_poly_at_matrix(const RationalPoly& p, const IntegerMatrix& A);

}  // namespace nrank

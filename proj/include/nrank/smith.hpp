#pragma once

#include <cstddef>
#include <vector>

#include "nrank/int_matrix.hpp"

namespace nrank {

// Row/column index sets of a minor, strictly increasing, 0-based.
struct MinorIndex {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
};

// Determinant of the selected |rows| x |cols| submatrix. The empty minor is 1.
Int minor_det(const IntegerMatrix& A, const MinorIndex& idx);

// All r x r minor determinants, (J, K) pairs in lexicographic order of S_r^d.
std::vector<Int> all_minors(const IntegerMatrix& A, std::size_t r);

// All strictly increasing r-subsets of {0, ..., d-1}, lexicographic.
std::vector<std::vector<std::size_t>> index_subsets(std::size_t d, std::size_t r);

// r-th exterior power: C(d,r) x C(d,r) matrix of r x r minors, rows and
// columns ordered lexicographically on S_r^d.
IntegerMatrix exterior_power(const IntegerMatrix& A, std::size_t r);

struct SmithNormalForm {
    std::vector<Int> diag;  // nonnegative, d_i | d_{i+1}, zeros trailing
};

SmithNormalForm smith_normal_form(const IntegerMatrix& A);

// Generator of the ideal of r x r minor determinants: d_1 * ... * d_r from
// the Smith form. 1 for r = 0; 0 when every r x r minor vanishes.
Int determinant_ideal_gen(const IntegerMatrix& A, std::size_t r);
// Same value by exhaustive minor enumeration (gcd of all r x r minors).
Int determinant_ideal_gen_minors(const IntegerMatrix& A, std::size_t r);

// Greatest r such that some r x r minor is not divisible by N.
std::size_t n_rank(const IntegerMatrix& A, const Int& N);
std::size_t n_rank_minors(const IntegerMatrix& A, const Int& N);

// True iff every (r+1) x (r+1) minor of A is divisible by N, i.e.
// n_rank(A, N) <= r. Works directly on the entries (mod N friendly).
bool n_rank_at_most(const IntegerMatrix& A, const Int& N, std::size_t r);

}  // namespace nrank

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace nrank {

using Int = mpz_class;
using Rat = mpq_class;

// Square matrix of arbitrary-precision integers. Values are immutable in
// spirit: every operation returns a fresh matrix.
class IntegerMatrix {
  public:
    IntegerMatrix() = default;
    explicit IntegerMatrix(std::size_t d) : dim_(d), e_(d * d, Int(0)) {}
    IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntegerMatrix identity(std::size_t d);
    // Block-diagonal concatenation, used to assemble Jordan-style fixtures.
    static IntegerMatrix block_diag(const std::vector<IntegerMatrix>& blocks);

    std::size_t dim() const { return dim_; }

    Int& operator()(std::size_t i, std::size_t j) { return e_[i * dim_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return e_[i * dim_ + j]; }

    bool operator==(const IntegerMatrix& o) const = default;

    IntegerMatrix operator+(const IntegerMatrix& o) const;
    IntegerMatrix operator-(const IntegerMatrix& o) const;
    IntegerMatrix operator*(const IntegerMatrix& o) const;
    IntegerMatrix operator-() const;

    bool is_zero() const;
    bool is_identity() const;
    Int trace() const;

    // Exact determinant by fraction-free (Bareiss) elimination.
    Int det() const;
    // Rank over Z (= rank over Q), by fraction-free elimination.
    std::size_t rank() const;

    IntegerMatrix pow(unsigned long k) const;

    // Entrywise reduction into [0, N).
    IntegerMatrix reduced_mod(const Int& N) const;
    // A^k mod N by square-and-multiply; k >= 1 (k = 0 gives I), N >= 2.
    IntegerMatrix pow_mod(unsigned long k, const Int& N) const;

  private:
    std::size_t dim_ = 0;
    std::vector<Int> e_;
};

// Text format: first line "d", then d whitespace-separated rows of integers.
IntegerMatrix parse_matrix(std::istream& in);
IntegerMatrix parse_matrix(const std::string& text);
std::string format_matrix(const IntegerMatrix& A);

}  // namespace nrank

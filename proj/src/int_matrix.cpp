#include "nrank/int_matrix.hpp"

#include <istream>
#include <sstream>
#include <stdexcept>

#include "nrank/errors.hpp"

namespace nrank {

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : IntegerMatrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != dim_) throw std::invalid_argument("IntegerMatrix: ragged initializer");
        std::size_t j = 0;
        for (long v : row) (*this)(i, j++) = v;
        ++i;
    }
}

IntegerMatrix IntegerMatrix::identity(std::size_t d) {
    IntegerMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::block_diag(const std::vector<IntegerMatrix>& blocks) {
    std::size_t d = 0;
    for (const auto& b : blocks) d += b.dim();
    IntegerMatrix m(d);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.dim(); ++i)
            for (std::size_t j = 0; j < b.dim(); ++j) m(off + i, off + j) = b(i, j);
        off += b.dim();
    }
    return m;
}

IntegerMatrix IntegerMatrix::operator+(const IntegerMatrix& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch");
    IntegerMatrix r(dim_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

IntegerMatrix IntegerMatrix::operator-(const IntegerMatrix& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch");
    IntegerMatrix r(dim_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

IntegerMatrix IntegerMatrix::operator-() const {
    IntegerMatrix r(dim_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
    return r;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch");
    IntegerMatrix r(dim_);
    Int acc;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t k = 0; k < dim_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                acc = a * o(k, j);
                r(i, j) += acc;
            }
        }
    return r;
}

bool IntegerMatrix::is_zero() const {
    for (const auto& v : e_)
        if (v != 0) return false;
    return true;
}

bool IntegerMatrix::is_identity() const {
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

Int IntegerMatrix::trace() const {
    Int t = 0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

namespace {

// Fraction-free elimination on a working copy. Returns the number of pivots;
// if det != nullptr, also accumulates the determinant (square case only).
std::size_t bareiss(std::vector<Int>& m, std::size_t n, Int* det) {
    Int prev(1);
    int sign = 1;
    std::size_t row = 0;
    auto at = [&](std::size_t i, std::size_t j) -> Int& { return m[i * n + j]; };
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t piv = row;
        while (piv < n && at(piv, col) == 0) ++piv;
        if (piv == n) {
            if (det) {
                *det = 0;
                return row;
            }
            continue;
        }
        if (piv != row) {
            for (std::size_t j = 0; j < n; ++j) swap(at(piv, j), at(row, j));
            sign = -sign;
        }
        for (std::size_t i = row + 1; i < n; ++i) {
            for (std::size_t j = col + 1; j < n; ++j) {
                Int t = at(i, j) * at(row, col) - at(i, col) * at(row, j);
                mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            at(i, col) = 0;
        }
        prev = at(row, col);
        ++row;
    }
    if (det) *det = (row == n) ? Int(sign * prev) : Int(0);
    return row;
}

}  // namespace

Int IntegerMatrix::det() const {
    if (dim_ == 0) return 1;
    std::vector<Int> work(e_);
    Int d;
    bareiss(work, dim_, &d);
    return d;
}

std::size_t IntegerMatrix::rank() const {
    std::vector<Int> work(e_);
    return bareiss(work, dim_, nullptr);
}

IntegerMatrix IntegerMatrix::pow(unsigned long k) const {
    IntegerMatrix base = *this, acc = identity(dim_);
    while (k > 0) {
        if (k & 1) acc = acc * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return acc;
}

IntegerMatrix IntegerMatrix::reduced_mod(const Int& N) const {
    if (N < 2) throw std::invalid_argument("modulus must be >= 2");
    IntegerMatrix r(dim_);
    for (std::size_t i = 0; i < e_.size(); ++i) mpz_mod(r.e_[i].get_mpz_t(), e_[i].get_mpz_t(), N.get_mpz_t());
    return r;
}

IntegerMatrix IntegerMatrix::pow_mod(unsigned long k, const Int& N) const {
    if (N < 2) throw std::invalid_argument("modulus must be >= 2");
    IntegerMatrix base = reduced_mod(N), acc = identity(dim_).reduced_mod(N);
    while (k > 0) {
        if (k & 1) acc = (acc * base).reduced_mod(N);
        k >>= 1;
        if (k) base = (base * base).reduced_mod(N);
    }
    return acc;
}

IntegerMatrix parse_matrix(std::istream& in) {
    long d = 0;
    if (!(in >> d) || d < 1) throw ParseError("matrix file: expected positive dimension on first line");
    if (d > 64) throw ParseError("matrix file: dimension too large (max 64)");
    IntegerMatrix m(static_cast<std::size_t>(d));
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) {
            std::string tok;
            if (!(in >> tok)) throw ParseError("matrix file: not enough entries");
            try {
                m(i, j) = Int(tok);
            } catch (const std::invalid_argument&) {
                throw ParseError("matrix file: bad integer '" + tok + "'");
            }
        }
    return m;
}

IntegerMatrix parse_matrix(const std::string& text) {
    std::istringstream ss(text);
    return parse_matrix(ss);
}

std::string format_matrix(const IntegerMatrix& A) {
    std::ostringstream out;
    out << A.dim() << "\n";
    for (std::size_t i = 0; i < A.dim(); ++i) {
        for (std::size_t j = 0; j < A.dim(); ++j) {
            if (j) out << ' ';
            out << A(i, j).get_str();
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace nrank

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nrank/int_matrix.hpp"

namespace nrank {

// Univariate polynomial over Q, coefficients ascending, no trailing zeros.
class RationalPoly {
  public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rat> coeffs);
    RationalPoly(std::initializer_list<long> ints);

    static RationalPoly zero() { return RationalPoly(); }
    static RationalPoly constant(const Rat& c);
    static RationalPoly x_power(std::size_t n);  // x^n
    // a + b x
    static RationalPoly linear(const Rat& a, const Rat& b);

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& operator[](std::size_t i) const;
    const Rat& leading() const;
    bool is_monic() const;
    bool has_integer_coeffs() const;

    bool operator==(const RationalPoly& o) const = default;

    RationalPoly operator+(const RationalPoly& o) const;
    RationalPoly operator-(const RationalPoly& o) const;
    RationalPoly operator*(const RationalPoly& o) const;
    RationalPoly operator*(const Rat& s) const;
    RationalPoly operator-() const;

    // Euclidean division; remainder has degree < deg(divisor).
    std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& divisor) const;
    // Exact division; throws std::invalid_argument on nonzero remainder.
    RationalPoly divexact(const RationalPoly& divisor) const;

    RationalPoly derivative() const;
    RationalPoly monic() const;
    RationalPoly pow(unsigned long k) const;
    Rat eval(const Rat& x) const;
    // p(x^k)
    RationalPoly compose_x_power(unsigned long k) const;
    // x^deg * p(1/x), scaled monic: the minimal polynomial of inverse roots.
    RationalPoly reversed_monic() const;

    // Primitive integer form: returns (content, primitive Z[x] poly) with
    // poly == content * primitive and primitive having gcd 1, positive lead.
    std::pair<Rat, std::vector<Int>> primitive_integer() const;

  private:
    void normalize();
    std::vector<Rat> c_;
};

RationalPoly gcd(const RationalPoly& a, const RationalPoly& b);  // monic gcd
bool is_squarefree(const RationalPoly& p);

// Sylvester-matrix resultant, exact. Throws std::invalid_argument on zero input.
Rat resultant(const RationalPoly& f, const RationalPoly& g);

// det(xI - A), monic with integer coefficients (Faddeev-LeVerrier).
RationalPoly char_poly(const IntegerMatrix& A);

// Power sums p_1..p_k of the roots of a monic polynomial (Newton identities).
std::vector<Rat> root_power_sums(const RationalPoly& monic, std::size_t k);
// Monic polynomial of degree n with prescribed root power sums p_1..p_n.
RationalPoly poly_from_power_sums(const std::vector<Rat>& sums);
// Monic polynomial whose roots are the t-th powers of the roots of f.
RationalPoly power_roots_poly(const RationalPoly& monic, unsigned long t);
// Monic polynomial whose roots are all pairwise products of roots of f and g.
RationalPoly product_roots_poly(const RationalPoly& f, const RationalPoly& g);

// Text format: comma-separated ascending coefficients, exact rationals.
RationalPoly parse_poly(const std::string& text);
std::string format_poly(const RationalPoly& p);
// Human-readable "x^2 - 5x + 6" rendering for reports.
std::string pretty_poly(const RationalPoly& p);

}  // namespace nrank

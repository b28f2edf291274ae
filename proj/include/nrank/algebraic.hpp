#pragma once

#include <optional>
#include <vector>

#include "nrank/interval.hpp"
#include "nrank/poly_factor.hpp"
#include "nrank/rational_poly.hpp"

namespace nrank {

// An algebraic number: irreducible monic integer minimal polynomial plus an
// isolating rectangle with exact rational endpoints. Immutable; refinement
// returns new boxes.
class AlgebraicNumber {
  public:
    // Verifies monicity, integrality, irreducibility, and that the box
    // isolates exactly one root.
    AlgebraicNumber(RationalPoly minpoly, BoxC box);

    static AlgebraicNumber from_integer(const Int& n);
    // One AlgebraicNumber per complex root of the given irreducible monic
    // integer polynomial, in isolate_roots order.
    static std::vector<AlgebraicNumber> conjugates_of(const RationalPoly& minpoly);

    const RationalPoly& minpoly() const { return minpoly_; }
    const BoxC& box() const { return box_; }
    long degree() const { return minpoly_.degree(); }

    bool is_rational() const { return degree() == 1; }
    // Degree-1 minimal polynomials are x - n: the value is an integer.
    Int integer_value() const;

    std::optional<unsigned long> root_of_unity_order() const { return unity_order_; }
    bool is_zero() const;

    // Isolating box narrowed below 2^-bits on both sides.
    BoxC refined_box(unsigned bits) const;

  private:
    RationalPoly minpoly_;
    BoxC box_;
    std::optional<unsigned long> unity_order_;
};

struct HeightInterval {
    QInterval value;
    bool exact_zero = false;  // Kronecker: roots of unity and 0, +-1
};

// Absolute logarithmic Weil height via the Mahler measure of the minimal
// polynomial: h = (1/deg) * sum over conjugates of log+ |root| (the leading
// coefficient is 1). Interval width < 2^(1 - precision/2).
HeightInterval weil_height(const AlgebraicNumber& a, unsigned precision_bits);

// h = scale * log(base) with integer base >= 2, available for rational
// integers and for complex quadratic integers (|root|^2 = constant term).
// Ratios of such heights are decidable exactly.
struct ExactHeightForm {
    Rat scale;
    Int base;
};
std::optional<ExactHeightForm> exact_height_form(const AlgebraicNumber& a);

}  // namespace nrank

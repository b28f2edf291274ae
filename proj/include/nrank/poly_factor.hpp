#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nrank/rational_poly.hpp"

namespace nrank {

// Complete factorization over Q: unit * prod factors[i]^mult[i] == input.
// Factors are irreducible, monic, pairwise distinct, deterministically ordered.
struct FactoredPoly {
    Rat unit;
    std::vector<std::pair<RationalPoly, unsigned>> factors;

    RationalPoly expand() const;
};

inline constexpr unsigned kDefaultFactorDegreeCap = 24;

// Squarefree split (Yun) + mod-p factorization (Cantor-Zassenhaus) + Hensel
// lifting + subset recombination. Throws CapExceeded above the degree cap.
FactoredPoly factor_over_Q(const RationalPoly& p, unsigned degree_cap = kDefaultFactorDegreeCap);

// n-th cyclotomic polynomial, memoized.
RationalPoly cyclotomic_poly(unsigned long n);

// If f equals some cyclotomic polynomial, return its order n. The search
// covers all n with phi(n) = deg f; phi(n) >= sqrt(n/2) bounds n by
// 2 deg^2 + 1. Input must be monic with integer coefficients.
std::optional<unsigned long> is_cyclotomic(const RationalPoly& f);

unsigned long euler_phi(unsigned long n);

}  // namespace nrank

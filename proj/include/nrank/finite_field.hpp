#pragma once

#include <optional>
#include <vector>

#include "nrank/fp_poly.hpp"
#include "nrank/int_matrix.hpp"

namespace nrank {

bool is_prime(unsigned long n);

// F_{p^k} represented as F_p[x] modulo a deterministically chosen monic
// irreducible polynomial of degree k (lexicographically first coefficient
// vector). Elements are coefficient vectors of length <= k.
class FiniteField {
  public:
    using Elem = fp::Poly;

    FiniteField(unsigned long p, unsigned k);

    unsigned long p() const { return p_; }
    unsigned k() const { return k_; }
    const Int& q() const { return q_; }
    const fp::Poly& modulus() const { return modulus_; }

    Elem zero() const { return {}; }
    Elem one() const { return {1}; }
    Elem from_int(const Int& v) const;

    bool is_zero(const Elem& a) const { return a.empty(); }
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;
    Elem pow(const Elem& a, const Int& e) const;

    // Bijection {0, ..., q-1} <-> elements, base-p digit order.
    Elem element_from_index(const Int& idx) const;
    Int index_of(const Elem& a) const;

    // Euler criterion: +1 square, -1 non-square, 0 zero.
    int chi(const Elem& a) const;
    // Tonelli-Shanks square root; nullopt for non-squares.
    std::optional<Elem> sqrt(const Elem& a) const;

    bool operator==(const FiniteField& o) const {
        return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
    }

  private:
    unsigned long p_;
    unsigned k_;
    Int q_;
    fp::Poly modulus_;
};

}  // namespace nrank

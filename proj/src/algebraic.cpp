#include "nrank/algebraic.hpp"

#include <stdexcept>

#include "nrank/errors.hpp"
#include "nrank/roots.hpp"

namespace nrank {

AlgebraicNumber::AlgebraicNumber(RationalPoly minpoly, BoxC box)
    : minpoly_(std::move(minpoly)), box_(std::move(box)) {
    if (minpoly_.degree() < 1 || !minpoly_.is_monic() || !minpoly_.has_integer_coeffs())
        throw std::invalid_argument("AlgebraicNumber: minimal polynomial must be monic with integer coefficients");
    if (minpoly_.degree() == 1) {
        Rat root = -minpoly_[0];
        if (!box_.re.contains(root) || !box_.im.contains_zero())
            throw std::invalid_argument("AlgebraicNumber: box does not contain the rational root");
        box_ = box_point(root, Rat(0));
    } else {
        auto fac = factor_over_Q(minpoly_);
        if (fac.factors.size() != 1 || fac.factors[0].second != 1)
            throw std::invalid_argument("AlgebraicNumber: minimal polynomial is reducible");
        auto count = count_roots_in_box(minpoly_, box_);
        if (!count || *count != 1) throw std::invalid_argument("AlgebraicNumber: box does not isolate one root");
    }
    unity_order_ = is_cyclotomic(minpoly_);
}

AlgebraicNumber AlgebraicNumber::from_integer(const Int& n) {
    RationalPoly p(std::vector<Rat>{Rat(-n), Rat(1)});
    return AlgebraicNumber(std::move(p), box_point(Rat(n), Rat(0)));
}

std::vector<AlgebraicNumber> AlgebraicNumber::conjugates_of(const RationalPoly& minpoly) {
    std::vector<AlgebraicNumber> out;
    for (auto& b : isolate_roots(minpoly)) out.emplace_back(minpoly, b);
    return out;
}

Int AlgebraicNumber::integer_value() const {
    if (!is_rational()) throw std::invalid_argument("integer_value: not rational");
    Rat v = -minpoly_[0];
    return v.get_num();
}

bool AlgebraicNumber::is_zero() const { return is_rational() && minpoly_[0] == 0; }

BoxC AlgebraicNumber::refined_box(unsigned bits) const {
    if (is_rational()) return box_;
    return refine_root_box(minpoly_, box_, bits);
}

HeightInterval weil_height(const AlgebraicNumber& a, unsigned precision_bits) {
    if (precision_bits < 32) precision_bits = 32;
    HeightInterval out;
    if (a.root_of_unity_order() || a.is_zero()) {
        out.exact_zero = true;
        out.value = QInterval(Rat(0));
        return out;
    }
    if (a.is_rational()) {
        Int n = abs(a.integer_value());
        if (n <= 1) {  // 0 and +-1 are covered above; keep the guard anyway
            out.exact_zero = true;
            out.value = QInterval(Rat(0));
            return out;
        }
        out.value = log_interval(QInterval(Rat(n)), precision_bits);
        return out;
    }

    // h = (1/deg) sum log+ |root_i|, the minimal polynomial being monic.
    const RationalPoly& f = a.minpoly();
    const unsigned deg = static_cast<unsigned>(f.degree());
    Rat target(1);
    mpz_mul_2exp(target.get_den_mpz_t(), target.get_den_mpz_t(), precision_bits / 2);
    target.canonicalize();
    target *= 2;  // width < 2^(1 - precision/2)

    auto boxes = isolate_roots(f);
    unsigned bits = precision_bits / 2 + 16;
    for (int rounds = 0; rounds < 24; ++rounds, bits *= 2) {
        QInterval total(Rat(0));
        for (auto& b : boxes) {
            BoxC rb = refine_root_box(f, b, bits);
            QInterval n2 = rb.norm_sq();
            if (n2.hi <= 1) continue;  // log+ contributes zero
            Rat lo1 = n2.lo < 1 ? Rat(1) : n2.lo;
            QInterval lg = log_interval(QInterval(lo1, n2.hi), bits);
            lg = lg * QInterval(Rat(1, 2));
            if (n2.lo < 1) lg.lo = 0;  // straddles the unit circle
            total = total + lg;
        }
        total = total * QInterval(Rat(1, static_cast<unsigned long>(deg)));
        if (total.width() < target) {
            out.value = total;
            return out;
        }
    }
    throw PrecisionFailure("weil_height: interval did not converge");
}

std::optional<ExactHeightForm> exact_height_form(const AlgebraicNumber& a) {
    if (a.root_of_unity_order() || a.is_zero()) return std::nullopt;
    if (a.is_rational()) {
        Int n = abs(a.integer_value());
        if (n >= 2) return ExactHeightForm{Rat(1), n};
        return std::nullopt;
    }
    if (a.degree() == 2) {
        // x^2 + b x + c with negative discriminant: both roots have |.|^2 = c
        const RationalPoly& f = a.minpoly();
        Rat disc = f[1] * f[1] - 4 * f[0];
        if (disc < 0 && f[0] >= 2) return ExactHeightForm{Rat(1, 2), f[0].get_num()};
    }
    return std::nullopt;
}

}  // namespace nrank

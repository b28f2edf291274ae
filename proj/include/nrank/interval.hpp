#pragma once

#include <optional>

#include "nrank/int_matrix.hpp"

namespace nrank {

// Closed interval with exact rational endpoints. All operations are exact;
// there is no rounding anywhere except the explicit dyadic coarsening.
struct QInterval {
    Rat lo, hi;

    QInterval() : lo(0), hi(0) {}
    QInterval(Rat point) : lo(point), hi(point) {}
    QInterval(Rat l, Rat h);

    static QInterval hull(const Rat& a, const Rat& b);

    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool is_point() const { return lo == hi; }
    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }

    QInterval operator+(const QInterval& o) const;
    QInterval operator-(const QInterval& o) const;
    QInterval operator*(const QInterval& o) const;
    QInterval operator-() const;
    QInterval square() const;  // tight: nonnegative
    // 1/x; requires the interval to exclude zero.
    std::optional<QInterval> reciprocal() const;

    bool intersects(const QInterval& o) const { return !(hi < o.lo || o.hi < lo); }
    std::optional<QInterval> intersect(const QInterval& o) const;
};

// Coarsen endpoints outward onto the dyadic grid of step 2^-bits. Keeps the
// enclosure valid while stopping denominator growth.
QInterval round_outward(const QInterval& x, unsigned bits);

// Certified enclosure of log(x) computed with directed MPFR rounding.
// Requires x.lo > 0.
QInterval log_interval(const QInterval& x, unsigned prec_bits);

double to_double(const Rat& x);

// Axis-aligned complex rectangle.
struct BoxC {
    QInterval re, im;

    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    Rat max_width() const { return std::max(re.width(), im.width()); }

    BoxC operator+(const BoxC& o) const { return {re + o.re, im + o.im}; }
    BoxC operator-(const BoxC& o) const { return {re - o.re, im - o.im}; }
    BoxC operator*(const BoxC& o) const;
    // |z|^2 enclosure
    QInterval norm_sq() const { return re.square() + im.square(); }
    // z / o via the conjugate; requires o's norm to exclude zero.
    std::optional<BoxC> divide(const BoxC& o) const;

    bool intersects(const BoxC& o) const { return re.intersects(o.re) && im.intersects(o.im); }
    std::optional<BoxC> intersect(const BoxC& o) const;
};

BoxC box_point(const Rat& re, const Rat& im);
BoxC round_outward(const BoxC& x, unsigned bits);

}  // namespace nrank

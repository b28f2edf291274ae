#include "nrank/interval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>

namespace nrank {

QInterval::QInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::invalid_argument("QInterval: lo > hi");
}

QInterval QInterval::hull(const Rat& a, const Rat& b) {
    return a <= b ? QInterval(a, b) : QInterval(b, a);
}

QInterval QInterval::operator+(const QInterval& o) const { return {lo + o.lo, hi + o.hi}; }
QInterval QInterval::operator-(const QInterval& o) const { return {lo - o.hi, hi - o.lo}; }
QInterval QInterval::operator-() const { return {-hi, -lo}; }

QInterval QInterval::operator*(const QInterval& o) const {
    Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return {std::min(std::min(a, b), std::min(c, d)), std::max(std::max(a, b), std::max(c, d))};
}

QInterval QInterval::square() const {
    Rat a = lo * lo, b = hi * hi;
    if (contains_zero()) return {Rat(0), std::max(a, b)};
    return {std::min(a, b), std::max(a, b)};
}

std::optional<QInterval> QInterval::reciprocal() const {
    if (contains_zero()) return std::nullopt;
    return QInterval{1 / hi, 1 / lo};
}

std::optional<QInterval> QInterval::intersect(const QInterval& o) const {
    Rat l = std::max(lo, o.lo), h = std::min(hi, o.hi);
    if (l > h) return std::nullopt;
    return QInterval{l, h};
}

namespace {

Rat dyadic_floor(const Rat& x, unsigned bits) {
    // floor(x * 2^bits) / 2^bits
    Int num = x.get_num();
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), bits);
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
    Rat r(q);
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), bits);
    r.canonicalize();
    return r;
}

Rat dyadic_ceil(const Rat& x, unsigned bits) { return -dyadic_floor(-x, bits); }

}  // namespace

QInterval round_outward(const QInterval& x, unsigned bits) {
    return {dyadic_floor(x.lo, bits), dyadic_ceil(x.hi, bits)};
}

QInterval log_interval(const QInterval& x, unsigned prec_bits) {
    if (x.lo <= 0) throw std::invalid_argument("log_interval: positive interval required");
    mpfr_t v, out;
    mpfr_init2(v, prec_bits + 8);
    mpfr_init2(out, prec_bits + 8);

    auto bound = [&](const Rat& q, mpfr_rnd_t rnd) {
        mpfr_set_q(v, q.get_mpq_t(), rnd);
        mpfr_log(out, v, rnd);
        mpz_class mant;
        mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), out);
        Rat r(mant);
        if (e >= 0) {
            mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
        } else {
            mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
        }
        r.canonicalize();
        return r;
    };

    Rat lo = bound(x.lo, MPFR_RNDD);
    Rat hi = bound(x.hi, MPFR_RNDU);
    mpfr_clear(v);
    mpfr_clear(out);
    return {lo, hi};
}

double to_double(const Rat& x) { return x.get_d(); }

BoxC BoxC::operator*(const BoxC& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
}

std::optional<BoxC> BoxC::divide(const BoxC& o) const {
    QInterval n = o.norm_sq();
    auto ninv = n.reciprocal();
    if (!ninv) return std::nullopt;
    BoxC conj{o.re, -o.im};
    BoxC num = *this * conj;
    return BoxC{num.re * *ninv, num.im * *ninv};
}

std::optional<BoxC> BoxC::intersect(const BoxC& o) const {
    auto r = re.intersect(o.re);
    auto i = im.intersect(o.im);
    if (!r || !i) return std::nullopt;
    return BoxC{*r, *i};
}

BoxC box_point(const Rat& re, const Rat& im) { return {QInterval(re), QInterval(im)}; }

BoxC round_outward(const BoxC& x, unsigned bits) {
    return {round_outward(x.re, bits), round_outward(x.im, bits)};
}

}  // namespace nrank

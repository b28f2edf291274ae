#include "nrank/finite_field.hpp"

#include <stdexcept>

#include "nrank/errors.hpp"

namespace nrank {

bool is_prime(unsigned long n) {
    if (n < 2) return false;
    Int z(n);
    return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

namespace {

// Rabin test: f (monic, degree k) is irreducible over F_p iff
// x^(p^k) = x mod f and gcd(x^(p^(k/t)) - x, f) = 1 for every prime t | k.
bool is_irreducible(const fp::Poly& f, unsigned long p, unsigned k) {
    const fp::Poly x{0, 1};
    Int pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
    if (fp::sub(fp::powmod(x, pk, f, static_cast<long>(p)), x, static_cast<long>(p)) != fp::Poly{})
        return false;
    unsigned rest = k;
    for (unsigned t = 2; t <= rest; ++t) {
        if (rest % t) continue;
        while (rest % t == 0) rest /= t;
        Int e;
        mpz_ui_pow_ui(e.get_mpz_t(), p, k / t);
        auto g = fp::gcd(f, fp::sub(fp::powmod(x, e, f, static_cast<long>(p)), x, static_cast<long>(p)),
                         static_cast<long>(p));
        if (g.size() != 1) return false;
    }
    return true;
}

fp::Poly find_modulus(unsigned long p, unsigned k) {
    if (k == 1) return {0, 1};  // never used for reduction
    // lexicographically first (c_0, c_1, ...) giving an irreducible polynomial
    Int total;
    mpz_ui_pow_ui(total.get_mpz_t(), p, k);
    for (Int idx(0); idx < total; ++idx) {
        fp::Poly f(k + 1, 0);
        Int rest = idx;
        for (unsigned i = 0; i < k; ++i) {
            Int digit = rest % static_cast<unsigned long>(p);
            f[i] = static_cast<long>(digit.get_ui());
            rest /= static_cast<unsigned long>(p);
        }
        f[k] = 1;
        if (f[0] == 0) continue;  // reducible: x divides
        if (is_irreducible(f, p, k)) return f;
    }
    throw std::logic_error("find_modulus: no irreducible polynomial found");
}

}  // namespace

FiniteField::FiniteField(unsigned long p, unsigned k) : p_(p), k_(k) {
    if (!is_prime(p)) throw std::invalid_argument("FiniteField: p must be prime");
    if (k < 1) throw std::invalid_argument("FiniteField: k must be >= 1");
    if (p > (1ul << 25)) throw CapExceeded("FiniteField: characteristic too large for word arithmetic");
    mpz_ui_pow_ui(q_.get_mpz_t(), p, k);
    modulus_ = find_modulus(p, k);
}

FiniteField::Elem FiniteField::from_int(const Int& v) const {
    Int r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), Int(p_).get_mpz_t());
    if (r == 0) return {};
    return {static_cast<long>(r.get_ui())};
}

FiniteField::Elem FiniteField::add(const Elem& a, const Elem& b) const {
    Elem r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % static_cast<long>(p_);
    fp::trim(r);
    return r;
}

FiniteField::Elem FiniteField::sub(const Elem& a, const Elem& b) const {
    return fp::sub(a, b, static_cast<long>(p_));
}

FiniteField::Elem FiniteField::neg(const Elem& a) const { return fp::sub({}, a, static_cast<long>(p_)); }

FiniteField::Elem FiniteField::mul(const Elem& a, const Elem& b) const {
    auto r = fp::mul(a, b, static_cast<long>(p_));
    if (k_ == 1 || r.size() <= k_) return r;
    return fp::mod(r, modulus_, static_cast<long>(p_));
}

FiniteField::Elem FiniteField::inv(const Elem& a) const {
    if (a.empty()) throw std::invalid_argument("FiniteField::inv: zero");
    if (k_ == 1 || a.size() == 1) return {fp::inv_mod(a[0], static_cast<long>(p_))};
    auto [s, t] = fp::bezout(a, modulus_, static_cast<long>(p_));
    (void)t;
    return fp::mod(s, modulus_, static_cast<long>(p_));
}

FiniteField::Elem FiniteField::pow(const Elem& a, const Int& e) const {
    if (e < 0) return pow(inv(a), -e);
    if (k_ == 1) {
        if (a.empty()) return e == 0 ? one() : zero();
        Int base(a[0]), r;
        mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), Int(p_).get_mpz_t());
        return r == 0 ? Elem{} : Elem{static_cast<long>(r.get_ui())};
    }
    return fp::powmod(a, e, modulus_, static_cast<long>(p_));
}

FiniteField::Elem FiniteField::element_from_index(const Int& idx) const {
    if (idx < 0 || idx >= q_) throw std::out_of_range("element_from_index");
    Elem f;
    Int rest = idx;
    for (unsigned i = 0; i < k_ && rest != 0; ++i) {
        Int digit = rest % p_;
        f.push_back(static_cast<long>(digit.get_ui()));
        rest /= p_;
    }
    while (f.size() < k_) f.push_back(0);
    fp::trim(f);
    return f;
}

Int FiniteField::index_of(const Elem& a) const {
    Int idx(0), scale(1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        idx += scale * a[i];
        scale *= p_;
    }
    return idx;
}

int FiniteField::chi(const Elem& a) const {
    if (a.empty()) return 0;
    Elem r = pow(a, (q_ - 1) / 2);
    if (r == one()) return 1;
    return -1;
}

std::optional<FiniteField::Elem> FiniteField::sqrt(const Elem& a) const {
    if (a.empty()) return Elem{};
    if (chi(a) != 1) return std::nullopt;
    if (q_ % 4 == 3) {
        Elem r = pow(a, (q_ + 1) / 4);
        return r;
    }
    // Tonelli-Shanks: q - 1 = 2^s * t with t odd
    Int t = q_ - 1;
    unsigned long s = 0;
    while (t % 2 == 0) {
        t /= 2;
        ++s;
    }
    // deterministic non-residue search in index order
    Elem z;
    for (Int i(2); i < q_; ++i) {
        Elem cand = element_from_index(i);
        if (chi(cand) == -1) {
            z = cand;
            break;
        }
    }
    Elem c = pow(z, t);
    Elem x = pow(a, (t + 1) / 2);
    Elem w = pow(a, t);
    unsigned long m = s;
    while (!(w == one())) {
        unsigned long i = 0;
        Elem probe = w;
        while (!(probe == one())) {
            probe = mul(probe, probe);
            ++i;
            if (i == m) return std::nullopt;  // not a square (cannot happen after chi)
        }
        Elem b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) b = mul(b, b);
        m = i;
        c = mul(b, b);
        w = mul(w, c);
        x = mul(x, b);
    }
    return x;
}

}  // namespace nrank

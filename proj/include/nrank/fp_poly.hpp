#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <utility>
#include <vector>

// Polynomial arithmetic over F_p with word-size p (p^2 and degree * p^2 must
// fit in long). Shared by the factorization engine and the finite fields.

namespace nrank::fp {

using Poly = std::vector<long>;  // ascending coefficients in [0, p)

inline long inv_mod(long a, long p) {
    long t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        long q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    if (t < 0) t += p;
    return t;
}

inline void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b, long p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
}

inline Poly sub(const Poly& a, const Poly& b, long p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = ((r[i] - b[i]) % p + p) % p;
    trim(r);
    return r;
}

inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, long p) {
    Poly rem = a, quot;
    trim(rem);
    if (b.empty()) throw std::invalid_argument("fp: division by zero");
    const long binv = inv_mod(b.back(), p);
    if (rem.size() >= b.size()) quot.assign(rem.size() - b.size() + 1, 0);
    while (rem.size() >= b.size()) {
        long c = rem.back() * binv % p;
        std::size_t shift = rem.size() - b.size();
        quot[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            rem[shift + i] = ((rem[shift + i] - c * b[i]) % p + p) % p;
        trim(rem);
    }
    trim(quot);
    return {quot, rem};
}

inline Poly mod(const Poly& a, const Poly& b, long p) { return divmod(a, b, p).second; }

inline Poly monic(Poly f, long p) {
    trim(f);
    if (!f.empty() && f.back() != 1) {
        long inv = inv_mod(f.back(), p);
        for (auto& c : f) c = c * inv % p;
    }
    return f;
}

inline Poly gcd(Poly a, Poly b, long p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(std::move(a), p);
}

inline Poly powmod(const Poly& base, const mpz_class& e, const Poly& modulus, long p) {
    Poly acc{1}, b = mod(base, modulus, p);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return acc;
    for (std::size_t i = bits; i > 0; --i) {
        acc = mod(mul(acc, acc, p), modulus, p);
        if (mpz_tstbit(e.get_mpz_t(), i - 1)) acc = mod(mul(acc, b, p), modulus, p);
    }
    return acc;
}

inline Poly derivative(const Poly& f, long p) {
    if (f.size() <= 1) return {};
    Poly r(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = f[i] * (static_cast<long>(i) % p) % p;
    trim(r);
    return r;
}

// Extended Euclid: (s, t) with s a + t b = 1 for coprime a, b.
inline std::pair<Poly, Poly> bezout(const Poly& a, const Poly& b, long p) {
    Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1, p);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = sub(s0, mul(q, s1, p), p);
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = sub(t0, mul(q, t1, p), p);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    long inv = inv_mod(r0.back(), p);
    for (auto& c : s0) c = c * inv % p;
    for (auto& c : t0) c = c * inv % p;
    return {s0, t0};
}

}  // namespace nrank::fp

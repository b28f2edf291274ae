#include "nrank/poly_factor.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "nrank/errors.hpp"
#include "nrank/fp_poly.hpp"

namespace nrank {

RationalPoly FactoredPoly::expand() const {
    RationalPoly p = RationalPoly::constant(unit);
    for (const auto& [f, m] : factors) p = p * f.pow(m);
    return p;
}

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x] comes from the shared toolkit.

namespace {

using FpPoly = fp::Poly;

const auto& fp_trim = fp::trim;
const auto& fp_mul = fp::mul;
const auto& fp_sub = fp::sub;
const auto& fp_divmod = fp::divmod;
const auto& fp_mod = fp::mod;
const auto& fp_gcd = fp::gcd;
const auto& fp_monic = fp::monic;
const auto& fp_derivative = fp::derivative;
const auto& fp_bezout = fp::bezout;

FpPoly fp_powmod(const FpPoly& base, const Int& e, const FpPoly& modulus, long p) {
    return fp::powmod(base, e, modulus, p);
}

// Distinct-degree factorization of a squarefree monic f: (product, degree).
std::vector<std::pair<FpPoly, std::size_t>> fp_ddf(FpPoly f, long p) {
    std::vector<std::pair<FpPoly, std::size_t>> out;
    FpPoly h{0, 1};  // x
    std::size_t i = 0;
    while (f.size() > 1) {
        ++i;
        if (2 * i > f.size() - 1) {
            out.emplace_back(f, f.size() - 1);
            break;
        }
        h = fp_powmod(h, Int(p), f, p);
        FpPoly hx = fp_sub(h, FpPoly{0, 1}, p);
        FpPoly g = fp_gcd(f, hx, p);
        if (g.size() > 1) {
            out.emplace_back(g, i);
            f = fp_divmod(f, g, p).first;
            h = fp_mod(h, f, p);
        }
    }
    return out;
}

// Cantor-Zassenhaus equal-degree splitting.
void fp_edf(const FpPoly& f, std::size_t d, long p, std::mt19937_64& rng, std::vector<FpPoly>& out) {
    const std::size_t n = f.size() - 1;
    if (n == d) {
        out.push_back(fp_monic(f, p));
        return;
    }
    Int pd;
    mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
    Int expo = (pd - 1) / 2;
    std::uniform_int_distribution<long> dist(0, p - 1);
    while (true) {
        FpPoly r(n);
        for (auto& c : r) c = dist(rng);
        fp_trim(r);
        if (r.size() <= 1) continue;
        FpPoly g = fp_gcd(f, r, p);
        if (g.size() > 1 && g.size() - 1 < n) {
            fp_edf(g, d, p, rng, out);
            fp_edf(fp_divmod(f, g, p).first, d, p, rng, out);
            return;
        }
        FpPoly s = fp_powmod(r, expo, f, p);
        s = fp_sub(s, FpPoly{1}, p);
        g = fp_gcd(f, s, p);
        if (g.size() > 1 && g.size() - 1 < n) {
            fp_edf(g, d, p, rng, out);
            fp_edf(fp_divmod(f, g, p).first, d, p, rng, out);
            return;
        }
    }
}

std::vector<FpPoly> fp_factor_squarefree(const FpPoly& f, long p, std::mt19937_64& rng) {
    std::vector<FpPoly> out;
    for (const auto& [g, d] : fp_ddf(fp_monic(f, p), p)) fp_edf(g, d, p, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Arithmetic in (Z/m)[x] with arbitrary-precision m, for Hensel lifting.

using ZmPoly = std::vector<Int>;

Int zm_norm(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

void zm_trim(ZmPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

ZmPoly zm_mul(const ZmPoly& a, const ZmPoly& b, const Int& m) {
    if (a.empty() || b.empty()) return {};
    ZmPoly r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    for (auto& c : r) c = zm_norm(c, m);
    zm_trim(r);
    return r;
}

ZmPoly zm_add(const ZmPoly& a, const ZmPoly& b, const Int& m) {
    ZmPoly r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = zm_norm(r[i] + b[i], m);
    zm_trim(r);
    return r;
}

ZmPoly zm_sub(const ZmPoly& a, const ZmPoly& b, const Int& m) {
    ZmPoly r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = zm_norm(r[i] - b[i], m);
    zm_trim(r);
    return r;
}

// division by a monic divisor
std::pair<ZmPoly, ZmPoly> zm_divmod(const ZmPoly& a, const ZmPoly& b, const Int& m) {
    ZmPoly rem = a, quot;
    zm_trim(rem);
    if (rem.size() >= b.size()) quot.assign(rem.size() - b.size() + 1, Int(0));
    while (rem.size() >= b.size()) {
        Int c = rem.back();
        std::size_t shift = rem.size() - b.size();
        quot[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] = zm_norm(rem[shift + i] - c * b[i], m);
        zm_trim(rem);
    }
    zm_trim(quot);
    return {quot, rem};
}

struct HenselNode {
    ZmPoly g;              // product of factors[lo..mid)
    ZmPoly h;              // product of factors[mid..hi)
    ZmPoly s, t;           // Bezout: s g + t h = 1
    std::size_t lo, mid, hi;
};

ZmPoly to_zm(const FpPoly& f) {
    ZmPoly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
    return r;
}

// One quadratic Hensel step: from mod m to mod m^2 (von zur Gathen 15.10).
void hensel_step(const ZmPoly& f, ZmPoly& g, ZmPoly& h, ZmPoly& s, ZmPoly& t, const Int& m) {
    const Int m2 = m * m;
    ZmPoly e = zm_sub(f, zm_mul(g, h, m2), m2);
    auto [q, r] = zm_divmod(zm_mul(s, e, m2), h, m2);
    ZmPoly g1 = zm_add(zm_add(g, zm_mul(t, e, m2), m2), zm_mul(q, g, m2), m2);
    ZmPoly h1 = zm_add(h, r, m2);
    ZmPoly b = zm_sub(zm_add(zm_mul(s, g1, m2), zm_mul(t, h1, m2), m2), ZmPoly{Int(1)}, m2);
    auto [c, d] = zm_divmod(zm_mul(s, b, m2), h1, m2);
    ZmPoly s1 = zm_sub(s, d, m2);
    ZmPoly t1 = zm_sub(zm_sub(t, zm_mul(t, b, m2), m2), zm_mul(c, g1, m2), m2);
    g = std::move(g1); h = std::move(h1); s = std::move(s1); t = std::move(t1);
}

// Lift the factorization f = prod factors (mod p) to mod p^(2^iters) by
// divide-and-conquer over the factor list.
void hensel_lift_tree(const ZmPoly& f, std::vector<FpPoly>& fp_factors, long p, unsigned iters,
                      std::size_t lo, std::size_t hi, const Int& target_mod, std::vector<ZmPoly>& out) {
    if (hi - lo == 1) {
        // reduce f mod target: f is already the lifted image of this factor
        out[lo] = f;
        return;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    FpPoly gp{1}, hp{1};
    for (std::size_t i = lo; i < mid; ++i) gp = fp_mul(gp, fp_factors[i], p);
    for (std::size_t i = mid; i < hi; ++i) hp = fp_mul(hp, fp_factors[i], p);
    auto [sp, tp] = fp_bezout(gp, hp, p);
    ZmPoly g = to_zm(gp), h = to_zm(hp), s = to_zm(sp), t = to_zm(tp);
    Int m(p);
    for (unsigned i = 0; i < iters; ++i) {
        hensel_step(f, g, h, s, t, m);
        m = m * m;
    }
    // g, h are now correct mod target_mod (m >= target_mod)
    for (auto& c : g) c = zm_norm(c, target_mod);
    for (auto& c : h) c = zm_norm(c, target_mod);
    zm_trim(g); zm_trim(h);
    hensel_lift_tree(g, fp_factors, p, iters, lo, mid, target_mod, out);
    hensel_lift_tree(h, fp_factors, p, iters, mid, hi, target_mod, out);
}

// Symmetric representative in (-m/2, m/2].
Int zm_symmetric(const Int& a, const Int& m) {
    Int r = zm_norm(a, m);
    if (2 * r > m) r -= m;
    return r;
}

std::vector<Int> to_symmetric(const ZmPoly& f, const Int& m) {
    std::vector<Int> r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = zm_symmetric(f[i], m);
    return r;
}

// Exact division test of monic integer polynomials; quotient if divisible.
std::optional<std::vector<Int>> z_divide_monic(const std::vector<Int>& f, const std::vector<Int>& g) {
    std::vector<Int> rem = f, quot;
    if (rem.size() < g.size()) return std::nullopt;
    quot.assign(rem.size() - g.size() + 1, Int(0));
    while (rem.size() >= g.size()) {
        Int c = rem.back();
        std::size_t shift = rem.size() - g.size();
        quot[shift] = c;
        for (std::size_t i = 0; i < g.size(); ++i) rem[shift + i] -= c * g[i];
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        if (rem.size() > shift + g.size() - 1) return std::nullopt;  // cannot happen, guard
    }
    if (!rem.empty()) return std::nullopt;
    return quot;
}

// Factor a squarefree monic integer polynomial into monic integer irreducibles.
std::vector<std::vector<Int>> factor_squarefree_monic(std::vector<Int> f, std::mt19937_64& rng) {
    std::vector<std::vector<Int>> result;
    const std::size_t n = f.size() - 1;
    if (n == 0) return result;
    if (n == 1) {
        result.push_back(f);
        return result;
    }

    // Choose a prime keeping f squarefree mod p; prefer few modular factors.
    long best_p = 0;
    std::vector<FpPoly> best_factors;
    Int pz(97);
    int tried = 0;
    while (tried < 5) {
        mpz_nextprime(pz.get_mpz_t(), pz.get_mpz_t());
        long p = static_cast<long>(pz.get_si());
        FpPoly fp(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
            Int c = zm_norm(f[i], Int(p));
            fp[i] = static_cast<long>(c.get_si());
        }
        fp_trim(fp);
        if (fp.size() != f.size()) continue;  // p divides the leading coefficient (monic: impossible)
        FpPoly d = fp_derivative(fp, p);
        if (fp_gcd(fp, d, p).size() != 1) continue;  // not squarefree mod p
        auto factors = fp_factor_squarefree(fp, p, rng);
        ++tried;
        if (best_p == 0 || factors.size() < best_factors.size()) {
            best_p = p;
            best_factors = std::move(factors);
            if (best_factors.size() == 1) break;
        }
    }
    if (best_factors.size() == 1) {
        result.push_back(f);
        return result;
    }

    // Hensel-lift to p^(2^iters) above twice the Mignotte-style bound.
    Int norm2_sq(0);
    for (const auto& c : f) norm2_sq += c * c;
    Int norm2 = sqrt(norm2_sq) + 1;
    Int bound = (norm2 + 1) * 2;
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n + 1);
    unsigned iters = 0;
    Int mod(best_p);
    while (mod <= bound) {
        mod = mod * mod;
        ++iters;
    }
    std::vector<ZmPoly> lifted(best_factors.size());
    {
        ZmPoly fz(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) fz[i] = zm_norm(f[i], mod);
        hensel_lift_tree(fz, best_factors, best_p, iters, 0, best_factors.size(), mod, lifted);
    }

    // Subset recombination with trailing-coefficient pruning.
    std::vector<std::size_t> live(lifted.size());
    for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;
    std::vector<Int> remaining = f;

    auto try_subsets = [&](std::size_t card, auto&& self, std::vector<std::size_t>& pick, std::size_t start) -> bool {
        if (pick.size() == card) {
            ZmPoly prod{Int(1)};
            for (auto idx : pick) prod = zm_mul(prod, lifted[idx], mod);
            auto cand = to_symmetric(prod, mod);
            if (!cand.empty() && remaining[0] != 0) {
                if (cand[0] == 0 || !mpz_divisible_p(remaining[0].get_mpz_t(), cand[0].get_mpz_t())) return false;
            }
            auto quot = z_divide_monic(remaining, cand);
            if (!quot) return false;
            result.push_back(cand);
            remaining = *quot;
            std::vector<std::size_t> next;
            for (auto idx : live)
                if (std::find(pick.begin(), pick.end(), idx) == pick.end()) next.push_back(idx);
            live = std::move(next);
            return true;
        }
        for (std::size_t i = start; i < live.size(); ++i) {
            pick.push_back(live[i]);
            if (self(card, self, pick, i + 1)) return true;
            pick.pop_back();
        }
        return false;
    };

    std::size_t card = 1;
    while (live.size() > 0 && card <= live.size()) {
        if (2 * card > live.size()) {
            // whatever remains is irreducible
            result.push_back(remaining);
            live.clear();
            break;
        }
        std::vector<std::size_t> pick;
        if (try_subsets(card, try_subsets, pick, 0)) continue;  // retry same cardinality
        ++card;
    }
    if (!live.empty()) result.push_back(remaining);
    return result;
}

RationalPoly from_int_vec(const std::vector<Int>& v) {
    std::vector<Rat> c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = Rat(v[i]);
    return RationalPoly(std::move(c));
}

}  // namespace

FactoredPoly factor_over_Q(const RationalPoly& input, unsigned degree_cap) {
    if (input.is_zero()) throw std::invalid_argument("factor_over_Q: zero polynomial");
    if (input.degree() > static_cast<long>(degree_cap))
        throw CapExceeded("factor_over_Q: degree " + std::to_string(input.degree()) +
                          " exceeds cap " + std::to_string(degree_cap));

    FactoredPoly out;
    out.unit = input.leading();
    RationalPoly f = input.monic();

    // Strip powers of x.
    unsigned x_mult = 0;
    while (f.degree() > 0 && f[0] == 0) {
        f = f.divexact(RationalPoly::x_power(1));
        ++x_mult;
    }
    if (x_mult > 0) out.factors.emplace_back(RationalPoly::x_power(1), x_mult);

    // Yun squarefree decomposition over Q:
    // g = gcd(f, f'); v1 = f/g; w1 = f'/g;
    // h_i = gcd(v_i, w_i - v_i'); v_{i+1} = v_i / h_i; w_{i+1} = (w_i - v_i')/h_i.
    std::vector<std::pair<RationalPoly, unsigned>> squarefree_parts;
    if (f.degree() >= 1) {
        RationalPoly g0 = gcd(f, f.derivative());
        RationalPoly v = f.divexact(g0);
        RationalPoly w = f.derivative().divexact(g0);
        unsigned i = 1;
        while (v.degree() >= 1) {
            RationalPoly z = w - v.derivative();
            RationalPoly h = gcd(v, z);
            if (h.degree() >= 1) squarefree_parts.emplace_back(h.monic(), i);
            v = v.divexact(h);
            w = z.divexact(h);
            ++i;
        }
    }

    std::mt19937_64 rng(0x5eed5eedULL);
    for (const auto& [part, mult] : squarefree_parts) {
        // Monicize with integer coefficients via y = lead * x on the primitive form.
        auto [content, zpoly] = part.primitive_integer();
        (void)content;  // part is monic over Q; the content is absorbed by scaling below
        const std::size_t n = zpoly.size() - 1;
        Int lead = zpoly.back();
        // F(y) = lead^(n-1) * part(y / lead): monic integer, F_j = a_j lead^(n-1-j)
        std::vector<Int> F(zpoly.size());
        F[n] = 1;
        Int scale(1);
        for (std::size_t j = n; j-- > 0;) {
            F[j] = zpoly[j] * scale;
            scale *= lead;
        }
        auto irreducibles = factor_squarefree_monic(F, rng);
        for (const auto& G : irreducibles) {
            // map back: g(x) = primitive part of G(lead * x), then monic over Q
            std::vector<Rat> gc(G.size());
            Int pw(1);
            for (std::size_t i = 0; i < G.size(); ++i) {
                gc[i] = Rat(G[i] * pw);
                pw *= lead;
            }
            out.factors.emplace_back(RationalPoly(std::move(gc)).monic(), mult);
        }
    }

    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (long i = a.first.degree(); i >= 0; --i) {
            const Rat &ca = a.first[static_cast<std::size_t>(i)], &cb = b.first[static_cast<std::size_t>(i)];
            if (ca != cb) return ca < cb;
        }
        return false;
    });
    return out;
}

unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

RationalPoly cyclotomic_poly(unsigned long n) {
    static std::map<unsigned long, RationalPoly> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    RationalPoly xn1 = RationalPoly::x_power(n) - RationalPoly::constant(1);
    RationalPoly phi = xn1;
    for (unsigned long d = 1; d < n; ++d)
        if (n % d == 0) phi = phi.divexact(cyclotomic_poly(d));
    cache[n] = phi;
    return phi;
}

std::optional<unsigned long> is_cyclotomic(const RationalPoly& f) {
    if (f.is_zero() || !f.is_monic() || !f.has_integer_coeffs()) return std::nullopt;
    const long deg = f.degree();
    if (deg < 1) return std::nullopt;
    const unsigned long bound = 2 * static_cast<unsigned long>(deg) * static_cast<unsigned long>(deg) + 1;
    for (unsigned long n = 1; n <= bound; ++n) {
        if (euler_phi(n) != static_cast<unsigned long>(deg)) continue;
        if (f == cyclotomic_poly(n)) return n;
    }
    return std::nullopt;
}

}  // namespace nrank

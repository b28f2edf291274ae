#include "nrank/dependence.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <thread>

#include "nrank/errors.hpp"
#include "nrank/roots.hpp"

namespace nrank {

// ---------------------------------------------------------------------------
// Integer factorization: trial division, then Brent-Pollard rho.

namespace {

Int rho_brent(const Int& n, unsigned long max_iters, unsigned long seed) {
    // n composite, odd, not a perfect prime power guard left to caller
    Int y(seed % 7 + 2), c(seed % 11 + 1), m(128), g(1), r(1), q(1), x, ys;
    while (g == 1) {
        x = y;
        for (Int i(0); i < r; ++i) y = (y * y + c) % n;
        Int k(0);
        while (k < r && g == 1) {
            ys = y;
            Int lim = r - k;
            if (m < lim) lim = m;
            for (Int i(0); i < lim; ++i) {
                y = (y * y + c) % n;
                q = q * abs(x - y) % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
            if (k > Int(static_cast<unsigned long>(max_iters))) return 0;
        }
        r *= 2;
        if (r > Int(static_cast<unsigned long>(max_iters))) return 0;
    }
    if (g == n) {
        // backtrack
        g = 1;
        while (g == 1) {
            ys = (ys * ys + c) % n;
            mpz_gcd(g.get_mpz_t(), Int(abs(x - ys)).get_mpz_t(), n.get_mpz_t());
        }
    }
    if (g == n) return 0;
    return g;
}

bool is_probable_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0; }

void factor_rec(Int n, std::map<Int, unsigned>& out, unsigned long rho_iters, bool& ok, unsigned long depth) {
    if (!ok || n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    if (depth > 64) {
        ok = false;
        return;
    }
    Int d = 0;
    for (unsigned long s = 1; s <= 8 && d == 0; ++s) d = rho_brent(n, rho_iters, s);
    if (d == 0 || d == 1 || d == n) {
        ok = false;
        return;
    }
    factor_rec(d, out, rho_iters, ok, depth + 1);
    factor_rec(n / d, out, rho_iters, ok, depth + 1);
}

}  // namespace

std::optional<std::map<Int, unsigned>> factor_integer(Int n, const Int& trial_bound, unsigned long rho_iterations) {
    if (n == 0) throw std::invalid_argument("factor_integer: zero");
    std::map<Int, unsigned> out;
    n = abs(n);
    for (Int p = 2; p * p <= n && p <= trial_bound; p == 2 ? p = 3 : p += 2) {
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            ++out[p];
            n /= p;
        }
    }
    if (n == 1) return out;
    bool ok = true;
    factor_rec(n, out, rho_iterations, ok, 0);
    if (!ok) return std::nullopt;
    return out;
}

// ---------------------------------------------------------------------------
// Interval plumbing for candidate identification.

namespace {

BoxC box_int_pow(BoxC base, unsigned long k, unsigned round_bits) {
    BoxC acc = box_point(Rat(1), Rat(0));
    while (k > 0) {
        if (k & 1) acc = round_outward(acc * base, round_bits);
        k >>= 1;
        if (k) base = round_outward(base * base, round_bits);
    }
    return acc;
}

// alpha^a1 * beta^a2 as an interval at the given working precision.
std::optional<BoxC> value_box(const AlgebraicNumber& alpha, const AlgebraicNumber& beta, long a1, long a2,
                              unsigned bits) {
    BoxC acc = box_point(Rat(1), Rat(0));
    auto mix = [&](const AlgebraicNumber& x, long e) -> bool {
        if (e == 0) return true;
        BoxC b = x.refined_box(bits);
        BoxC p = box_int_pow(b, static_cast<unsigned long>(e > 0 ? e : -e), bits + 64);
        if (e < 0) {
            auto inv = box_point(Rat(1), Rat(0)).divide(p);
            if (!inv) return false;
            p = *inv;
        }
        acc = round_outward(acc * p, bits + 64);
        return true;
    };
    if (!mix(alpha, a1)) return std::nullopt;
    if (!mix(beta, a2)) return std::nullopt;
    return acc;
}

// The irreducible factor of the composed polynomial vanishing at the value
// enclosed by boxes(bits). Escalates precision until exactly one factor's
// interval evaluation straddles zero.
std::optional<RationalPoly> identify_factor(const std::vector<RationalPoly>& factors,
                                            const std::function<std::optional<BoxC>(unsigned)>& boxes,
                                            unsigned start_bits, unsigned max_bits) {
    for (unsigned bits = start_bits; bits <= max_bits; bits *= 2) {
        auto vb = boxes(bits);
        if (!vb) continue;
        const RationalPoly* hit = nullptr;
        int hits = 0;
        for (const auto& h : factors) {
            BoxC img = eval_poly_box(h, *vb);
            if (img.re.contains_zero() && img.im.contains_zero()) {
                ++hits;
                hit = &h;
            }
        }
        if (hits == 1) return *hit;
        // hits == 0 cannot happen for a true root; escalate on ambiguity
    }
    return std::nullopt;
}

// Minimal polynomial of alpha^e (e != 0) as a monic rational polynomial
// (not necessarily irreducible: the factor containing the value is found
// later).
RationalPoly power_poly_signed(const AlgebraicNumber& a, long e) {
    const RationalPoly& f = a.minpoly();
    if (e > 0) return power_roots_poly(f, static_cast<unsigned long>(e));
    return power_roots_poly(f.reversed_monic(), static_cast<unsigned long>(-e));
}

std::vector<RationalPoly> composed_factors(const AlgebraicNumber& alpha, const AlgebraicNumber& beta, long a1,
                                           long a2) {
    RationalPoly composed;
    if (a1 != 0 && a2 != 0)
        composed = product_roots_poly(power_poly_signed(alpha, a1), power_poly_signed(beta, a2));
    else if (a1 != 0)
        composed = power_poly_signed(alpha, a1);
    else
        composed = power_poly_signed(beta, a2);
    auto fac = factor_over_Q(composed, 64);
    std::vector<RationalPoly> out;
    for (auto& [p, m] : fac.factors) out.push_back(p);
    return out;
}

const RationalPoly kXMinusOne{-1, 1};

}  // namespace

bool verify_witness(const AlgebraicNumber& alpha, const AlgebraicNumber& beta, long a1, long a2,
                    unsigned max_precision_bits) {
    if (a1 == 0 && a2 == 0) return false;
    auto factors = composed_factors(alpha, beta, a1, a2);
    auto fac = identify_factor(
        factors, [&](unsigned bits) { return value_box(alpha, beta, a1, a2, bits); }, 64, max_precision_bits);
    if (!fac) throw PrecisionFailure("verify_witness: could not separate the candidate value");
    return *fac == kXMinusOne;
}

// ---------------------------------------------------------------------------

namespace {

// Smallest-denominator rational inside [lo, hi], 0 < lo <= hi.
Rat simplest_rational(const Rat& lo, const Rat& hi) {
    Int cl;
    mpz_cdiv_q(cl.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    Int fh;
    mpz_fdiv_q(fh.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
    if (cl <= fh) return Rat(cl);
    // same integer part
    Rat k(fh);
    return k + 1 / simplest_rational(1 / (hi - k), 1 / (lo - k));
}

struct RatioExact {
    unsigned long s, t;  // h(alpha)/h(beta) = s/t in lowest terms
};

// Exact ratio of heights where decidable; nullopt otherwise.
std::optional<RatioExact> exact_height_ratio(const AlgebraicNumber& a, const AlgebraicNumber& b,
                                             const DependenceConfig& cfg) {
    if (a.minpoly() == b.minpoly()) return RatioExact{1, 1};
    auto fa = exact_height_form(a);
    auto fb = exact_height_form(b);
    if (!fa || !fb) return std::nullopt;
    auto ea = factor_integer(fa->base, cfg.trial_division_bound, cfg.rho_iterations);
    auto eb = factor_integer(fb->base, cfg.trial_division_bound, cfg.rho_iterations);
    if (!ea || !eb) return std::nullopt;
    if (ea->size() != eb->size()) return RatioExact{0, 0};  // bases independent -> heights incommensurable
    // proportional exponent vectors <=> log(base_a)/log(base_b) rational
    long num = 0, den = 0;  // exponents ratio ea = (num/den) * eb
    for (auto ita = ea->begin(), itb = eb->begin(); ita != ea->end(); ++ita, ++itb) {
        if (ita->first != itb->first) return RatioExact{0, 0};
        if (den == 0) {
            num = ita->second;
            den = itb->second;
        } else if (static_cast<long>(ita->second) * den != static_cast<long>(itb->second) * num) {
            return RatioExact{0, 0};
        }
    }
    // h(a)/h(b) = (scale_a * num) / (scale_b * den)
    Rat ratio = fa->scale * Rat(num) / (fb->scale * Rat(den));
    ratio.canonicalize();
    return RatioExact{static_cast<unsigned long>(ratio.get_num().get_ui()),
                      static_cast<unsigned long>(ratio.get_den().get_ui())};
}

std::optional<DependenceWitness> try_candidates(const AlgebraicNumber& alpha, const AlgebraicNumber& beta,
                                                unsigned long t, unsigned long s, const DependenceConfig& cfg) {
    for (int sign = -1; sign <= 1; sign += 2) {
        long a1 = static_cast<long>(t);
        long a2 = sign * static_cast<long>(s);
        auto factors = composed_factors(alpha, beta, a1, a2);
        auto fac = identify_factor(
            factors, [&](unsigned bits) { return value_box(alpha, beta, a1, a2, bits); },
            std::max(64u, cfg.precision_bits), cfg.max_precision_bits);
        if (!fac) throw PrecisionFailure("mult_dependent: could not separate a candidate value");
        if (!fac->has_integer_coeffs()) continue;
        auto order = is_cyclotomic(*fac);
        if (!order) continue;
        long T = static_cast<long>(*order);
        DependenceWitness w{a1 * T, a2 * T};
        if (!verify_witness(alpha, beta, w.a1, w.a2, cfg.max_precision_bits))
            throw std::logic_error("mult_dependent: witness failed exact verification");
        return w;
    }
    return std::nullopt;
}

// nullopt when integer factorization gives up; the interval route still applies.
std::optional<DependenceResult> rational_fast_path(const AlgebraicNumber& alpha, const AlgebraicNumber& beta,
                                                   const DependenceConfig& cfg) {
    Int n1 = alpha.integer_value(), n2 = beta.integer_value();
    auto f1 = factor_integer(n1, cfg.trial_division_bound, cfg.rho_iterations);
    auto f2 = factor_integer(n2, cfg.trial_division_bound, cfg.rho_iterations);
    if (!f1 || !f2) return std::nullopt;
    if (f1->size() != f2->size()) return Independence{cfg.bound, true};
    long c = 0, d = 0;
    for (auto ita = f1->begin(), itb = f2->begin(); ita != f1->end(); ++ita, ++itb) {
        if (ita->first != itb->first) return Independence{cfg.bound, true};
        if (c == 0) {
            c = ita->second;
            d = itb->second;
        } else if (static_cast<long>(ita->second) * d != static_cast<long>(itb->second) * c) {
            return Independence{cfg.bound, true};
        }
    }
    // |n1| = m^c, |n2| = m^d; primitive relation kills the magnitudes
    long g = std::gcd(c, d);
    long a1 = d / g, a2 = -c / g;
    bool neg1 = n1 < 0, neg2 = n2 < 0;
    bool sign_ok = ((neg1 && (a1 % 2 != 0)) ^ (neg2 && (a2 % 2 != 0))) == 0;
    if (!sign_ok) {
        a1 *= 2;
        a2 *= 2;
    }
    DependenceWitness w{a1, a2};
    if (!verify_witness(alpha, beta, w.a1, w.a2, cfg.max_precision_bits))
        throw std::logic_error("mult_dependent: rational witness failed verification");
    return w;
}

}  // namespace

DependenceResult mult_dependent(const AlgebraicNumber& alpha, const AlgebraicNumber& beta,
                                const DependenceConfig& cfg) {
    if (alpha.is_zero() || beta.is_zero()) throw std::invalid_argument("mult_dependent: zero input");
    if (auto n = alpha.root_of_unity_order()) return DependenceWitness{static_cast<long>(*n), 0};
    if (auto n = beta.root_of_unity_order()) return DependenceWitness{0, static_cast<long>(*n)};

    if (alpha.is_rational() && beta.is_rational()) {
        if (auto r = rational_fast_path(alpha, beta, cfg)) return *r;
    }

    // Exactly comparable heights make every verdict decisive.
    if (auto exact = exact_height_ratio(alpha, beta, cfg)) {
        if (exact->t == 0 && exact->s == 0) return Independence{cfg.bound, true};
        if (exact->s > 10000 || exact->t > 10000)
            throw CapExceeded("mult_dependent: exact height ratio has unreasonable exponents");
        if (auto w = try_candidates(alpha, beta, exact->t, exact->s, cfg)) return *w;
        return Independence{cfg.bound, true};
    }

    // Interval route: reconstruct h(alpha)/h(beta) with denominator <= bound.
    const unsigned long B = cfg.bound;
    Rat needed_width(1, 1);
    needed_width /= Rat(static_cast<unsigned long>(2) * B * B);
    for (unsigned bits = std::max(64u, cfg.precision_bits); bits <= cfg.max_precision_bits; bits *= 2) {
        HeightInterval ha = weil_height(alpha, bits);
        HeightInterval hb = weil_height(beta, bits);
        if (hb.value.lo <= 0 || ha.value.lo <= 0) continue;
        auto inv = hb.value.reciprocal();
        if (!inv) continue;
        QInterval r = ha.value * *inv;
        if (r.width() >= needed_width) continue;
        Rat simplest = simplest_rational(r.lo, r.hi);
        if (simplest.get_den() > static_cast<long>(B)) return Independence{static_cast<unsigned>(B), false};
        unsigned long s = simplest.get_num().get_ui();
        unsigned long t = simplest.get_den().get_ui();
        if (auto w = try_candidates(alpha, beta, t, s, cfg)) return *w;
        return Independence{static_cast<unsigned>(B), false};
    }
    throw PrecisionFailure("mult_dependent: height ratio interval never disambiguated a reconstruction");
}

DependenceClasses dependence_classes(const std::vector<AlgebraicNumber>& nums, const DependenceConfig& cfg) {
    for (const auto& a : nums)
        if (a.root_of_unity_order())
            throw std::invalid_argument("dependence_classes: roots of unity must be filtered out by the caller");

    const std::size_t n = nums.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    std::vector<DependenceResult> results(pairs.size(), Independence{});
    unsigned threads = 1;
    if (const char* env = std::getenv("NRANK_THREADS")) {
        long v = std::atol(env);
        if (v > 1) threads = static_cast<unsigned>(std::min<long>(v, 16));
    }
    if (threads <= 1 || pairs.size() < 4) {
        for (std::size_t k = 0; k < pairs.size(); ++k)
            results[k] = mult_dependent(nums[pairs[k].first], nums[pairs[k].second], cfg);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&]() {
                for (std::size_t k = next.fetch_add(1); k < pairs.size(); k = next.fetch_add(1))
                    results[k] = mult_dependent(nums[pairs[k].first], nums[pairs[k].second], cfg);
            });
        for (auto& th : pool) th.join();
    }

    // single-threaded union-find reduction, in pair order
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    DependenceClasses out;
    out.searched_bound = cfg.bound;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (auto* w = std::get_if<DependenceWitness>(&results[k])) {
            out.witnesses.push_back({pairs[k].first, pairs[k].second, *w});
            parent[find(pairs[k].first)] = find(pairs[k].second);
        } else {
            const auto& ind = std::get<Independence>(results[k]);
            if (!ind.decisive) out.all_decisive = false;
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        out.classes.push_back(members);
    }
    std::sort(out.classes.begin(), out.classes.end());
    return out;
}

std::size_t torus_rank_rational(const std::vector<Rat>& nums, const DependenceConfig& cfg) {
    std::map<Int, std::size_t> prime_col;
    std::vector<std::map<std::size_t, long>> rows;
    for (const auto& q : nums) {
        if (q == 0) throw std::invalid_argument("torus_rank_rational: zero input");
        std::map<std::size_t, long> row;
        auto add = [&](const Int& v, int sgn) {
            auto fac = factor_integer(v, cfg.trial_division_bound, cfg.rho_iterations);
            if (!fac) throw CapExceeded("torus_rank_rational: factorization cap");
            for (const auto& [p, e] : *fac) {
                auto ins = prime_col.try_emplace(p, prime_col.size());
                row[ins.first->second] += sgn * static_cast<long>(e);
            }
        };
        Int num = abs(q.get_num()), den = q.get_den();
        if (num != 1) add(num, +1);
        if (den != 1) add(den, -1);
        rows.push_back(std::move(row));
    }
    // fraction-free rank of the exponent matrix
    const std::size_t R = rows.size(), C = prime_col.size();
    std::vector<std::vector<Int>> m(R, std::vector<Int>(C, Int(0)));
    for (std::size_t i = 0; i < R; ++i)
        for (const auto& [c, e] : rows[i]) m[i][c] = e;
    std::size_t rank = 0;
    Int prev(1);
    for (std::size_t col = 0; col < C && rank < R; ++col) {
        std::size_t piv = rank;
        while (piv < R && m[piv][col] == 0) ++piv;
        if (piv == R) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t i = rank + 1; i < R; ++i) {
            for (std::size_t j = col + 1; j < C; ++j) {
                Int t = m[i][j] * m[rank][col] - m[i][col] * m[rank][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return rank;
}

}  // namespace nrank

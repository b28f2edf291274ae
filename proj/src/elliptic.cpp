#include "nrank/elliptic.hpp"

#include <numeric>
#include <random>
#include <stdexcept>

#include "nrank/dependence.hpp"
#include "nrank/errors.hpp"

namespace nrank {

EllipticCurve::EllipticCurve(FiniteField f, FiniteField::Elem a_in, FiniteField::Elem b_in)
    : field(std::move(f)), a(std::move(a_in)), b(std::move(b_in)) {
    if (field.p() < 5) throw std::invalid_argument("EllipticCurve: characteristic must be >= 5");
    // 4a^3 + 27b^2 != 0
    auto four_a3 = field.mul(field.from_int(4), field.mul(a, field.mul(a, a)));
    auto t27b2 = field.mul(field.from_int(27), field.mul(b, b));
    if (field.is_zero(field.add(four_a3, t27b2))) throw std::invalid_argument("EllipticCurve: singular curve");
}

EllipticCurve EllipticCurve::from_ints(unsigned long p, unsigned k, const Int& a, const Int& b) {
    FiniteField f(p, k);
    auto ae = f.from_int(a), be = f.from_int(b);
    return EllipticCurve(std::move(f), std::move(ae), std::move(be));
}

bool on_curve(const EllipticCurve& E, const ECPoint& P) {
    if (P.infinity) return true;
    const auto& F = E.field;
    auto lhs = F.mul(P.y, P.y);
    auto rhs = F.add(F.add(F.mul(P.x, F.mul(P.x, P.x)), F.mul(E.a, P.x)), E.b);
    return lhs == rhs;
}

ECPoint ec_neg(const EllipticCurve& E, const ECPoint& P) {
    if (P.infinity) return P;
    return ECPoint::affine(P.x, E.field.neg(P.y));
}

ECPoint ec_add(const EllipticCurve& E, const ECPoint& P, const ECPoint& Q) {
    if (!on_curve(E, P) || !on_curve(E, Q)) throw std::invalid_argument("ec_add: point not on curve");
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    const auto& F = E.field;
    if (P.x == Q.x) {
        if (!(P.y == Q.y)) return ECPoint::at_infinity();  // Q = -P
        if (F.is_zero(P.y)) return ECPoint::at_infinity();  // 2-torsion
        // tangent: s = (3x^2 + a) / (2y)
        auto num = F.add(F.mul(F.from_int(3), F.mul(P.x, P.x)), E.a);
        auto s = F.mul(num, F.inv(F.mul(F.from_int(2), P.y)));
        auto x3 = F.sub(F.mul(s, s), F.add(P.x, P.x));
        auto y3 = F.sub(F.mul(s, F.sub(P.x, x3)), P.y);
        return ECPoint::affine(std::move(x3), std::move(y3));
    }
    auto s = F.mul(F.sub(Q.y, P.y), F.inv(F.sub(Q.x, P.x)));
    auto x3 = F.sub(F.sub(F.mul(s, s), P.x), Q.x);
    auto y3 = F.sub(F.mul(s, F.sub(P.x, x3)), P.y);
    return ECPoint::affine(std::move(x3), std::move(y3));
}

ECPoint ec_mul(const EllipticCurve& E, const Int& n, const ECPoint& P) {
    Int k = n;
    ECPoint base = P;
    if (k < 0) {
        base = ec_neg(E, base);
        k = -k;
    }
    ECPoint acc = ECPoint::at_infinity();
    const std::size_t bits = k == 0 ? 0 : mpz_sizeinbase(k.get_mpz_t(), 2);
    for (std::size_t i = bits; i > 0; --i) {
        acc = ec_add(E, acc, acc);
        if (mpz_tstbit(k.get_mpz_t(), i - 1)) acc = ec_add(E, acc, base);
    }
    return acc;
}

Int point_count_naive(const EllipticCurve& E, const EcBudgets& budgets) {
    const auto& F = E.field;
    if (F.q() > budgets.naive_budget) throw CapExceeded("point_count_naive: field exceeds the sweep budget");
    Int count = 1;  // infinity
    for (Int i(0); i < F.q(); ++i) {
        auto x = F.element_from_index(i);
        auto rhs = F.add(F.add(F.mul(x, F.mul(x, x)), F.mul(E.a, x)), E.b);
        count += 1 + F.chi(rhs);
    }
    return count;
}

Int trace_of_frobenius(const EllipticCurve& E, const EcBudgets& budgets) {
    Int t = E.field.q() + 1 - point_count_naive(E, budgets);
    if (t * t > 4 * E.field.q()) throw std::logic_error("trace_of_frobenius: Hasse bound violated");
    return t;
}

Int TraceSequence::value(unsigned long n) const {
    Int a(2), b = t;  // t_0, t_1
    if (n == 0) return a;
    for (unsigned long i = 1; i < n; ++i) {
        Int next = t * b - q * a;
        a = std::move(b);
        b = std::move(next);
    }
    return b;
}

Int TraceSequence::card(unsigned long n) const {
    Int qn;
    mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), n);
    return qn + 1 - value(n);
}

TraceSequence trace_sequence(const EllipticCurve& E, const EcBudgets& budgets) {
    return TraceSequence{trace_of_frobenius(E, budgets), E.field.q()};
}

namespace {

// The curve lifted to F_{p^(k n)}; coefficients must come from the prime field.
EllipticCurve lift_curve(const EllipticCurve& E, unsigned long n) {
    if (n == 1) return E;
    if (E.a.size() > 1 || E.b.size() > 1)
        throw std::invalid_argument("extension experiments need prime-field coefficients");
    FiniteField G(E.field.p(), E.field.k() * static_cast<unsigned>(n));
    auto a = E.a, b = E.b;
    return EllipticCurve(std::move(G), std::move(a), std::move(b));
}

// Order of P given the factored group order.
Int point_order(const EllipticCurve& E, const ECPoint& P, const Int& card,
                const std::map<Int, unsigned>& card_factors) {
    Int ord = card;
    for (const auto& [prime, mult] : card_factors) {
        for (unsigned e = 0; e < mult; ++e) {
            Int cand = ord / prime;
            if (!mpz_divisible_p(ord.get_mpz_t(), prime.get_mpz_t())) break;
            if (ec_mul(E, cand, P).infinity)
                ord = cand;
            else
                break;
        }
    }
    return ord;
}

Int gcd_int(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

}  // namespace

GroupStructure group_structure(const EllipticCurve& E, unsigned long n, const EcBudgets& budgets) {
    auto ts = trace_sequence(E, budgets);
    const Int card = ts.card(n);
    Int qn;
    mpz_pow_ui(qn.get_mpz_t(), ts.q.get_mpz_t(), n);
    const Int unit_order = qn - 1;
    const Int tn2 = abs(ts.value(n) - 2);

    if (qn > budgets.sample_budget) {
        GroupStructure g;
        g.mode = GroupStructure::Mode::UpperBound;
        g.m = gcd_int(gcd_int(card, unit_order), tn2);
        g.l = card / g.m;
        return g;
    }

    auto factors = factor_integer(card, budgets.trial_division_bound, budgets.rho_iterations);
    if (!factors) throw CapExceeded("group_structure: factorization cap on the group order");

    EllipticCurve Ext = lift_curve(E, n);
    const auto& F = Ext.field;

    auto try_accept = [&](const Int& l) -> std::optional<GroupStructure> {
        Int m = card / l;
        if (!mpz_divisible_p(card.get_mpz_t(), l.get_mpz_t())) return std::nullopt;
        if (!mpz_divisible_p(l.get_mpz_t(), m.get_mpz_t())) return std::nullopt;
        if (!mpz_divisible_p(unit_order.get_mpz_t(), m.get_mpz_t())) return std::nullopt;
        return GroupStructure{m, l, GroupStructure::Mode::Exact};
    };

    auto point_at_index = [&](const Int& idx) -> std::optional<ECPoint> {
        auto x = F.element_from_index(idx);
        auto rhs = F.add(F.add(F.mul(x, F.mul(x, x)), F.mul(Ext.a, x)), Ext.b);
        if (F.is_zero(rhs)) return ECPoint::affine(x, F.zero());
        auto y = F.sqrt(rhs);
        if (!y) return std::nullopt;
        return ECPoint::affine(x, *y);
    };

    // Randomized sampling with a certified exit.
    std::mt19937_64 rng(budgets.seed);
    ECPoint best = ECPoint::at_infinity();
    Int best_order(1);
    for (unsigned s = 0; s < budgets.max_samples; ++s) {
        Int idx;
        {
            // uniform index in [0, q^n)
            unsigned long bits = mpz_sizeinbase(qn.get_mpz_t(), 2);
            do {
                idx = 0;
                for (unsigned long b = 0; b < bits; b += 32) idx = (idx << 32) | static_cast<unsigned long>(rng() & 0xffffffffull);
                Int mask;
                mpz_fdiv_r_2exp(mask.get_mpz_t(), idx.get_mpz_t(), bits);
                idx = mask;
            } while (idx >= qn);
        }
        auto P = point_at_index(idx);
        if (!P) continue;
        Int o = point_order(Ext, *P, card, *factors);
        // combine into a single point of order lcm(best_order, o)
        Int target;
        mpz_lcm(target.get_mpz_t(), best_order.get_mpz_t(), o.get_mpz_t());
        if (target != best_order) {
            if (best.infinity) {
                best = *P;
                best_order = o;
            } else {
                // split target = u * v, gcd(u, v) = 1, u | best_order, v | o
                Int u(1), v(1);
                for (const auto& [prime, mult] : *factors) {
                    (void)mult;
                    auto vp = [&](Int x) {
                        unsigned e = 0;
                        while (mpz_divisible_p(x.get_mpz_t(), prime.get_mpz_t())) {
                            x /= prime;
                            ++e;
                        }
                        return e;
                    };
                    unsigned e1 = vp(best_order), e2 = vp(o);
                    Int pe(1);
                    for (unsigned i = 0; i < std::max(e1, e2); ++i) pe *= prime;
                    if (e1 >= e2) u *= pe; else v *= pe;
                }
                ECPoint Pu = ec_mul(Ext, best_order / u, best);
                ECPoint Qv = ec_mul(Ext, o / v, *P);
                best = ec_add(Ext, Pu, Qv);
                best_order = u * v;
            }
        }
        if (auto g = try_accept(best_order)) return *g;
    }

    // Deterministic exhaustive fallback for small fields.
    if (qn <= budgets.exhaustive_budget) {
        Int l(1);
        for (Int i(0); i < qn; ++i) {
            auto P = point_at_index(i);
            if (!P) continue;
            Int o = point_order(Ext, *P, card, *factors);
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), o.get_mpz_t());
        }
        GroupStructure g;
        g.mode = GroupStructure::Mode::Exact;
        g.l = l;
        g.m = card / l;
        if (!mpz_divisible_p(l.get_mpz_t(), g.m.get_mpz_t()) ||
            !mpz_divisible_p(unit_order.get_mpz_t(), g.m.get_mpz_t()))
            throw std::logic_error("group_structure: exhaustive structure failed its invariants");
        return g;
    }

    GroupStructure g;
    g.mode = GroupStructure::Mode::UpperBound;
    g.m = gcd_int(gcd_int(card, unit_order), tn2);
    g.l = card / g.m;
    return g;
}

bool is_ordinary(const EllipticCurve& E, const EcBudgets& budgets) {
    Int t = trace_of_frobenius(E, budgets);
    Int g = gcd_int(t, Int(E.field.p()));
    return g == 1;
}

bool is_isogenous(const EllipticCurve& E1, const EllipticCurve& E2, const EcBudgets& budgets) {
    if (!(E1.field == E2.field)) throw std::invalid_argument("is_isogenous: different base fields");
    return trace_of_frobenius(E1, budgets) == trace_of_frobenius(E2, budgets);
}

std::optional<unsigned> is_isogenous_closure(const EllipticCurve& E1, const EllipticCurve& E2,
                                             const EcBudgets& budgets) {
    if (!(E1.field == E2.field)) throw std::invalid_argument("is_isogenous_closure: different base fields");
    auto t1 = trace_sequence(E1, budgets);
    auto t2 = trace_sequence(E2, budgets);
    for (unsigned a : {1u, 2u, 3u, 4u, 5u, 6u, 8u, 10u, 12u})
        if (t1.value(a) == t2.value(a)) return a;
    return std::nullopt;
}

std::vector<ExponentGrowthPoint> exponent_growth_experiment(const EllipticCurve& E, unsigned long n_max,
                                                            const EcBudgets& budgets) {
    std::vector<ExponentGrowthPoint> out;
    const double logq = log_of_int(E.field.q());
    for (unsigned long n = 1; n <= n_max; ++n) {
        auto g = group_structure(E, n, budgets);
        ExponentGrowthPoint pt;
        pt.n = n;
        pt.m = g.m;
        pt.l = g.l;
        pt.exact = g.mode == GroupStructure::Mode::Exact;
        pt.ratio = log_of_int(g.l) / (static_cast<double>(n) * logq);
        out.push_back(std::move(pt));
    }
    return out;
}

GrowthSeries gcd_orders_experiment(const EllipticCurve& E1, const EllipticCurve& E2, unsigned long n_max,
                                   const EcBudgets& budgets) {
    if (!(E1.field == E2.field)) throw std::invalid_argument("gcd_orders_experiment: different base fields");
    auto t1 = trace_sequence(E1, budgets);
    auto t2 = trace_sequence(E2, budgets);
    GrowthSeries out;
    for (unsigned long n = 1; n <= n_max; ++n) {
        Int g = gcd_int(t1.card(n), t2.card(n));
        GrowthPoint pt;
        pt.n = n;
        pt.log_gcd = g == 1 ? 0.0 : log_of_int(g);
        pt.gcd = std::move(g);
        out.points.push_back(std::move(pt));
    }
    return out;
}

IntegerMatrix frobenius_matrix(const EllipticCurve& E, const EcBudgets& budgets) {
    Int t = trace_of_frobenius(E, budgets);
    IntegerMatrix M(2);
    M(0, 1) = -E.field.q();
    M(1, 0) = 1;
    M(1, 1) = t;
    return M;
}

IntegerMatrix frobenius_pair_matrix(const EllipticCurve& E1, const EllipticCurve& E2, const EcBudgets& budgets) {
    return IntegerMatrix::block_diag({frobenius_matrix(E1, budgets), frobenius_matrix(E2, budgets)});
}

}  // namespace nrank

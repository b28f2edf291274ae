#pragma once

#include <optional>
#include <vector>

#include "nrank/finite_field.hpp"
#include "nrank/order.hpp"

namespace nrank {

// Short Weierstrass curve y^2 = x^3 + a x + b over F_{p^k}, p >= 5.
struct EllipticCurve {
    FiniteField field;
    FiniteField::Elem a, b;

    EllipticCurve(FiniteField f, FiniteField::Elem a_in, FiniteField::Elem b_in);
    static EllipticCurve from_ints(unsigned long p, unsigned k, const Int& a, const Int& b);
};

struct ECPoint {
    bool infinity = true;
    FiniteField::Elem x, y;

    static ECPoint at_infinity() { return {}; }
    static ECPoint affine(FiniteField::Elem x, FiniteField::Elem y) { return {false, std::move(x), std::move(y)}; }
    bool operator==(const ECPoint& o) const = default;
};

bool on_curve(const EllipticCurve& E, const ECPoint& P);
ECPoint ec_neg(const EllipticCurve& E, const ECPoint& P);
// Chord-tangent group law; throws on off-curve input.
ECPoint ec_add(const EllipticCurve& E, const ECPoint& P, const ECPoint& Q);
ECPoint ec_mul(const EllipticCurve& E, const Int& n, const ECPoint& P);

struct EcBudgets {
    Int naive_budget = 10000000;       // largest field size swept exhaustively
    Int exhaustive_budget = 100000;    // full point enumeration for structures
    Int sample_budget = 10000000;      // randomized structure sampling
    unsigned max_samples = 64;
    unsigned long seed = 1;
    Int trial_division_bound = 1000000;
    unsigned long rho_iterations = 1u << 20;
};

// Exhaustive count 1 + sum_x (1 + chi(x^3 + ax + b)).
Int point_count_naive(const EllipticCurve& E, const EcBudgets& budgets = {});

// Trace of Frobenius over the base field, from the naive count.
Int trace_of_frobenius(const EllipticCurve& E, const EcBudgets& budgets = {});

// t_0 = 2, t_1 = t, t_n = t t_{n-1} - q t_{n-2}; #E(F_{q^n}) = q^n + 1 - t_n.
struct TraceSequence {
    Int t, q;

    Int value(unsigned long n) const;
    Int card(unsigned long n) const;
};

TraceSequence trace_sequence(const EllipticCurve& E, const EcBudgets& budgets = {});

struct GroupStructure {
    Int m, l;  // E(F_{q^n}) = Z/m x Z/l with m | l and m | q^n - 1
    // With Exact, (m, l) is certified. With UpperBound (fields beyond the
    // sampling budget), m is only the divisibility pinch
    // gcd(card, q^n - 1, t_n - 2) and l = card / m is a lower bound.
    enum class Mode { Exact, UpperBound } mode = Mode::Exact;
};

// Structure of E(F_{q^n}): random order sampling with a certified exit,
// exhaustive enumeration for small fields, divisibility pinch beyond budget.
GroupStructure group_structure(const EllipticCurve& E, unsigned long n, const EcBudgets& budgets = {});

// gcd(trace, p) = 1, standard criterion for p >= 5.
bool is_ordinary(const EllipticCurve& E, const EcBudgets& budgets = {});

// Same base field and equal traces (equal point counts).
bool is_isogenous(const EllipticCurve& E1, const EllipticCurve& E2, const EcBudgets& budgets = {});
// Least a in {1,2,3,4,5,6,8,10,12} with Tr(phi_1^a) = Tr(phi_2^a).
std::optional<unsigned> is_isogenous_closure(const EllipticCurve& E1, const EllipticCurve& E2,
                                             const EcBudgets& budgets = {});

struct ExponentGrowthPoint {
    unsigned long n;
    Int m, l;
    double ratio;  // log l(q^n) / (n log q)
    bool exact;    // false in upper-bound mode (ratio is then a lower bound)
};

std::vector<ExponentGrowthPoint> exponent_growth_experiment(const EllipticCurve& E, unsigned long n_max,
                                                            const EcBudgets& budgets = {});

// log gcd(#E1(F_{q^n}), #E2(F_{q^n})) by pure trace recurrences.
GrowthSeries gcd_orders_experiment(const EllipticCurve& E1, const EllipticCurve& E2, unsigned long n_max,
                                   const EcBudgets& budgets = {});

// Companion matrix of x^2 - t x + q; the pair version stacks both curves
// block-diagonally for the rank-2 regularity bridge.
IntegerMatrix frobenius_matrix(const EllipticCurve& E, const EcBudgets& budgets = {});
IntegerMatrix frobenius_pair_matrix(const EllipticCurve& E1, const EllipticCurve& E2,
                                    const EcBudgets& budgets = {});

}  // namespace nrank

#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "nrank/algebraic.hpp"

namespace nrank {

// Exponents with alpha^a1 * beta^a2 = 1, (a1, a2) != (0, 0), exactly verified.
struct DependenceWitness {
    long a1 = 0;
    long a2 = 0;
};

// No relation found. `decisive` is true when independence is proven (rational
// inputs, or exactly comparable heights); otherwise it only means no relation
// with reduced exponent |a1| <= searched_bound exists.
struct Independence {
    unsigned searched_bound = 0;
    bool decisive = false;
};

using DependenceResult = std::variant<DependenceWitness, Independence>;

struct DependenceConfig {
    unsigned bound = 64;               // reconstruction denominator bound
    unsigned precision_bits = 128;     // starting interval precision
    unsigned max_precision_bits = 2048;
    Int trial_division_bound = 1000000;
    unsigned long rho_iterations = 1u << 20;
};

DependenceResult mult_dependent(const AlgebraicNumber& alpha, const AlgebraicNumber& beta,
                                const DependenceConfig& cfg = {});

// Exact check that alpha^a1 * beta^a2 == 1 via composed minimal polynomials
// and interval separation of the candidate value.
bool verify_witness(const AlgebraicNumber& alpha, const AlgebraicNumber& beta, long a1, long a2,
                    unsigned max_precision_bits = 2048);

struct DependenceClasses {
    std::vector<std::vector<std::size_t>> classes;  // member indices, each sorted
    struct PairWitness {
        std::size_t i, j;
        DependenceWitness witness;
    };
    std::vector<PairWitness> witnesses;
    bool all_decisive = true;   // false when some verdict was bound-limited
    unsigned searched_bound = 0;
};

// Union-find partition of pairwise multiplicative dependence. Inputs must
// not be roots of unity. Pairwise tests run in parallel when NRANK_THREADS
// is set above 1; the merge is sequential and deterministic.
DependenceClasses dependence_classes(const std::vector<AlgebraicNumber>& nums, const DependenceConfig& cfg = {});

// Rank of the multiplicative group generated by nonzero rationals (sign is
// torsion and does not count). Throws on zero input.
std::size_t torus_rank_rational(const std::vector<Rat>& nums, const DependenceConfig& cfg = {});

// Trial division then Brent-Pollard rho. nullopt when the iteration cap is
// hit before the cofactor is fully split.
std::optional<std::map<Int, unsigned>> factor_integer(Int n, const Int& trial_bound,
                                                      unsigned long rho_iterations);

}  // namespace nrank

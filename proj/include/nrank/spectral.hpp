#pragma once

#include <optional>
#include <vector>

#include "nrank/dependence.hpp"
#include "nrank/invariant_factors.hpp"

namespace nrank {

// One entry per complex eigenvalue (conjugate roots of one irreducible
// factor are separate entries sharing the minimal polynomial).
struct EigenEntry {
    AlgebraicNumber value;
    unsigned alg_mult;  // multiplicity of the irreducible factor in det(xI - A)
    unsigned blocks;    // Jordan blocks of this eigenvalue, via invariant factors
    std::optional<unsigned long> unity_order;

    unsigned ones_in_blocks() const { return alg_mult - blocks; }
};

struct SpectralClass {
    std::vector<std::size_t> members;  // indices into eigen
    unsigned h = 0;                    // sum of algebraic multiplicities
    unsigned h_bar = 0;                // off-diagonal ones in the class blocks
};

struct SpectralProfile {
    std::size_t d = 0;
    std::vector<EigenEntry> eigen;
    unsigned l = 0;      // algebraic multiplicity carried by roots of unity
    unsigned l_bar = 0;  // off-diagonal ones in root-of-unity blocks
    std::vector<SpectralClass> classes;
    std::vector<DependenceClasses::PairWitness> witnesses;  // indices into eigen
    bool dependence_decisive = true;
    unsigned searched_bound = 0;
    RationalPoly characteristic;
    RationalPoly minimal;
};

SpectralProfile spectral_profile(const IntegerMatrix& A, const DependenceConfig& cfg = {});

struct RegularityVerdict {
    long r = 0;
    enum class Kind { Regular, Exceptional, FiniteGlobalOrder, ExceptionalByTheory, Trivial } kind;
    std::optional<std::size_t> witness_class;    // Exceptional
    std::optional<unsigned long> k;              // FiniteGlobalOrder: minimal k
    std::optional<unsigned> regular_at_bound;    // Regular resting on bounded searches
};

// Three-way verdict for 0 <= r <= d-2: finite global r-order first (the
// growth dichotomy presupposes its absence), then the class inequality
// l - l_bar + h - h_bar >= d - r, else Regular.
RegularityVerdict classify(const SpectralProfile& profile, long r);

// Rows r = 0..d. Rows d-1 and d fall outside the dichotomy: d-1 is
// exceptional on theory grounds (logarithmic growth) unless a finite global
// order applies, and r = d is trivial.
std::vector<RegularityVerdict> classify_all(const SpectralProfile& profile);

// Integer rank of A^k - I for the minimal-k bookkeeping, from block data.
unsigned long finite_global_order_k(const SpectralProfile& profile, long r);

struct CorollaryData {
    std::size_t e;  // torus rank of the eigenvalue group
    unsigned f;     // 0 iff diagonalizable (squarefree minimal polynomial)
    bool consistent;
};

// Rational-spectrum specialization: e + f > r + 1 must force Regular.
std::optional<CorollaryData> corollary_check(const SpectralProfile& profile, const DependenceConfig& cfg = {});

const char* to_string(RegularityVerdict::Kind k);

}  // namespace nrank

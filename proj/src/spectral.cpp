#include "nrank/spectral.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "nrank/errors.hpp"
#include "nrank/smith.hpp"

namespace nrank {

SpectralProfile spectral_profile(const IntegerMatrix& A, const DependenceConfig& cfg) {
    if (A.dim() == 0) throw std::invalid_argument("spectral_profile: empty matrix");
    if (A.det() == 0) throw std::invalid_argument("spectral_profile: singular matrix");

    SpectralProfile p;
    p.d = A.dim();
    p.characteristic = char_poly(A);
    auto fac = factor_over_Q(p.characteristic);
    auto inv = invariant_factors(A);
    p.minimal = inv.minimal_poly();
    p.searched_bound = cfg.bound;

    for (const auto& [g, mult] : fac.factors) {
        const unsigned blocks = static_cast<unsigned>(jordan_block_count(inv, g));
        for (auto& conj : AlgebraicNumber::conjugates_of(g)) {
            EigenEntry e{std::move(conj), mult, blocks, std::nullopt};
            e.unity_order = e.value.root_of_unity_order();
            p.eigen.push_back(std::move(e));
        }
    }

    unsigned total = 0;
    for (const auto& e : p.eigen) {
        total += e.alg_mult;
        if (e.blocks < 1 || e.blocks > e.alg_mult)
            throw std::logic_error("spectral_profile: inconsistent block count");
        if (e.unity_order) {
            p.l += e.alg_mult;
            p.l_bar += e.ones_in_blocks();
        }
    }
    if (total != p.d) throw std::logic_error("spectral_profile: multiplicities do not sum to d");

    std::vector<std::size_t> prime_indices;  // eigen indices outside the unity part
    std::vector<AlgebraicNumber> prime_values;
    for (std::size_t i = 0; i < p.eigen.size(); ++i)
        if (!p.eigen[i].unity_order) {
            prime_indices.push_back(i);
            prime_values.push_back(p.eigen[i].value);
        }

    if (!prime_values.empty()) {
        auto dep = dependence_classes(prime_values, cfg);
        p.dependence_decisive = dep.all_decisive;
        for (const auto& cls : dep.classes) {
            SpectralClass sc;
            for (auto local : cls) {
                std::size_t idx = prime_indices[local];
                sc.members.push_back(idx);
                sc.h += p.eigen[idx].alg_mult;
                sc.h_bar += p.eigen[idx].ones_in_blocks();
            }
            p.classes.push_back(std::move(sc));
        }
        for (const auto& w : dep.witnesses)
            p.witnesses.push_back({prime_indices[w.i], prime_indices[w.j], w.witness});
    }
    return p;
}

namespace {

std::vector<unsigned long> divisors_ascending(unsigned long n) {
    std::vector<unsigned long> out;
    for (unsigned long d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    std::sort(out.begin(), out.end());
    return out;
}

// rank(A^k - I) = d - (blocks of root-of-unity eigenvalues whose order | k)
unsigned long rank_of_power_minus_identity(const SpectralProfile& p, unsigned long k) {
    unsigned long killed = 0;
    for (const auto& e : p.eigen)
        if (e.unity_order && k % *e.unity_order == 0) killed += e.blocks;
    return p.d - killed;
}

}  // namespace

unsigned long finite_global_order_k(const SpectralProfile& p, long r) {
    unsigned long lcm_orders = 1;
    for (const auto& e : p.eigen)
        if (e.unity_order) lcm_orders = std::lcm(lcm_orders, *e.unity_order);
    for (unsigned long k : divisors_ascending(lcm_orders))
        if (rank_of_power_minus_identity(p, k) <= static_cast<unsigned long>(r)) return k;
    throw std::logic_error("finite_global_order_k: no divisor reached the target rank");
}

RegularityVerdict classify(const SpectralProfile& p, long r) {
    if (r < 0 || r > static_cast<long>(p.d) - 2)
        throw std::invalid_argument("classify: r must lie in [0, d-2]");

    RegularityVerdict v;
    v.r = r;

    // (1) finite global r-order: the unity blocks alone can push the integer
    // rank of A^k - I down to r.
    const long unity_blocks = static_cast<long>(p.l) - static_cast<long>(p.l_bar);
    if (static_cast<long>(p.d) - unity_blocks <= r) {
        v.kind = RegularityVerdict::Kind::FiniteGlobalOrder;
        v.k = finite_global_order_k(p, r);
        return v;
    }

    // (2) some class gamma with l - l_bar + h - h_bar >= d - r
    long best_gap = 0;
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < p.classes.size(); ++i) {
        long gap = unity_blocks + static_cast<long>(p.classes[i].h) - static_cast<long>(p.classes[i].h_bar);
        if (gap >= static_cast<long>(p.d) - r && gap > best_gap) {
            best_gap = gap;
            best = i;
        }
    }
    if (best) {
        v.kind = RegularityVerdict::Kind::Exceptional;
        v.witness_class = best;
        return v;
    }

    v.kind = RegularityVerdict::Kind::Regular;
    if (!p.dependence_decisive) v.regular_at_bound = p.searched_bound;
    return v;
}

std::vector<RegularityVerdict> classify_all(const SpectralProfile& p) {
    std::vector<RegularityVerdict> rows;
    for (long r = 0; r + 2 <= static_cast<long>(p.d); ++r) rows.push_back(classify(p, r));
    if (p.d >= 1) {
        RegularityVerdict v;
        v.r = static_cast<long>(p.d) - 1;
        const long unity_blocks = static_cast<long>(p.l) - static_cast<long>(p.l_bar);
        if (static_cast<long>(p.d) - unity_blocks <= v.r) {
            v.kind = RegularityVerdict::Kind::FiniteGlobalOrder;
            v.k = finite_global_order_k(p, v.r);
        } else {
            v.kind = RegularityVerdict::Kind::ExceptionalByTheory;
        }
        rows.push_back(v);
    }
    RegularityVerdict triv;
    triv.r = static_cast<long>(p.d);
    triv.kind = RegularityVerdict::Kind::Trivial;
    rows.push_back(triv);
    return rows;
}

std::optional<CorollaryData> corollary_check(const SpectralProfile& p, const DependenceConfig& cfg) {
    std::vector<Rat> values;
    for (const auto& e : p.eigen) {
        if (!e.value.is_rational()) return std::nullopt;
        values.emplace_back(e.value.integer_value());
    }
    CorollaryData out;
    out.e = torus_rank_rational(values, cfg);
    out.f = is_squarefree(p.minimal) ? 0 : 1;
    out.consistent = true;
    for (long r = 0; r + 2 <= static_cast<long>(p.d); ++r) {
        if (static_cast<long>(out.e) + out.f > r + 1) {
            auto verdict = classify(p, r);
            if (verdict.kind != RegularityVerdict::Kind::Regular) out.consistent = false;
        }
    }
    return out;
}

const char* to_string(RegularityVerdict::Kind k) {
    switch (k) {
        case RegularityVerdict::Kind::Regular: return "regular";
        case RegularityVerdict::Kind::Exceptional: return "exceptional";
        case RegularityVerdict::Kind::FiniteGlobalOrder: return "finite-global-order";
        case RegularityVerdict::Kind::ExceptionalByTheory: return "exceptional-by-theory";
        case RegularityVerdict::Kind::Trivial: return "trivial";
    }
    return "?";
}

}  // namespace nrank

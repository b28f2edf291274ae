#include "nrank/invariant_factors.hpp"

#include <stdexcept>

namespace nrank {

namespace {

struct PolyMat {
    std::size_t n;
    std::vector<RationalPoly> e;
    RationalPoly& at(std::size_t i, std::size_t j) { return e[i * n + j]; }
};

}  // namespace

InvariantFactors invariant_factors(const IntegerMatrix& A) {
    const std::size_t n = A.dim();
    PolyMat m{n, {}};
    m.e.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            RationalPoly entry = RationalPoly::constant(-Rat(A(i, j)));
            if (i == j) entry = entry + RationalPoly::x_power(1);
            m.at(i, j) = entry;
        }

    std::vector<RationalPoly> diag;
    for (std::size_t s = 0; s < n; ++s) {
        while (true) {
            // Pivot of minimal degree; ties broken by first row-major index.
            long best = -1;
            std::size_t pi = s, pj = s;
            for (std::size_t i = s; i < n; ++i)
                for (std::size_t j = s; j < n; ++j) {
                    const auto& p = m.at(i, j);
                    if (p.is_zero()) continue;
                    if (best < 0 || p.degree() < best) {
                        best = p.degree();
                        pi = i;
                        pj = j;
                    }
                }
            if (best < 0) throw std::logic_error("xI - A cannot be rank deficient");
            if (pi != s)
                for (std::size_t j = s; j < n; ++j) std::swap(m.at(pi, j), m.at(s, j));
            if (pj != s)
                for (std::size_t i = s; i < n; ++i) std::swap(m.at(i, pj), m.at(i, s));

            bool clean = true;
            for (std::size_t i = s + 1; i < n; ++i) {
                if (m.at(i, s).is_zero()) continue;
                auto [q, r] = m.at(i, s).divmod(m.at(s, s));
                for (std::size_t j = s; j < n; ++j) m.at(i, j) = m.at(i, j) - q * m.at(s, j);
                if (!r.is_zero()) {
                    for (std::size_t j = s; j < n; ++j) std::swap(m.at(i, j), m.at(s, j));
                    clean = false;
                    break;
                }
            }
            if (!clean) continue;
            for (std::size_t j = s + 1; j < n; ++j) {
                if (m.at(s, j).is_zero()) continue;
                auto [q, r] = m.at(s, j).divmod(m.at(s, s));
                for (std::size_t i = s; i < n; ++i) m.at(i, j) = m.at(i, j) - q * m.at(i, s);
                if (!r.is_zero()) {
                    for (std::size_t i = s; i < n; ++i) std::swap(m.at(i, j), m.at(i, s));
                    clean = false;
                    break;
                }
            }
            if (!clean) continue;

            // Pivot must divide the rest of the submatrix.
            bool divides = true;
            for (std::size_t i = s + 1; i < n && divides; ++i)
                for (std::size_t j = s + 1; j < n; ++j) {
                    if (m.at(i, j).divmod(m.at(s, s)).second.is_zero()) continue;
                    for (std::size_t c = s; c < n; ++c) m.at(s, c) = m.at(s, c) + m.at(i, c);
                    divides = false;
                    break;
                }
            if (divides) break;
        }
        diag.push_back(m.at(s, s).monic());
    }

    InvariantFactors out;
    for (auto& p : diag)
        if (p.degree() >= 1) out.factors.push_back(std::move(p));
    return out;
}

std::size_t jordan_block_count(const InvariantFactors& inv, const RationalPoly& g) {
    std::size_t count = 0;
    for (const auto& f : inv.factors)
        if (f.divmod(g).second.is_zero()) ++count;
    return count;
}

IntegerMatrix eval_poly_at_matrix(const RationalPoly& p, const IntegerMatrix& A) {
    if (!p.has_integer_coeffs()) throw std::invalid_argument("eval_poly_at_matrix: integer coefficients required");
    const std::size_t d = A.dim();
    IntegerMatrix acc(d);
    for (long i = p.degree(); i >= 0; --i) {
        acc = acc * A;
        Int c = p[static_cast<std::size_t>(i)].get_num();
        for (std::size_t k = 0; k < d; ++k) acc(k, k) += c;
    }
    return acc;
}

}  // namespace nrank

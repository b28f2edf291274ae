#include "nrank/smith.hpp"

#include <algorithm>
#include <stdexcept>

namespace nrank {

Int minor_det(const IntegerMatrix& A, const MinorIndex& idx) {
    if (idx.rows.size() != idx.cols.size()) throw std::invalid_argument("minor_det: |rows| != |cols|");
    const std::size_t r = idx.rows.size();
    if (r == 0) return 1;
    for (std::size_t t = 0; t < r; ++t) {
        if (idx.rows[t] >= A.dim() || idx.cols[t] >= A.dim()) throw std::out_of_range("minor_det: index out of range");
        if (t + 1 < r && (idx.rows[t] >= idx.rows[t + 1] || idx.cols[t] >= idx.cols[t + 1]))
            throw std::invalid_argument("minor_det: indices must be strictly increasing");
    }
    IntegerMatrix sub(r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) sub(i, j) = A(idx.rows[i], idx.cols[j]);
    return sub.det();
}

std::vector<std::vector<std::size_t>> index_subsets(std::size_t d, std::size_t r) {
    std::vector<std::vector<std::size_t>> out;
    if (r > d) return out;
    std::vector<std::size_t> cur(r);
    for (std::size_t i = 0; i < r; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        // advance to next lexicographic r-subset
        std::size_t i = r;
        while (i > 0) {
            --i;
            if (cur[i] != i + d - r) {
                ++cur[i];
                for (std::size_t j = i + 1; j < r; ++j) cur[j] = cur[j - 1] + 1;
                i = r + 1;
                break;
            }
        }
        if (i != r + 1) break;
        if (r == 0) break;
    }
    if (r == 0) out.assign(1, {});
    return out;
}

std::vector<Int> all_minors(const IntegerMatrix& A, std::size_t r) {
    std::vector<Int> out;
    const auto subsets = index_subsets(A.dim(), r);
    for (const auto& J : subsets)
        for (const auto& K : subsets) out.push_back(minor_det(A, MinorIndex{J, K}));
    return out;
}

IntegerMatrix exterior_power(const IntegerMatrix& A, std::size_t r) {
    if (r < 1 || r > A.dim()) throw std::invalid_argument("exterior_power: r out of range");
    const auto subsets = index_subsets(A.dim(), r);
    IntegerMatrix W(subsets.size());
    for (std::size_t a = 0; a < subsets.size(); ++a)
        for (std::size_t b = 0; b < subsets.size(); ++b) W(a, b) = minor_det(A, MinorIndex{subsets[a], subsets[b]});
    return W;
}

namespace {

struct Mat {
    std::size_t n;
    std::vector<Int> e;
    Int& at(std::size_t i, std::size_t j) { return e[i * n + j]; }
};

void row_op(Mat& m, std::size_t dst, std::size_t src, const Int& q, std::size_t from) {
    for (std::size_t j = from; j < m.n; ++j) m.at(dst, j) -= q * m.at(src, j);
}

void col_op(Mat& m, std::size_t dst, std::size_t src, const Int& q, std::size_t from) {
    for (std::size_t i = from; i < m.n; ++i) m.at(i, dst) -= q * m.at(i, src);
}

}  // namespace

SmithNormalForm smith_normal_form(const IntegerMatrix& A) {
    const std::size_t n = A.dim();
    Mat m{n, {}};
    m.e.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = A(i, j);

    SmithNormalForm snf;
    snf.diag.assign(n, Int(0));

    for (std::size_t s = 0; s < n; ++s) {
        // Locate a nonzero entry of minimal absolute value in the submatrix.
        bool found = false;
        std::size_t pi = s, pj = s;
        Int best;
        for (std::size_t i = s; i < n; ++i)
            for (std::size_t j = s; j < n; ++j) {
                if (m.at(i, j) == 0) continue;
                Int a = abs(m.at(i, j));
                if (!found || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;  // remaining diagonal stays zero

        for (std::size_t j = s; j < n; ++j) swap(m.at(pi, j), m.at(s, j));
        for (std::size_t i = s; i < n; ++i) swap(m.at(i, pj), m.at(i, s));

        while (true) {
            // Kill the pivot row and column by Euclidean steps.
            bool clean = true;
            for (std::size_t i = s + 1; i < n; ++i) {
                if (m.at(i, s) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), m.at(i, s).get_mpz_t(), m.at(s, s).get_mpz_t());
                row_op(m, i, s, q, s);
                if (m.at(i, s) != 0) {
                    for (std::size_t j = s; j < n; ++j) swap(m.at(i, j), m.at(s, j));
                    clean = false;
                }
            }
            for (std::size_t j = s + 1; j < n; ++j) {
                if (m.at(s, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), m.at(s, j).get_mpz_t(), m.at(s, s).get_mpz_t());
                col_op(m, j, s, q, s);
                if (m.at(s, j) != 0) {
                    for (std::size_t i = s; i < n; ++i) swap(m.at(i, j), m.at(i, s));
                    clean = false;
                }
            }
            if (!clean) continue;
            // Pivot must divide every remaining entry; if not, absorb the
            // offending row and restart the reduction.
            bool divides = true;
            for (std::size_t i = s + 1; i < n && divides; ++i)
                for (std::size_t j = s + 1; j < n; ++j)
                    if (!mpz_divisible_p(m.at(i, j).get_mpz_t(), m.at(s, s).get_mpz_t())) {
                        for (std::size_t c = s; c < n; ++c) m.at(s, c) += m.at(i, c);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        snf.diag[s] = abs(m.at(s, s));
    }
    return snf;
}

Int determinant_ideal_gen(const IntegerMatrix& A, std::size_t r) {
    if (r == 0) return 1;
    if (r > A.dim()) return 0;
    const auto snf = smith_normal_form(A);
    Int g = 1;
    for (std::size_t i = 0; i < r; ++i) g *= snf.diag[i];
    return g;
}

Int determinant_ideal_gen_minors(const IntegerMatrix& A, std::size_t r) {
    if (r == 0) return 1;
    if (r > A.dim()) return 0;
    Int g = 0;
    for (const auto& m : all_minors(A, r)) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

std::size_t n_rank(const IntegerMatrix& A, const Int& N) {
    if (N < 2) throw std::invalid_argument("n_rank: modulus must be >= 2");
    const auto snf = smith_normal_form(A);
    Int prod = 1;
    std::size_t r = 0;
    for (std::size_t i = 0; i < snf.diag.size(); ++i) {
        prod *= snf.diag[i];
        if (mpz_divisible_p(prod.get_mpz_t(), N.get_mpz_t())) break;
        r = i + 1;
    }
    return r;
}

std::size_t n_rank_minors(const IntegerMatrix& A, const Int& N) {
    if (N < 2) throw std::invalid_argument("n_rank_minors: modulus must be >= 2");
    for (std::size_t r = A.dim(); r >= 1; --r)
        for (const auto& m : all_minors(A, r))
            if (!mpz_divisible_p(m.get_mpz_t(), N.get_mpz_t())) return r;
    return 0;
}

bool n_rank_at_most(const IntegerMatrix& A, const Int& N, std::size_t r) {
    if (r >= A.dim()) return true;
    const auto subsets = index_subsets(A.dim(), r + 1);
    for (const auto& J : subsets)
        for (const auto& K : subsets) {
            Int m = minor_det(A, MinorIndex{J, K});
            if (!mpz_divisible_p(m.get_mpz_t(), N.get_mpz_t())) return false;
        }
    return true;
}

}  // namespace nrank

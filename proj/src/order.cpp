#include "nrank/order.hpp"

#include <mpfr.h>

#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "nrank/errors.hpp"
#include "nrank/smith.hpp"

namespace nrank {

double log_of_int(const Int& v) {
    if (v <= 0) throw std::invalid_argument("log_of_int: positive argument required");
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_set_z(t, v.get_mpz_t(), MPFR_RNDN);
    mpfr_log(t, t, MPFR_RNDN);
    double out = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return out;
}

namespace {

std::string state_key(const IntegerMatrix& M) {
    std::string s;
    for (std::size_t i = 0; i < M.dim(); ++i)
        for (std::size_t j = 0; j < M.dim(); ++j) {
            s += M(i, j).get_str();
            s += ',';
        }
    return s;
}

IntegerMatrix minus_identity_mod(const IntegerMatrix& M, const Int& N) {
    IntegerMatrix R = M;
    for (std::size_t i = 0; i < R.dim(); ++i) R(i, i) -= 1;
    return R.reduced_mod(N);
}

}  // namespace

OrderResult ord_r(const IntegerMatrix& A, const Int& N, std::size_t r, std::size_t max_states) {
    if (N < 2) throw std::invalid_argument("ord_r: modulus must be >= 2");
    if (r > A.dim()) throw std::invalid_argument("ord_r: r out of range");
    IntegerMatrix base = A.reduced_mod(N);
    IntegerMatrix M = base;
    std::map<std::string, unsigned long> seen;
    for (unsigned long k = 1;; ++k) {
        if (n_rank_at_most(minus_identity_mod(M, N), N, r)) return {true, k, 0, 0};
        auto [it, fresh] = seen.try_emplace(state_key(M), k);
        if (!fresh) {
            OrderResult res;
            res.finite = false;
            res.preperiod = it->second - 1;
            res.period = k - it->second;
            return res;
        }
        if (seen.size() > max_states) throw CapExceeded("ord_r: state budget exceeded");
        M = (M * base).reduced_mod(N);
    }
}

MatrixOrderCheck ord0_matches_matrix_order(const IntegerMatrix& A, const Int& N, unsigned long max_steps) {
    Int d = A.det();
    Int g;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), N.get_mpz_t());
    if (g != 1) throw std::invalid_argument("ord0_matches_matrix_order: matrix is singular mod N");
    IntegerMatrix base = A.reduced_mod(N);
    IntegerMatrix M = base;
    const IntegerMatrix I = IntegerMatrix::identity(A.dim()).reduced_mod(N);
    unsigned long order = 0;
    for (unsigned long k = 1; k <= max_steps; ++k) {
        if (M == I) {
            order = k;
            break;
        }
        M = (M * base).reduced_mod(N);
    }
    if (order == 0) throw CapExceeded("ord0_matches_matrix_order: step budget exceeded");
    auto via_minors = ord_r(A, N, 0);
    return {via_minors.finite && via_minors.value == order, order};
}

namespace {

Int gcd_of_minors(const IntegerMatrix& M, std::size_t order) {
    Int g = 0;
    const auto subsets = index_subsets(M.dim(), order);
    for (const auto& J : subsets) {
        for (const auto& K : subsets) {
            Int m = minor_det(M, MinorIndex{J, K});
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
            if (g == 1) return g;
        }
    }
    return g;
}

GrowthPoint growth_point(unsigned long n, Int g) {
    GrowthPoint pt;
    pt.n = n;
    pt.log_gcd = (g == 0) ? std::numeric_limits<double>::infinity() : (g == 1 ? 0.0 : log_of_int(g));
    pt.gcd = std::move(g);
    return pt;
}

}  // namespace

GrowthSeries gcd_growth_series(const IntegerMatrix& A, std::size_t r, unsigned long n_max) {
    if (r + 1 > A.dim()) throw std::invalid_argument("gcd_growth_series: r+1 exceeds dimension");
    GrowthSeries out;
    out.r = r;
    IntegerMatrix P = IntegerMatrix::identity(A.dim());
    for (unsigned long n = 1; n <= n_max; ++n) {
        P = P * A;
        IntegerMatrix M = P;
        for (std::size_t i = 0; i < M.dim(); ++i) M(i, i) -= 1;
        out.points.push_back(growth_point(n, gcd_of_minors(M, r + 1)));
    }
    return out;
}

std::optional<unsigned long> k_invariant(const IntegerMatrix& A, const Int& N, unsigned long n_max) {
    if (N < 2) throw std::invalid_argument("k_invariant: modulus must be >= 2");
    const std::size_t d = A.dim();
    unsigned long d_factorial = 1;
    for (std::size_t i = 2; i <= d; ++i) d_factorial *= i;
    IntegerMatrix P = IntegerMatrix::identity(d);
    for (unsigned long n = 1; n <= n_max; ++n) {
        P = P * A;
        IntegerMatrix M = P;
        for (std::size_t i = 0; i < d; ++i) M(i, i) -= 1;
        auto cp = char_poly(M);  // det(xI - M) = sum (-1)^k alpha_k x^(d-k)
        bool all = true;
        for (std::size_t k = 1; k <= d && all; ++k) {
            Int alpha = cp[d - k].get_num();
            if (k % 2) alpha = -alpha;
            Int e(static_cast<unsigned long>(d_factorial / k));
            Int r;
            Int base;
            mpz_mod(base.get_mpz_t(), alpha.get_mpz_t(), N.get_mpz_t());
            mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), N.get_mpz_t());
            if (r != 0) all = false;
        }
        if (all) return n;
    }
    return std::nullopt;
}

Int lemma_minor_det(const Int& eta, std::size_t k, unsigned long n) {
    // (B^n)_{i,j} = C(n, j-i) eta^{n-(j-i)} for j >= i; the minor takes rows
    // 1..k and columns 2..k+1, so the only identity hits are at j = i - 1.
    IntegerMatrix C(k);
    for (std::size_t i = 1; i <= k; ++i)
        for (std::size_t j = 2; j <= k + 1; ++j) {
            long off = static_cast<long>(j) - static_cast<long>(i);
            Int v = 0;
            if (off >= 0 && static_cast<unsigned long>(off) <= n) {
                Int binom;
                mpz_bin_uiui(binom.get_mpz_t(), n, static_cast<unsigned long>(off));
                Int pw;
                mpz_pow_ui(pw.get_mpz_t(), eta.get_mpz_t(), n - static_cast<unsigned long>(off));
                v = binom * pw;
            }
            if (i == j) v -= 1;
            C(i - 1, j - 2) = v;
        }
    return C.det();
}

GrowthSeries lemma_gcd_check(const Int& lambda, const Int& eta, std::size_t k, unsigned long n_max,
                             const DependenceConfig& cfg) {
    if (lambda < 2) throw std::invalid_argument("lemma_gcd_check: lambda must be >= 2");
    if (k < 1) throw std::invalid_argument("lemma_gcd_check: k must be >= 1");
    if (eta == 0) throw std::invalid_argument("lemma_gcd_check: eta must be nonzero");
    if (eta != 1 && eta != -1) {
        // validate multiplicative dependence of lambda and eta over Z
        auto fl = factor_integer(lambda, cfg.trial_division_bound, cfg.rho_iterations);
        auto fe = factor_integer(eta, cfg.trial_division_bound, cfg.rho_iterations);
        if (!fl || !fe) throw CapExceeded("lemma_gcd_check: factorization cap");
        bool ok = fl->size() == fe->size();
        long c = 0, d = 0;
        if (ok)
            for (auto il = fl->begin(), ie = fe->begin(); il != fl->end(); ++il, ++ie) {
                if (il->first != ie->first) {
                    ok = false;
                    break;
                }
                if (c == 0) {
                    c = il->second;
                    d = ie->second;
                } else if (static_cast<long>(il->second) * d != static_cast<long>(ie->second) * c) {
                    ok = false;
                    break;
                }
            }
        if (!ok) throw std::invalid_argument("lemma_gcd_check: lambda and eta are multiplicatively independent");
    }

    GrowthSeries out;
    out.r = k;
    Int lam_pow = 1;
    for (unsigned long n = 1; n <= n_max; ++n) {
        lam_pow *= lambda;
        Int lhs = lam_pow - 1;
        Int det = abs(lemma_minor_det(eta, k, n));
        Int g;
        mpz_gcd(g.get_mpz_t(), lhs.get_mpz_t(), det.get_mpz_t());
        out.points.push_back(growth_point(n, std::move(g)));
    }
    return out;
}

WitnessSeries exceptional_witness_series(const IntegerMatrix& A, const SpectralProfile& profile, long r,
                                         unsigned long n_max, const DependenceConfig& cfg) {
    auto verdict = classify(profile, r);
    if (verdict.kind != RegularityVerdict::Kind::Exceptional)
        throw std::invalid_argument("exceptional_witness_series: matrix is not r-exceptional at this r");
    const SpectralClass& cls = profile.classes[*verdict.witness_class];

    // representative of minimal height (interval midpoints; ties by index)
    std::size_t rep = cls.members.front();
    QInterval best_h;
    bool first = true;
    std::map<std::size_t, QInterval> heights;
    for (auto idx : cls.members) {
        auto h = weil_height(profile.eigen[idx].value, cfg.precision_bits);
        heights.emplace(idx, h.value);
        if (first || h.value.mid() < best_h.mid()) {
            best_h = h.value;
            rep = idx;
            first = false;
        }
    }

    // m = lcm of the torsion order (root-of-unity eigenvalues) and the b_i
    // from lambda_rep^{a_i} = lambda_i^{b_i}
    unsigned long m = 1;
    for (const auto& e : profile.eigen)
        if (e.unity_order) m = std::lcm(m, *e.unity_order);
    for (const auto& w : profile.witnesses) {
        bool fwd = w.i == rep, bwd = w.j == rep;
        if (!fwd && !bwd) continue;
        long b = fwd ? w.witness.a2 : w.witness.a1;
        if (b != 0) m = std::lcm(m, static_cast<unsigned long>(b < 0 ? -b : b));
    }

    WitnessSeries out;
    out.m = m;
    out.rep_index = rep;
    out.rep_height_lo = to_double(heights.at(rep).lo);
    out.rep_height_hi = to_double(heights.at(rep).hi);
    out.series.r = static_cast<std::size_t>(r);

    IntegerMatrix P = IntegerMatrix::identity(A.dim());
    IntegerMatrix Am = A.pow(m);
    for (unsigned long n = m; n <= n_max; n += m) {
        P = P * Am;
        IntegerMatrix M = P;
        for (std::size_t i = 0; i < M.dim(); ++i) M(i, i) -= 1;
        out.series.points.push_back(growth_point(n, gcd_of_minors(M, static_cast<std::size_t>(r) + 1)));
    }
    return out;
}

SlopeFit fit_slope(const GrowthSeries& s, unsigned long n_lo, unsigned long n_hi) {
    SlopeFit fit;
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : s.points) {
        if (p.n < n_lo || p.n > n_hi) continue;
        if (!std::isfinite(p.log_gcd)) continue;
        pts.emplace_back(static_cast<double>(p.n), p.log_gcd);
    }
    fit.used = pts.size();
    if (pts.size() < 2) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (auto [x, y] : pts) {
        double e = y - (fit.slope * x + fit.intercept);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

SlopeFit fit_slope_top_half(const GrowthSeries& s) {
    if (s.points.empty()) return {};
    unsigned long lo = s.points[s.points.size() / 2].n;
    return fit_slope(s, lo, s.points.back().n);
}

}  // namespace nrank

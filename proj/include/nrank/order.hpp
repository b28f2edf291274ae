#pragma once

#include <optional>
#include <vector>

#include "nrank/spectral.hpp"

namespace nrank {

// Either the minimal k with N-rank(A^k - I) <= r, or proof that none exists:
// the cycle of A^k mod N closed without a hit.
struct OrderResult {
    bool finite = false;
    unsigned long value = 0;      // when finite
    unsigned long period = 0;     // when infinite
    unsigned long preperiod = 0;  // states before the cycle (0 if pure)
};

OrderResult ord_r(const IntegerMatrix& A, const Int& N, std::size_t r, std::size_t max_states = 1u << 22);

struct MatrixOrderCheck {
    bool matches;
    unsigned long order;  // multiplicative order of A in GL_d(Z/N)
};

// Multiplicative order by direct iteration, compared against ord_r(A, N, 0).
MatrixOrderCheck ord0_matches_matrix_order(const IntegerMatrix& A, const Int& N,
                                           unsigned long max_steps = 1u << 24);

struct GrowthPoint {
    unsigned long n;
    Int gcd;         // 0 when every minor vanishes
    double log_gcd;  // natural log; +inf when gcd == 0
};

struct GrowthSeries {
    std::size_t r = 0;  // minors of order r+1 were used
    std::vector<GrowthPoint> points;
};

// Exact gcd over all (r+1)-minors of A^n - I for n = 1..n_max.
GrowthSeries gcd_growth_series(const IntegerMatrix& A, std::size_t r, unsigned long n_max);

// Smallest n <= n_max such that N divides alpha_{n,k}^(d!/k) for all k,
// where the alpha_{n,k} are the invariants (characteristic coefficients up
// to sign) of A^n - I. nullopt when not found.
std::optional<unsigned long> k_invariant(const IntegerMatrix& A, const Int& N, unsigned long n_max);

// log gcd(lambda^n - 1, det C_{n,k}(eta)) where C_{n,k}(eta) is the k x k
// minor of B(eta)^n - I on rows 1..k and columns 2..k+1 of the Jordan block
// of order k+1; entries come from the binomial closed form.
GrowthSeries lemma_gcd_check(const Int& lambda, const Int& eta, std::size_t k, unsigned long n_max,
                             const DependenceConfig& cfg = {});

// det C_{n,k}(eta), exposed for oracle tests.
Int lemma_minor_det(const Int& eta, std::size_t k, unsigned long n);

struct WitnessSeries {
    unsigned long m = 1;          // subsequence modulus: lcm of torsion and witness exponents
    std::size_t rep_index = 0;    // minimal-height representative within the class
    double rep_height_lo = 0;     // h(lambda_1) enclosure
    double rep_height_hi = 0;
    GrowthSeries series;          // points restricted to n = m, 2m, ...
};

// The Case-2 subsequence along which the gcd of (r+1)-minors grows linearly.
WitnessSeries exceptional_witness_series(const IntegerMatrix& A, const SpectralProfile& profile, long r,
                                         unsigned long n_max, const DependenceConfig& cfg = {});

struct SlopeFit {
    double slope = 0;
    double intercept = 0;
    double residual = 0;  // root mean square
    std::size_t used = 0;
};

// Least squares of log_gcd against n over [n_lo, n_hi] (gcd = 0 rows and
// log 0 rows are skipped).
SlopeFit fit_slope(const GrowthSeries& s, unsigned long n_lo, unsigned long n_hi);
// Convenience: fit over the top half of the series.
SlopeFit fit_slope_top_half(const GrowthSeries& s);

double log_of_int(const Int& v);  // natural log at double precision via MPFR

}  // namespace nrank

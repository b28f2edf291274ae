#include "nrank/rational_poly.hpp"

#include <sstream>
#include <stdexcept>

#include "nrank/errors.hpp"

namespace nrank {

RationalPoly::RationalPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { normalize(); }

RationalPoly::RationalPoly(std::initializer_list<long> ints) {
    c_.reserve(ints.size());
    for (long v : ints) c_.emplace_back(v);
    normalize();
}

RationalPoly RationalPoly::constant(const Rat& c) {
    RationalPoly p;
    if (c != 0) p.c_.push_back(c);
    return p;
}

RationalPoly RationalPoly::x_power(std::size_t n) {
    RationalPoly p;
    p.c_.assign(n + 1, Rat(0));
    p.c_[n] = 1;
    return p;
}

RationalPoly RationalPoly::linear(const Rat& a, const Rat& b) {
    return RationalPoly(std::vector<Rat>{a, b});
}

void RationalPoly::normalize() {
    for (auto& q : c_) q.canonicalize();
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rat& RationalPoly::operator[](std::size_t i) const {
    static const Rat kZero(0);
    return i < c_.size() ? c_[i] : kZero;
}

const Rat& RationalPoly::leading() const {
    if (c_.empty()) throw std::invalid_argument("leading coefficient of zero polynomial");
    return c_.back();
}

bool RationalPoly::is_monic() const { return !c_.empty() && c_.back() == 1; }

bool RationalPoly::has_integer_coeffs() const {
    for (const auto& q : c_)
        if (q.get_den() != 1) return false;
    return true;
}

RationalPoly RationalPoly::operator+(const RationalPoly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return RationalPoly(std::move(r));
}

RationalPoly RationalPoly::operator-(const RationalPoly& o) const { return *this + (-o); }

RationalPoly RationalPoly::operator-() const {
    std::vector<Rat> r(c_);
    for (auto& q : r) q = -q;
    return RationalPoly(std::move(r));
}

RationalPoly RationalPoly::operator*(const RationalPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return RationalPoly(std::move(r));
}

RationalPoly RationalPoly::operator*(const Rat& s) const {
    std::vector<Rat> r(c_);
    for (auto& q : r) q *= s;
    return RationalPoly(std::move(r));
}

std::pair<RationalPoly, RationalPoly> RationalPoly::divmod(const RationalPoly& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("polynomial division by zero");
    std::vector<Rat> rem(c_);
    const long dd = divisor.degree();
    long dr = static_cast<long>(rem.size()) - 1;
    while (dr >= 0 && rem[dr] == 0) --dr;
    if (dr < dd) return {RationalPoly(), RationalPoly(std::move(rem))};
    std::vector<Rat> quot(dr - dd + 1, Rat(0));
    const Rat& lead = divisor.leading();
    for (long i = dr; i >= dd; --i) {
        if (rem[i] == 0) continue;
        Rat q = rem[i] / lead;
        quot[i - dd] = q;
        for (long j = 0; j <= dd; ++j) rem[i - dd + j] -= q * divisor.c_[j];
    }
    return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
}

RationalPoly RationalPoly::divexact(const RationalPoly& divisor) const {
    auto [q, r] = divmod(divisor);
    if (!r.is_zero()) throw std::invalid_argument("divexact: nonzero remainder");
    return q;
}

RationalPoly RationalPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rat> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return RationalPoly(std::move(r));
}

RationalPoly RationalPoly::monic() const {
    if (is_zero()) return {};
    std::vector<Rat> r(c_);
    Rat lead = c_.back();
    for (auto& q : r) q /= lead;
    return RationalPoly(std::move(r));
}

RationalPoly RationalPoly::pow(unsigned long k) const {
    RationalPoly acc = RationalPoly::constant(1), base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return acc;
}

Rat RationalPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (std::size_t i = c_.size(); i > 0; --i) acc = acc * x + c_[i - 1];
    return acc;
}

RationalPoly RationalPoly::compose_x_power(unsigned long k) const {
    if (k == 0) throw std::invalid_argument("compose_x_power: k must be positive");
    if (is_zero()) return {};
    std::vector<Rat> r((c_.size() - 1) * k + 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i * k] = c_[i];
    return RationalPoly(std::move(r));
}

RationalPoly RationalPoly::reversed_monic() const {
    if (is_zero() || c_[0] == 0) throw std::invalid_argument("reversed_monic: zero constant term");
    std::vector<Rat> r(c_.rbegin(), c_.rend());
    return RationalPoly(std::move(r)).monic();
}

std::pair<Rat, std::vector<Int>> RationalPoly::primitive_integer() const {
    if (is_zero()) return {Rat(0), {}};
    Int den(1);
    for (const auto& q : c_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Int> z(c_.size());
    Int content(0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        Rat scaled = c_[i] * Rat(den);
        scaled.canonicalize();
        z[i] = scaled.get_num();  // denominator is 1 after scaling
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z[i].get_mpz_t());
    }
    if (z.back() < 0) content = -content;
    for (auto& v : z) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
    Rat c = Rat(content) / Rat(den);
    c.canonicalize();
    return {c, z};
}

RationalPoly gcd(const RationalPoly& a, const RationalPoly& b) {
    RationalPoly u = a, v = b;
    while (!v.is_zero()) {
        auto r = u.divmod(v).second;
        u = v;
        v = r.is_zero() ? r : r.monic();
    }
    return u.is_zero() ? u : u.monic();
}

bool is_squarefree(const RationalPoly& p) {
    if (p.degree() <= 1) return true;
    return gcd(p, p.derivative()).degree() == 0;
}

namespace {

Rat rat_pow(const Rat& base, unsigned long e) {
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
    r.canonicalize();
    return r;
}

}  // namespace

Rat resultant(const RationalPoly& f, const RationalPoly& g) {
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant of zero polynomial");
    const long n = f.degree(), m = g.degree();
    if (n == 0) return rat_pow(f[0], static_cast<unsigned long>(m));
    if (m == 0) return rat_pow(g[0], static_cast<unsigned long>(n));
    // Clear denominators, take a Bareiss determinant of the Sylvester matrix
    // over Z, rescale afterwards.
    auto [cf, F] = f.primitive_integer();
    auto [cg, G] = g.primitive_integer();
    const std::size_t N = static_cast<std::size_t>(n + m);
    IntegerMatrix S(N);
    for (long i = 0; i < m; ++i)
        for (long j = 0; j <= n; ++j) S(i, i + j) = F[n - j];
    for (long i = 0; i < n; ++i)
        for (long j = 0; j <= m; ++j) S(m + i, i + j) = G[m - j];
    return Rat(S.det()) * rat_pow(cf, static_cast<unsigned long>(m)) * rat_pow(cg, static_cast<unsigned long>(n));
}

RationalPoly char_poly(const IntegerMatrix& A) {
    const std::size_t d = A.dim();
    std::vector<Rat> coeffs(d + 1, Rat(0));
    coeffs[d] = 1;
    if (d == 0) return RationalPoly(std::move(coeffs));
    IntegerMatrix M = A;  // Faddeev-LeVerrier auxiliary sequence
    std::vector<Int> c(d + 1);
    c[d] = 1;
    for (std::size_t k = 1; k <= d; ++k) {
        if (k > 1) {
            IntegerMatrix shifted = M;
            for (std::size_t i = 0; i < d; ++i) shifted(i, i) += c[d - k + 1];
            M = A * shifted;
        }
        Int t = M.trace();
        Int ck;
        // the trace is always divisible by k here
        mpz_divexact_ui(ck.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(k));
        c[d - k] = -ck;
        coeffs[d - k] = Rat(c[d - k]);
    }
    return RationalPoly(std::move(coeffs));
}

std::vector<Rat> root_power_sums(const RationalPoly& p, std::size_t k) {
    if (!p.is_monic()) throw std::invalid_argument("root_power_sums: polynomial must be monic");
    const std::size_t n = static_cast<std::size_t>(p.degree());
    std::vector<Rat> ps(k, Rat(0));  // ps[m-1] = p_m
    for (std::size_t m = 1; m <= k; ++m) {
        Rat s(0);
        if (m <= n) {
            for (std::size_t i = 1; i < m; ++i) s += p[n - i] * ps[m - i - 1];
            s += Rat(static_cast<long>(m)) * p[n - m];
        } else {
            for (std::size_t i = 1; i <= n; ++i) s += p[n - i] * ps[m - i - 1];
        }
        ps[m - 1] = -s;
    }
    return ps;
}

RationalPoly poly_from_power_sums(const std::vector<Rat>& sums) {
    const std::size_t n = sums.size();
    // e_k = (1/k) * sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i
    std::vector<Rat> e(n + 1, Rat(0));
    e[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        Rat s(0);
        for (std::size_t i = 1; i <= k; ++i) {
            Rat term = e[k - i] * sums[i - 1];
            if (i % 2 == 0) s -= term; else s += term;
        }
        e[k] = s / Rat(static_cast<long>(k));
    }
    std::vector<Rat> coeffs(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        Rat v = e[n - k];
        if ((n - k) % 2) v = -v;
        coeffs[k] = v;
    }
    return RationalPoly(std::move(coeffs));
}

RationalPoly power_roots_poly(const RationalPoly& monic, unsigned long t) {
    if (t == 0) throw std::invalid_argument("power_roots_poly: t must be positive");
    const std::size_t n = static_cast<std::size_t>(monic.degree());
    auto ps = root_power_sums(monic, n * t);
    std::vector<Rat> sub(n);
    for (std::size_t k = 1; k <= n; ++k) sub[k - 1] = ps[k * t - 1];
    return poly_from_power_sums(sub);
}

RationalPoly product_roots_poly(const RationalPoly& f, const RationalPoly& g) {
    if (!f.is_monic() || !g.is_monic()) throw std::invalid_argument("product_roots_poly: monic inputs required");
    const std::size_t n = static_cast<std::size_t>(f.degree());
    const std::size_t m = static_cast<std::size_t>(g.degree());
    auto pf = root_power_sums(f, n * m);
    auto pg = root_power_sums(g, n * m);
    std::vector<Rat> prod(n * m);
    for (std::size_t k = 0; k < n * m; ++k) prod[k] = pf[k] * pg[k];
    return poly_from_power_sums(prod);
}

RationalPoly parse_poly(const std::string& text) {
    std::vector<Rat> coeffs;
    std::string tok;
    std::istringstream ss(text);
    while (std::getline(ss, tok, ',')) {
        const auto b = tok.find_first_not_of(" \t\r\n");
        const auto e = tok.find_last_not_of(" \t\r\n");
        if (b == std::string::npos) throw ParseError("polynomial: empty coefficient");
        tok = tok.substr(b, e - b + 1);
        try {
            Rat q(tok);
            q.canonicalize();
            coeffs.push_back(q);
        } catch (const std::invalid_argument&) {
            throw ParseError("polynomial: bad coefficient '" + tok + "'");
        }
    }
    if (coeffs.empty()) throw ParseError("polynomial: no coefficients");
    return RationalPoly(std::move(coeffs));
}

std::string format_poly(const RationalPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (long i = 0; i <= p.degree(); ++i) {
        if (i) out += ',';
        out += p[static_cast<std::size_t>(i)].get_str();
    }
    return out;
}

std::string pretty_poly(const RationalPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (long i = p.degree(); i >= 0; --i) {
        Rat c = p[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        const bool first = out.empty();
        if (c > 0 && !first) out += " + ";
        if (c < 0) out += first ? "-" : " - ";
        Rat a = abs(c);
        if (a != 1 || i == 0) out += a.get_str();
        if (i > 0) {
            out += "x";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace nrank

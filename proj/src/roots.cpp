#include "nrank/roots.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "nrank/errors.hpp"

namespace nrank {

namespace {

// --- signed remainder chains and Cauchy indices ------------------------------

// Divide by |leading| * |trailing-content-ish| to keep numbers small; any
// positive scaling preserves every sign pattern the chain is queried for.
RationalPoly positive_normalize(const RationalPoly& p) {
    if (p.is_zero()) return p;
    Rat lead = abs(p.leading());
    return p * (1 / lead);
}

std::vector<RationalPoly> signed_remainder_chain(const RationalPoly& f0, const RationalPoly& f1) {
    std::vector<RationalPoly> chain;
    chain.push_back(positive_normalize(f0));
    if (!f1.is_zero()) chain.push_back(positive_normalize(f1));
    while (chain.size() >= 2 && !chain.back().is_zero()) {
        const RationalPoly& a = chain[chain.size() - 2];
        const RationalPoly& b = chain.back();
        RationalPoly r = -(a.divmod(b).second);
        if (r.is_zero()) break;
        chain.push_back(positive_normalize(r));
    }
    return chain;
}

int sign_of(const Rat& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

long sign_variations_at(const std::vector<RationalPoly>& chain, const Rat& t) {
    long var = 0;
    int prev = 0;
    for (const auto& f : chain) {
        int s = sign_of(f.eval(t));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

// Cauchy index of S/R on [0, 1]. Requires R(0) != 0 and R(1) != 0 and no
// common zero of (R, S) inside the interval; otherwise nullopt.
std::optional<long> cauchy_index_01(const RationalPoly& R, const RationalPoly& S) {
    if (R.is_zero()) return std::nullopt;
    if (R.eval(0) == 0 || R.eval(1) == 0) return std::nullopt;
    auto chain = signed_remainder_chain(R, S);
    const RationalPoly& last = chain.back();
    if (last.degree() >= 1) {
        // common factor: reject if it has a zero on the edge, else divide out
        RationalPoly g = last;
        if (g.eval(0) == 0 || g.eval(1) == 0) return std::nullopt;
        auto sturm = signed_remainder_chain(g, g.derivative());
        if (sign_variations_at(sturm, 0) != sign_variations_at(sturm, 1)) return std::nullopt;
        return cauchy_index_01(R.divexact(g), S.divexact(g));
    }
    return sign_variations_at(chain, 0) - sign_variations_at(chain, 1);
}

// --- polynomial image of a segment -------------------------------------------

struct GaussPoly {
    // polynomial in t with Gaussian rational coefficients
    std::vector<std::pair<Rat, Rat>> c;
};

// p(z0 + t w) as (R(t), S(t)).
std::pair<RationalPoly, RationalPoly> edge_image(const RationalPoly& p, const Rat& z0re, const Rat& z0im,
                                                 const Rat& wre, const Rat& wim) {
    GaussPoly acc;
    for (long k = p.degree(); k >= 0; --k) {
        // acc = acc * (z0 + w t) + p_k
        GaussPoly next;
        next.c.assign(acc.c.size() + 1, {Rat(0), Rat(0)});
        for (std::size_t i = 0; i < acc.c.size(); ++i) {
            const auto& [ar, ai] = acc.c[i];
            next.c[i].first += ar * z0re - ai * z0im;
            next.c[i].second += ar * z0im + ai * z0re;
            next.c[i + 1].first += ar * wre - ai * wim;
            next.c[i + 1].second += ar * wim + ai * wre;
        }
        if (next.c.empty()) next.c.assign(1, {Rat(0), Rat(0)});
        next.c[0].first += p[static_cast<std::size_t>(k)];
        acc = std::move(next);
    }
    std::vector<Rat> re(acc.c.size()), im(acc.c.size());
    for (std::size_t i = 0; i < acc.c.size(); ++i) {
        re[i] = acc.c[i].first;
        im[i] = acc.c[i].second;
    }
    return {RationalPoly(std::move(re)), RationalPoly(std::move(im))};
}

}  // namespace

std::optional<long> count_roots_in_box(const RationalPoly& p, const BoxC& box) {
    if (p.degree() < 1) return 0;
    struct Corner {
        Rat x, y;
    };
    const Corner bl{box.re.lo, box.im.lo}, br{box.re.hi, box.im.lo}, tr{box.re.hi, box.im.hi}, tl{box.re.lo, box.im.hi};
    const Corner corners[5] = {bl, br, tr, tl, bl};
    long total = 0;
    for (int e = 0; e < 4; ++e) {
        const Corner &a = corners[e], &b = corners[e + 1];
        auto [R, S] = edge_image(p, a.x, a.y, b.x - a.x, b.y - a.y);
        auto idx = cauchy_index_01(R, S);
        if (!idx) return std::nullopt;
        total += *idx;
    }
    if (total % 2 != 0) return std::nullopt;
    long w = -total / 2;
    if (w < 0) return std::nullopt;
    return w;
}

namespace {

// deterministic split-nudge offsets as fractions of the side length
const Rat kSplitOffsets[] = {Rat(0),        Rat(1, 32),   Rat(-1, 32),  Rat(3, 64),  Rat(-3, 64),
                             Rat(5, 64),    Rat(-5, 64),  Rat(7, 128),  Rat(-7, 128), Rat(11, 128),
                             Rat(-11, 128), Rat(13, 256), Rat(-13, 256)};

struct CountedBox {
    BoxC box;
    long count;
};

std::optional<std::pair<CountedBox, CountedBox>> split_box(const RationalPoly& p, const CountedBox& cb) {
    const bool split_re = cb.box.re.width() >= cb.box.im.width();
    const QInterval& side = split_re ? cb.box.re : cb.box.im;
    for (const Rat& off : kSplitOffsets) {
        Rat cut = side.mid() + off * side.width();
        if (cut <= side.lo || cut >= side.hi) continue;
        BoxC first = cb.box, second = cb.box;
        if (split_re) {
            first.re = QInterval(side.lo, cut);
            second.re = QInterval(cut, side.hi);
        } else {
            first.im = QInterval(side.lo, cut);
            second.im = QInterval(cut, side.hi);
        }
        auto c1 = count_roots_in_box(p, first);
        if (!c1) continue;
        auto c2 = count_roots_in_box(p, second);
        if (!c2) continue;
        if (*c1 + *c2 != cb.count) continue;  // root on the cut slipped through
        return std::make_pair(CountedBox{first, *c1}, CountedBox{second, *c2});
    }
    return std::nullopt;
}

}  // namespace

std::vector<BoxC> isolate_roots(const RationalPoly& p_in) {
    if (p_in.is_zero()) throw std::invalid_argument("isolate_roots: zero polynomial");
    RationalPoly p = p_in.monic();
    RationalPoly g = gcd(p, p.derivative());
    if (g.degree() >= 1) p = p.divexact(g);
    if (p.degree() == 0) return {};
    if (p.degree() == 1) {
        Rat root = -p[0];
        return {box_point(root, Rat(0))};
    }

    // Cauchy bound: all roots lie strictly inside |z| < 1 + max |a_i|
    Rat bound(1);
    for (long i = 0; i < p.degree(); ++i) {
        Rat a = abs(p[static_cast<std::size_t>(i)]);
        if (a > bound) bound = a;
    }
    bound += 1;

    std::vector<BoxC> result;
    std::deque<CountedBox> work;
    for (int attempt = 0; attempt < 16; ++attempt) {
        Rat pad = Rat(attempt * 2 + 1, 37);
        BoxC whole{QInterval(-bound - pad, bound + pad + Rat(1, 53)),
                   QInterval(-bound - pad - Rat(1, 41), bound + pad + Rat(1, 59))};
        auto c = count_roots_in_box(p, whole);
        if (c && *c == p.degree()) {
            work.push_back({whole, *c});
            break;
        }
    }
    if (work.empty()) throw PrecisionFailure("isolate_roots: could not certify the initial enclosure");

    while (!work.empty()) {
        CountedBox cb = work.front();
        work.pop_front();
        if (cb.count == 0) continue;
        if (cb.count == 1) {
            result.push_back(cb.box);
            continue;
        }
        auto halves = split_box(p, cb);
        if (!halves) throw PrecisionFailure("isolate_roots: subdivision failed to avoid roots on cut lines");
        work.push_back(halves->first);
        work.push_back(halves->second);
    }

    std::sort(result.begin(), result.end(), [](const BoxC& a, const BoxC& b) {
        if (a.re.lo != b.re.lo) return a.re.lo < b.re.lo;
        return a.im.lo < b.im.lo;
    });
    return result;
}

BoxC eval_poly_box(const RationalPoly& p, const BoxC& z) {
    BoxC acc = box_point(Rat(0), Rat(0));
    for (long k = p.degree(); k >= 0; --k) {
        acc = acc * z;
        acc.re = acc.re + QInterval(p[static_cast<std::size_t>(k)]);
    }
    return acc;
}

std::pair<Rat, Rat> eval_poly_point(const RationalPoly& p, const Rat& re, const Rat& im) {
    Rat ar(0), ai(0);
    for (long k = p.degree(); k >= 0; --k) {
        Rat nr = ar * re - ai * im + p[static_cast<std::size_t>(k)];
        Rat ni = ar * im + ai * re;
        ar = std::move(nr);
        ai = std::move(ni);
    }
    return {ar, ai};
}

BoxC refine_root_box(const RationalPoly& p_in, BoxC box, unsigned bits) {
    RationalPoly p = p_in.monic();
    RationalPoly g = gcd(p, p.derivative());
    if (g.degree() >= 1) p = p.divexact(g);
    if (p.degree() < 1) throw std::invalid_argument("refine_root_box: constant polynomial");
    RationalPoly dp = p.derivative();

    Rat target(1);
    mpz_mul_2exp(target.get_den_mpz_t(), target.get_den_mpz_t(), bits);
    target.canonicalize();

    const unsigned round_bits = bits + 32;
    unsigned stall = 0;
    for (unsigned iter = 0; iter < 96 + 4 * bits; ++iter) {
        if (box.re.width() <= target && box.im.width() <= target) return box;

        bool stepped = false;
        BoxC d = eval_poly_box(dp, box);
        if (d.norm_sq().lo > 0 && stall < 3) {
            Rat mre = box.re.mid(), mim = box.im.mid();
            auto [pr, pi] = eval_poly_point(p, mre, mim);
            BoxC fm{QInterval(pr), QInterval(pi)};
            auto quot = fm.divide(d);
            if (quot) {
                BoxC newton{QInterval(mre) - quot->re, QInterval(mim) - quot->im};
                auto meet = newton.intersect(box);
                if (meet) {
                    BoxC rounded = round_outward(*meet, round_bits);
                    auto clipped = rounded.intersect(box);
                    if (clipped) {
                        Rat before = box.max_width();
                        if (clipped->max_width() < before) {
                            box = *clipped;
                            stepped = true;
                            stall = 0;
                        }
                    }
                }
            }
        }
        if (stepped) continue;

        // verified bisection on the wider side
        CountedBox cb{box, 1};
        auto halves = split_box(p, cb);
        if (!halves) throw PrecisionFailure("refine_root_box: bisection failed near the root");
        box = (halves->first.count == 1) ? halves->first.box : halves->second.box;
        ++stall;
    }
    throw PrecisionFailure("refine_root_box: iteration budget exhausted");
}

long count_real_roots(const RationalPoly& p_in, const Rat& a, const Rat& b) {
    RationalPoly p = p_in.monic();
    RationalPoly g = gcd(p, p.derivative());
    if (g.degree() >= 1) p = p.divexact(g);
    if (p.degree() < 1) return 0;
    if (p.eval(a) == 0 || p.eval(b) == 0) throw std::invalid_argument("count_real_roots: root at endpoint");
    auto chain = signed_remainder_chain(p, p.derivative());
    return sign_variations_at(chain, a) - sign_variations_at(chain, b);
}

}  // namespace nrank

#include "lnd/ring.hpp"

#include "lnd/error.hpp"

#include <algorithm>
#include <sstream>

namespace lnd {

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::monomial(const Rational& c, unsigned degree) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return UniPoly(std::move(v));
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

std::size_t UniPoly::term_count() const {
    return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](const Rational& r) { return !r.is_zero(); }));
}

UniPoly UniPoly::operator-() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(out));
}

UniPoly UniPoly::scaled(const Rational& s) const {
    if (s.is_zero()) return {};
    UniPoly r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& divisor) const {
    if (divisor.is_zero()) throw Error(ErrorKind::DivisorZero, "univariate division by zero");
    UniPoly rem = *this;
    if (rem.degree() < divisor.degree()) return {UniPoly(), rem};
    std::vector<Rational> quot(static_cast<std::size_t>(rem.degree() - divisor.degree() + 1));
    const Rational lead_inv = divisor.leading().inverse();
    const int dd = divisor.degree();
    for (int k = rem.degree(); k >= dd; --k) {
        const Rational c = rem.coeff(static_cast<unsigned>(k)) * lead_inv;
        if (c.is_zero()) continue;
        quot[static_cast<std::size_t>(k - dd)] = c;
        for (int j = 0; j <= dd; ++j) rem.c_[static_cast<std::size_t>(k - dd + j)] -= c * divisor.c_[static_cast<std::size_t>(j)];
    }
    rem.trim();
    return {UniPoly(std::move(quot)), rem};
}

std::optional<UniPoly> UniPoly::exact_div(const UniPoly& divisor) const {
    auto [q, r] = divmod(divisor);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return {};
    return scaled(leading().inverse());
}

UniPoly UniPoly::pow(unsigned e) const {
    UniPoly result(Rational(1));
    UniPoly base = *this;
    while (e > 0) {
        if (e & 1U) result = result * base;
        e >>= 1U;
        if (e > 0) base = base * base;
    }
    return result;
}

Rational UniPoly::eval(const Rational& at) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
    return acc;
}

namespace {

void append_signed_term(std::ostringstream& os, bool first, const Rational& c, const std::string& mono) {
    const bool neg = c.sign() < 0;
    const Rational mag = neg ? -c : c;
    if (first)
        os << (neg ? "-" : "");
    else
        os << (neg ? " - " : " + ");
    if (mono.empty()) {
        os << mag.str();
    } else if (mag.is_one()) {
        os << mono;
    } else {
        os << mag.str() << '*' << mono;
    }
}

std::string power_str(std::string_view sym, unsigned e) {
    if (e == 0) return {};
    std::string s(sym);
    if (e > 1) s += "^" + std::to_string(e);
    return s;
}

} // namespace

std::string UniPoly::str(std::string_view symbol) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = c_[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        append_signed_term(os, first, c, power_str(symbol, static_cast<unsigned>(k)));
        first = false;
    }
    return os.str();
}

BezoutResult uni_gcd_bezout(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() && b.is_zero()) throw Error(ErrorKind::BothZero, "gcd of two zero polynomials");
    // Invariants: r0 = s0*a + t0*b, r1 = s1*a + t1*b.
    UniPoly r0 = a, r1 = b;
    UniPoly s0(Rational(1)), s1;
    UniPoly t0, t1(Rational(1));
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        UniPoly s2 = s0 - q * s1;
        UniPoly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    const Rational inv = r0.leading().inverse();
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

// ------------------------------------------------------------- CircleElem

namespace {

const UniPoly& one_minus_w2_sq() {
    static const UniPoly p(std::vector<Rational>{Rational(1), Rational(0), Rational(-1)});
    return p;
}

} // namespace

UniPoly CircleElem::norm() const { return a * a - b * b * one_minus_w2_sq(); }

CircleElem operator+(const CircleElem& x, const CircleElem& y) { return {x.a + y.a, x.b + y.b}; }

CircleElem operator-(const CircleElem& x, const CircleElem& y) { return {x.a - y.a, x.b - y.b}; }

CircleElem operator*(const CircleElem& x, const CircleElem& y) {
    // (a1 + b1 w1)(a2 + b2 w1) = a1 a2 + b1 b2 w1^2 + (a1 b2 + a2 b1) w1, w1^2 = 1 - w2^2
    return {x.a * y.a + x.b * y.b * one_minus_w2_sq(), x.a * y.b + x.b * y.a};
}

CircleElem circle_normalize(const CircleMonomials& raw) {
    CircleElem out;
    for (const auto& [exps, c] : raw) {
        const auto [i, j] = exps;
        const UniPoly w2_part = UniPoly::monomial(c, j) * one_minus_w2_sq().pow(i / 2);
        if (i % 2 == 0)
            out.a += w2_part;
        else
            out.b += w2_part;
    }
    return out;
}

// --------------------------------------------------------------- RingElem

std::string_view to_string(RingId id) {
    switch (id) {
    case RingId::Q: return "Q";
    case RingId::PolyT: return "Q[t]";
    case RingId::Circle: return "circle";
    }
    return "?";
}

void require_same_ring(RingId a, RingId b, std::string_view where) {
    if (a != b)
        throw Error(ErrorKind::RingMismatch,
                    std::string(where) + ": " + std::string(to_string(a)) + " vs " + std::string(to_string(b)));
}

RingElem RingElem::zero(RingId ring) { return constant(ring, Rational(0)); }

RingElem RingElem::constant(RingId ring, const Rational& value) {
    switch (ring) {
    case RingId::Q: return RingElem(value);
    case RingId::PolyT: return RingElem(UniPoly(value));
    case RingId::Circle: return RingElem(CircleElem{UniPoly(value), UniPoly()});
    }
    return RingElem(value);
}

bool RingElem::is_zero() const {
    return std::visit([](const auto& x) { return x.is_zero(); }, v_);
}

bool RingElem::is_one() const {
    auto r = rational_value();
    return r && r->is_one();
}

std::optional<Rational> RingElem::rational_value() const {
    switch (ring()) {
    case RingId::Q: return as_rational();
    case RingId::PolyT:
        if (as_unipoly().is_constant()) return as_unipoly().coeff(0);
        return std::nullopt;
    case RingId::Circle: {
        const auto& c = as_circle();
        if (c.b.is_zero() && c.a.is_constant()) return c.a.coeff(0);
        return std::nullopt;
    }
    }
    return std::nullopt;
}

Rational RingElem::leading_rational() const {
    switch (ring()) {
    case RingId::Q: return as_rational();
    case RingId::PolyT: return as_unipoly().leading();
    case RingId::Circle: {
        // Highest grlex monomial in (w1, w2): w1*w2^k outranks w2^k, loses to w2^(k+2).
        const auto& c = as_circle();
        const int da = c.a.degree();
        const int db = c.b.is_zero() ? -1 : c.b.degree() + 1;
        if (c.is_zero()) return Rational(0);
        return db >= da ? c.b.leading() : c.a.leading();
    }
    }
    return Rational(0);
}

std::size_t RingElem::term_count() const {
    switch (ring()) {
    case RingId::Q: return as_rational().is_zero() ? 0 : 1;
    case RingId::PolyT: return as_unipoly().term_count();
    case RingId::Circle: return as_circle().a.term_count() + as_circle().b.term_count();
    }
    return 0;
}

RingElem RingElem::operator-() const {
    switch (ring()) {
    case RingId::Q: return RingElem(-as_rational());
    case RingId::PolyT: return RingElem(-as_unipoly());
    case RingId::Circle: return RingElem(CircleElem{-as_circle().a, -as_circle().b});
    }
    return *this;
}

RingElem operator+(const RingElem& x, const RingElem& y) {
    require_same_ring(x.ring(), y.ring(), "ring add");
    switch (x.ring()) {
    case RingId::Q: return RingElem(x.as_rational() + y.as_rational());
    case RingId::PolyT: return RingElem(x.as_unipoly() + y.as_unipoly());
    case RingId::Circle: return RingElem(x.as_circle() + y.as_circle());
    }
    return x;
}

RingElem operator-(const RingElem& x, const RingElem& y) {
    require_same_ring(x.ring(), y.ring(), "ring sub");
    switch (x.ring()) {
    case RingId::Q: return RingElem(x.as_rational() - y.as_rational());
    case RingId::PolyT: return RingElem(x.as_unipoly() - y.as_unipoly());
    case RingId::Circle: return RingElem(x.as_circle() - y.as_circle());
    }
    return x;
}

RingElem operator*(const RingElem& x, const RingElem& y) {
    require_same_ring(x.ring(), y.ring(), "ring mul");
    switch (x.ring()) {
    case RingId::Q: return RingElem(x.as_rational() * y.as_rational());
    case RingId::PolyT: return RingElem(x.as_unipoly() * y.as_unipoly());
    case RingId::Circle: return RingElem(x.as_circle() * y.as_circle());
    }
    return x;
}

RingElem RingElem::scaled(const Rational& s) const {
    switch (ring()) {
    case RingId::Q: return RingElem(as_rational() * s);
    case RingId::PolyT: return RingElem(as_unipoly().scaled(s));
    case RingId::Circle: return RingElem(CircleElem{as_circle().a.scaled(s), as_circle().b.scaled(s)});
    }
    return *this;
}

RingElem RingElem::pow(unsigned e) const {
    RingElem result = one(ring());
    RingElem base = *this;
    while (e > 0) {
        if (e & 1U) result *= base;
        e >>= 1U;
        if (e > 0) base = base * base;
    }
    return result;
}

std::optional<RingElem> RingElem::exact_div(const RingElem& divisor) const {
    require_same_ring(ring(), divisor.ring(), "ring exact_div");
    if (divisor.is_zero()) throw Error(ErrorKind::DivisorZero, "ring division by zero");
    switch (ring()) {
    case RingId::Q: return RingElem(as_rational() / divisor.as_rational());
    case RingId::PolyT: {
        auto q = as_unipoly().exact_div(divisor.as_unipoly());
        if (!q) return std::nullopt;
        return RingElem(std::move(*q));
    }
    case RingId::Circle: {
        const CircleElem& y = divisor.as_circle();
        const CircleElem num = as_circle() * y.conj();
        const UniPoly n = y.norm();
        auto qa = num.a.exact_div(n);
        auto qb = num.b.exact_div(n);
        if (!qa || !qb) return std::nullopt;
        return RingElem(CircleElem{std::move(*qa), std::move(*qb)});
    }
    }
    return std::nullopt;
}

std::optional<RingElem> RingElem::inverse() const {
    auto r = rational_value();
    if (!r || r->is_zero()) return std::nullopt;
    return constant(ring(), r->inverse());
}

namespace {

// Greedy coefficient matching from the top degree down, verified at the end.
std::optional<UniPoly> uni_nth_root(const UniPoly& f, unsigned n) {
    if (f.is_zero()) return UniPoly();
    if (f.degree() % static_cast<int>(n) != 0) return std::nullopt;
    auto lead = f.leading().nth_root(n);
    if (!lead) return std::nullopt;
    const unsigned root_deg = static_cast<unsigned>(f.degree()) / n;
    UniPoly g = UniPoly::monomial(*lead, root_deg);
    // (g + c t^k)^n = g^n + n c g^(n-1) t^k + ..., so the next coefficient is
    // read off the leading term of f - g^n.
    const Rational denom = Rational(static_cast<long>(n)) * lead->pow(n - 1);
    for (int k = static_cast<int>(root_deg) - 1; k >= 0; --k) {
        const UniPoly r = f - g.pow(n);
        if (r.is_zero()) break;
        const int top = static_cast<int>((n - 1) * root_deg) + k;
        if (r.degree() > top) return std::nullopt;
        if (r.degree() < top) continue;
        g += UniPoly::monomial(r.leading() / denom, static_cast<unsigned>(k));
    }
    if (!(g.pow(n) == f)) return std::nullopt;
    return g;
}

// Sturm chain of a squarefree polynomial.
std::vector<UniPoly> sturm_chain(const UniPoly& p) {
    std::vector<UniPoly> chain{p, derivative(p)};
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        auto r = chain[chain.size() - 2].divmod(chain.back()).second;
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

int sign_changes(const std::vector<UniPoly>& chain, const Rational& x) {
    int changes = 0;
    int prev = 0;
    for (const auto& q : chain) {
        const int s = q.eval(x).sign();
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

mpz_class floor_of(const Rational& x) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
    return f;
}

// The rational with the smallest denominator in [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi) {
    if (hi.sign() < 0) return -simplest_between(-hi, -lo);
    if (lo.sign() <= 0) return Rational(0);
    const Rational fl(floor_of(lo), mpz_class(1));
    if (fl == lo) return lo;
    if (fl + Rational(1) <= hi) return fl + Rational(1);
    return fl + simplest_between((hi - fl).inverse(), (lo - fl).inverse()).inverse();
}

// (u + v i)^n over the Gaussian rationals.
std::pair<Rational, Rational> gauss_pow(const std::pair<Rational, Rational>& z, unsigned n) {
    std::pair<Rational, Rational> r{Rational(1), Rational(0)};
    for (unsigned k = 0; k < n; ++k)
        r = {r.first * z.first - r.second * z.second, r.first * z.second + r.second * z.first};
    return r;
}

// All Gaussian rationals z with z^n = g. With m = |z|^2 the real part u is
// a rational root of Re((u + i sqrt(m - u^2))^n) - Re(g).
std::vector<std::pair<Rational, Rational>> gauss_nth_roots(const std::pair<Rational, Rational>& g, unsigned n) {
    std::vector<std::pair<Rational, Rational>> out;
    auto m = (g.first * g.first + g.second * g.second).nth_root(n);
    if (!m || m->sign() <= 0) return out;
    const UniPoly u = UniPoly::x();
    const UniPoly rest = UniPoly(*m) - u * u;
    UniPoly eq;
    mpz_class binom = 1;
    for (unsigned k = 0; k <= n; ++k) {
        if (k > 0) binom = binom * (n - k + 1) / k;
        if (k % 2 != 0) continue;
        UniPoly term = u.pow(n - k) * rest.pow(k / 2);
        term = term.scaled(Rational(binom, mpz_class(1)));
        eq += (k / 2) % 2 == 0 ? term : -term;
    }
    eq -= UniPoly(g.first);
    for (const auto& re : rational_roots(eq)) {
        auto im = (*m - re * re).nth_root(2);
        if (!im) continue;
        for (const Rational& v : {*im, -*im}) {
            std::pair<Rational, Rational> z{re, v};
            if (gauss_pow(z, n) == g && std::find(out.begin(), out.end(), z) == out.end()) out.push_back(z);
            if (v.is_zero()) break;
        }
    }
    return out;
}

// Degree of a circle element for the filtration where w1 and w2 have
// degree 1. The associated graded ring is Q[w1,w2]/(w1^2 + w2^2), whose
// degree-k part (k >= 1) is spanned by w2^k and w1*w2^(k-1) and multiplies
// like the Gaussian rationals under w2^k (a + b w1/w2) <-> a + b i.
int circle_degree(const CircleElem& c) {
    const int db = c.b.is_zero() ? -1 : c.b.degree() + 1;
    return std::max(c.a.degree(), db);
}

std::pair<Rational, Rational> circle_lead(const CircleElem& c, int deg) {
    return {c.a.coeff(static_cast<unsigned>(deg)), deg == 0 ? Rational(0) : c.b.coeff(static_cast<unsigned>(deg - 1))};
}

CircleElem circle_embed(const std::pair<Rational, Rational>& z, int deg) {
    CircleElem out{UniPoly::monomial(z.first, static_cast<unsigned>(deg)), UniPoly()};
    if (deg > 0) out.b = UniPoly::monomial(z.second, static_cast<unsigned>(deg - 1));
    return out;
}

CircleElem circle_pow(const CircleElem& x, unsigned n) {
    CircleElem r{UniPoly(Rational(1)), UniPoly()};
    for (unsigned k = 0; k < n; ++k) r = r * x;
    return r;
}

std::optional<CircleElem> circle_nth_root(const CircleElem& y, unsigned n) {
    if (y.is_zero()) return y;
    const int deg = circle_degree(y);
    if (deg % static_cast<int>(n) != 0) return std::nullopt;
    const int k = deg / static_cast<int>(n);
    for (const auto& z : gauss_nth_roots(circle_lead(y, deg), n)) {
        if (k == 0 && !z.second.is_zero()) continue;
        CircleElem x = circle_embed(z, k);
        // Each correction term w of degree j enters (x + w)^n through
        // n x^(n-1) w, whose leading form is n z^(n-1) w.
        const auto zn1 = gauss_pow(z, n - 1);
        const Rational scale = Rational(static_cast<long>(n)) * (zn1.first * zn1.first + zn1.second * zn1.second);
        int last_j = k;
        bool ok = true;
        while (true) {
            const CircleElem e = y - circle_pow(x, n);
            if (e.is_zero()) break;
            const int j = circle_degree(e) - (static_cast<int>(n) - 1) * k;
            if (j < 0 || j >= last_j) {
                ok = false;
                break;
            }
            const auto le = circle_lead(e, circle_degree(e));
            // le / (n z^(n-1)) = le * conj(z^(n-1)) / (n |z^(n-1)|^2)
            std::pair<Rational, Rational> w{(le.first * zn1.first + le.second * zn1.second) / scale,
                                            (le.second * zn1.first - le.first * zn1.second) / scale};
            if (j == 0 && !w.second.is_zero()) {
                ok = false;
                break;
            }
            x = x + circle_embed(w, j);
            last_j = j;
        }
        if (ok) return x;
    }
    return std::nullopt;
}

} // namespace

UniPoly derivative(const UniPoly& f) {
    std::vector<Rational> c;
    for (std::size_t i = 1; i < f.coeffs().size(); ++i) c.push_back(f.coeffs()[i] * Rational(static_cast<long>(i)));
    return UniPoly(std::move(c));
}

std::vector<Rational> rational_roots(const UniPoly& f) {
    std::vector<Rational> roots;
    if (f.degree() <= 0) return roots;
    // Work with the squarefree part and integer coefficients.
    UniPoly p = f.monic();
    const UniPoly dp = derivative(p);
    if (!dp.is_zero()) {
        const UniPoly g = uni_gcd_bezout(p, dp).g;
        p = *p.exact_div(g);
    }
    mpz_class lcm_den = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.den().get_mpz_t());
    p = p.scaled(Rational(lcm_den, mpz_class(1)));
    const Rational lc = p.leading();
    if (p.degree() == 1) {
        roots.push_back(-p.coeff(0) / lc);
        return roots;
    }
    // A rational root a/b has b | lc, so two distinct candidates are at least
    // 1/lc^2 apart; isolating intervals narrower than that hold at most one.
    Rational bound(1);
    for (const auto& c : p.coeffs()) {
        const Rational r = c / lc;
        bound += r.sign() < 0 ? -r : r;
    }
    const Rational width = (lc * lc).inverse();
    const auto chain = sturm_chain(p);
    std::vector<std::pair<Rational, Rational>> todo{{-bound, bound}};
    while (!todo.empty()) {
        auto [lo, hi] = todo.back();
        todo.pop_back();
        const int count = sign_changes(chain, lo) - sign_changes(chain, hi);
        if (count == 0) continue;
        if (count == 1 && hi - lo < width) {
            const Rational cand = simplest_between(lo, hi);
            if (p.eval(cand).is_zero()) roots.push_back(cand);
            continue;
        }
        const Rational mid = (lo + hi) / Rational(2);
        if (p.eval(mid).is_zero()) roots.push_back(mid);
        todo.emplace_back(lo, mid);
        todo.emplace_back(mid, hi);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::optional<RingElem> RingElem::nth_root(unsigned n) const {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "zeroth root");
    switch (ring()) {
    case RingId::Q: {
        auto r = as_rational().nth_root(n);
        if (!r) return std::nullopt;
        return RingElem(*r);
    }
    case RingId::PolyT: {
        auto r = uni_nth_root(as_unipoly(), n);
        if (!r) return std::nullopt;
        return RingElem(std::move(*r));
    }
    case RingId::Circle: {
        if (auto v = rational_value()) {
            auto r = v->nth_root(n);
            if (!r) return std::nullopt;
            return constant(RingId::Circle, *r);
        }
        auto r = circle_nth_root(as_circle(), n);
        if (!r) return std::nullopt;
        return RingElem(std::move(*r));
    }
    }
    return std::nullopt;
}

std::string RingElem::str() const {
    switch (ring()) {
    case RingId::Q: return as_rational().str();
    case RingId::PolyT: return as_unipoly().str("t");
    case RingId::Circle: {
        const auto& c = as_circle();
        if (c.is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        const int top = std::max(c.a.degree(), c.b.degree() + 1);
        for (int deg = top; deg >= 0; --deg) {
            if (deg >= 1) {
                const Rational cb = c.b.coeff(static_cast<unsigned>(deg - 1));
                if (!cb.is_zero()) {
                    std::string mono = "w1";
                    if (deg - 1 > 0) mono += "*" + power_str("w2", static_cast<unsigned>(deg - 1));
                    append_signed_term(os, first, cb, mono);
                    first = false;
                }
            }
            const Rational ca = c.a.coeff(static_cast<unsigned>(deg));
            if (!ca.is_zero()) {
                append_signed_term(os, first, ca, power_str("w2", static_cast<unsigned>(deg)));
                first = false;
            }
        }
        return os.str();
    }
    }
    return "?";
}

} // namespace lnd

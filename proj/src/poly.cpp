#include "lnd/poly.hpp"

#include "lnd/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace lnd {

// ----------------------------------------------------------------- ExpVec

ExpVec::ExpVec(std::size_t nvars) : n_(nvars) {
    if (nvars > kMaxVars) throw Error(ErrorKind::DimensionError, "too many variables: " + std::to_string(nvars));
}

ExpVec::ExpVec(std::initializer_list<unsigned> exps) : ExpVec(exps.size()) {
    std::copy(exps.begin(), exps.end(), e_.begin());
}

unsigned ExpVec::total() const { return std::accumulate(e_.begin(), e_.begin() + static_cast<long>(n_), 0U); }

ExpVec ExpVec::operator+(const ExpVec& o) const {
    ExpVec r(n_);
    for (std::size_t i = 0; i < n_; ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

std::optional<ExpVec> ExpVec::minus(const ExpVec& o) const {
    ExpVec r(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (e_[i] < o.e_[i]) return std::nullopt;
        r.e_[i] = e_[i] - o.e_[i];
    }
    return r;
}

bool ExpVec::divides(const ExpVec& o) const {
    for (std::size_t i = 0; i < n_; ++i)
        if (e_[i] > o.e_[i]) return false;
    return true;
}

ExpVec ExpVec::scaled(unsigned k) const {
    ExpVec r(n_);
    for (std::size_t i = 0; i < n_; ++i) r.e_[i] = e_[i] * k;
    return r;
}

bool GrlexGreater::operator()(const ExpVec& a, const ExpVec& b) const {
    const unsigned ta = a.total(), tb = b.total();
    if (ta != tb) return ta > tb;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

// ------------------------------------------------------------------- Poly

Poly::Poly(RingId ring, std::size_t nvars) : ring_(ring), nvars_(nvars) {
    if (nvars > kMaxVars) throw Error(ErrorKind::DimensionError, "too many variables: " + std::to_string(nvars));
}

Poly Poly::constant(RingId ring, std::size_t nvars, const RingElem& c) {
    Poly p(ring, nvars);
    p.add_term(ExpVec(nvars), c);
    return p;
}

Poly Poly::variable(RingId ring, std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw Error(ErrorKind::DimensionError, "variable index out of range");
    ExpVec e(nvars);
    e[index] = 1;
    return monomial(ring, e, RingElem::one(ring));
}

Poly Poly::monomial(RingId ring, const ExpVec& exps, const RingElem& c) {
    Poly p(ring, exps.size());
    p.add_term(exps, c);
    return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total() == 0); }

const ExpVec& Poly::leading_exp() const {
    if (terms_.empty()) throw Error(ErrorKind::ZeroInput, "leading term of the zero polynomial");
    return terms_.begin()->first;
}

const RingElem& Poly::leading_coeff() const {
    if (terms_.empty()) throw Error(ErrorKind::ZeroInput, "leading coefficient of the zero polynomial");
    return terms_.begin()->second;
}

RingElem Poly::coeff(const ExpVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? RingElem::zero(ring_) : it->second;
}

int Poly::total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.total()); }

int Poly::degree_in(std::size_t var) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
    return d;
}

void Poly::add_term(const ExpVec& e, const RingElem& c) {
    require_same_ring(ring_, c.ring(), "Poly::add_term");
    if (e.size() != nvars_) throw Error(ErrorKind::DimensionError, "exponent vector length mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Poly::check_compatible(const Poly& o, const char* where) const {
    require_same_ring(ring_, o.ring_, where);
    if (nvars_ != o.nvars_) throw Error(ErrorKind::DimensionError, std::string(where) + ": variable count mismatch");
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    check_compatible(o, "poly add");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_compatible(o, "poly sub");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_compatible(b, "poly mul");
    Poly r(a.ring_, a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
}

Poly Poly::scaled(const RingElem& c) const {
    require_same_ring(ring_, c.ring(), "poly scale");
    Poly r(ring_, nvars_);
    if (c.is_zero()) return r;
    for (const auto& [e, x] : terms_) r.add_term(e, x * c);
    return r;
}

Poly Poly::scaled(const Rational& c) const {
    Poly r(ring_, nvars_);
    if (c.is_zero()) return r;
    for (const auto& [e, x] : terms_) r.terms_.emplace(e, x.scaled(c));
    return r;
}

Poly Poly::times_monomial(const ExpVec& e, const RingElem& c) const {
    Poly r(ring_, nvars_);
    if (c.is_zero()) return r;
    for (const auto& [f, x] : terms_) r.add_term(f + e, x * c);
    return r;
}

Poly Poly::pow(unsigned n) const {
    Poly result = constant(ring_, nvars_, 1);
    Poly base = *this;
    while (n > 0) {
        if (n & 1U) result = result * base;
        n >>= 1U;
        if (n > 0) base = base * base;
    }
    return result;
}

bool operator==(const Poly& a, const Poly& b) {
    return a.ring_ == b.ring_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

std::vector<std::string> default_names(std::size_t nvars) {
    static const std::array<std::string, kMaxVars> names{"x", "y", "z", "u"};
    return {names.begin(), names.begin() + static_cast<long>(nvars)};
}

std::string Poly::str(std::span<const std::string> names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::string mono;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += names[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        const bool simple = c.term_count() == 1;
        const bool negative = simple && c.leading_rational().sign() < 0;
        const RingElem mag = negative ? -c : c;
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;
        if (mono.empty()) {
            os << (simple ? mag.str() : "(" + mag.str() + ")");
        } else if (mag.is_one()) {
            os << mono;
        } else {
            os << (simple ? mag.str() : "(" + mag.str() + ")") << '*' << mono;
        }
    }
    return os.str();
}

std::string to_string(const Poly& f) {
    const auto names = default_names(f.nvars());
    return f.str(names);
}

// ------------------------------------------------------------ operations

Poly partial(const Poly& f, std::size_t var) {
    if (var >= f.nvars()) throw Error(ErrorKind::DimensionError, "partial: variable index out of range");
    Poly r(f.ring(), f.nvars());
    for (const auto& [e, c] : f.terms()) {
        if (e[var] == 0) continue;
        ExpVec d = e;
        d[var] -= 1;
        r.add_term(d, c.scaled(Rational(static_cast<long>(e[var]))));
    }
    return r;
}

Poly substitute(const Poly& f, std::span<const Poly> images) {
    if (images.size() != f.nvars())
        throw Error(ErrorKind::DimensionError, "substitute: assignment must cover every variable");
    if (images.empty()) return f;
    const RingId ring = images[0].ring();
    const std::size_t nv = images[0].nvars();
    for (const auto& img : images) {
        require_same_ring(ring, img.ring(), "substitute");
        if (img.nvars() != nv) throw Error(ErrorKind::DimensionError, "substitute: images disagree on nvars");
    }
    require_same_ring(ring, f.ring(), "substitute");
    // Powers are cached per variable since the same exponent recurs across terms.
    std::vector<std::vector<Poly>> powers(images.size());
    auto power = [&](std::size_t var, unsigned k) -> const Poly& {
        auto& cache = powers[var];
        if (cache.empty()) cache.push_back(Poly::constant(ring, nv, 1));
        while (cache.size() <= k) cache.push_back(cache.back() * images[var]);
        return cache[k];
    };
    Poly result(ring, nv);
    for (const auto& [e, c] : f.terms()) {
        Poly term = Poly::constant(ring, nv, c);
        for (std::size_t i = 0; i < f.nvars(); ++i)
            if (e[i] > 0) term = term * power(i, e[i]);
        result += term;
    }
    return result;
}

Poly set_var_zero(const Poly& f, std::size_t var) {
    Poly r(f.ring(), f.nvars());
    for (const auto& [e, c] : f.terms())
        if (e[var] == 0) r.add_term(e, c);
    return r;
}

Poly coefficient_in(const Poly& f, std::size_t var, unsigned k) {
    Poly r(f.ring(), f.nvars());
    for (const auto& [e, c] : f.terms()) {
        if (e[var] != k) continue;
        ExpVec d = e;
        d[var] = 0;
        r.add_term(d, c);
    }
    return r;
}

long weighted_degree(const ExpVec& e, const WeightVec& w) {
    if (w.size() != e.size()) throw Error(ErrorKind::DimensionError, "weight vector length mismatch");
    long s = 0;
    for (std::size_t i = 0; i < e.size(); ++i) s += w[i] * static_cast<long>(e[i]);
    return s;
}

std::optional<long> weighted_degree(const Poly& f, const WeightVec& w) {
    std::optional<long> best;
    for (const auto& [e, c] : f.terms()) {
        const long d = weighted_degree(e, w);
        if (!best || d > *best) best = d;
    }
    return best;
}

std::map<long, Poly> weighted_parts(const Poly& f, const WeightVec& w) {
    std::map<long, Poly> parts;
    for (const auto& [e, c] : f.terms()) {
        auto [it, _] = parts.try_emplace(weighted_degree(e, w), f.ring(), f.nvars());
        it->second.add_term(e, c);
    }
    return parts;
}

std::optional<long> is_homogeneous(const Poly& f, const WeightVec& w) {
    const auto parts = weighted_parts(f, w);
    if (parts.size() != 1) return std::nullopt;
    return parts.begin()->first;
}

Poly top_part(const Poly& f, const WeightVec& w) {
    auto parts = weighted_parts(f, w);
    if (parts.empty()) return Poly(f.ring(), f.nvars());
    return parts.rbegin()->second;
}

std::optional<Poly> try_exact_divide(const Poly& f, const Poly& g) {
    if (g.is_zero()) throw Error(ErrorKind::DivisorZero, "polynomial division by zero");
    require_same_ring(f.ring(), g.ring(), "exact_divide");
    if (f.nvars() != g.nvars()) throw Error(ErrorKind::DimensionError, "exact_divide: nvars mismatch");
    Poly q(f.ring(), f.nvars());
    Poly r = f;
    const ExpVec& lg = g.leading_exp();
    const RingElem& cg = g.leading_coeff();
    while (!r.is_zero()) {
        auto e = r.leading_exp().minus(lg);
        if (!e) return std::nullopt;
        auto c = r.leading_coeff().exact_div(cg);
        if (!c) return std::nullopt;
        q.add_term(*e, *c);
        r -= g.times_monomial(*e, *c);
    }
    return q;
}

Poly exact_divide(const Poly& f, const Poly& g) {
    auto q = try_exact_divide(f, g);
    if (!q) throw Error(ErrorKind::NotDivisible, "divisor does not divide dividend exactly");
    return std::move(*q);
}

// ------------------------------------------------------------------- gcd

namespace {

Poly normalize_monic(const Poly& f) {
    if (f.is_zero()) return f;
    return f.scaled(f.leading_coeff().leading_rational().inverse());
}

int main_var(const Poly& f, const Poly& g) {
    for (int v = static_cast<int>(f.nvars()) - 1; v >= 0; --v)
        if (f.uses_var(static_cast<std::size_t>(v)) || g.uses_var(static_cast<std::size_t>(v))) return v;
    return -1;
}

Poly gcd_q(const Poly& f, const Poly& g);

Poly content_in(const Poly& f, std::size_t v) {
    Poly c(f.ring(), f.nvars());
    for (int k = f.degree_in(v); k >= 0; --k) {
        c = gcd_q(c, coefficient_in(f, v, static_cast<unsigned>(k)));
        if (c.is_constant() && !c.is_zero()) break;
    }
    return c;
}

Poly primitive_in(const Poly& f, std::size_t v) {
    if (f.is_zero()) return f;
    return exact_divide(f, content_in(f, v));
}

// Sparse pseudo-remainder of a by b with respect to variable v.
Poly prem(Poly a, const Poly& b, std::size_t v) {
    const int db = b.degree_in(v);
    const Poly lb = coefficient_in(b, v, static_cast<unsigned>(db));
    while (!a.is_zero() && a.degree_in(v) >= db) {
        const int da = a.degree_in(v);
        const Poly la = coefficient_in(a, v, static_cast<unsigned>(da));
        ExpVec shift(a.nvars());
        shift[v] = static_cast<unsigned>(da - db);
        a = lb * a - la * b.times_monomial(shift, RingElem::one(a.ring()));
    }
    return a;
}

// Primitive pseudo-remainder sequence gcd over Q, recursing on the last used variable.
Poly gcd_q(const Poly& f, const Poly& g) {
    if (f.is_zero()) return normalize_monic(g);
    if (g.is_zero()) return normalize_monic(f);
    const int mv = main_var(f, g);
    if (mv < 0) return Poly::constant(f.ring(), f.nvars(), 1);
    const auto v = static_cast<std::size_t>(mv);
    if (!f.uses_var(v)) return gcd_q(f, content_in(g, v));
    if (!g.uses_var(v)) return gcd_q(content_in(f, v), g);

    const Poly c = gcd_q(content_in(f, v), content_in(g, v));
    Poly a = primitive_in(f, v);
    Poly b = primitive_in(g, v);
    if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
    while (true) {
        Poly r = prem(a, b, v);
        if (r.is_zero()) break;
        if (r.degree_in(v) == 0) return normalize_monic(c);
        a = std::move(b);
        b = primitive_in(r, v);
    }
    return normalize_monic(c * primitive_in(b, v));
}

} // namespace

Poly lift_t(const Poly& f) {
    if (f.ring() != RingId::PolyT) throw Error(ErrorKind::UnsupportedRing, "lift_t expects a Q[t] polynomial");
    Poly out(RingId::Q, f.nvars() + 1);
    for (const auto& [e, c] : f.terms()) {
        const auto& coeffs = c.as_unipoly().coeffs();
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            if (coeffs[k].is_zero()) continue;
            ExpVec x(f.nvars() + 1);
            for (std::size_t i = 0; i < f.nvars(); ++i) x[i] = e[i];
            x[f.nvars()] = static_cast<unsigned>(k);
            out.add_term(x, RingElem(coeffs[k]));
        }
    }
    return out;
}

Poly drop_t(const Poly& f) {
    if (f.ring() != RingId::Q || f.nvars() == 0) throw Error(ErrorKind::UnsupportedRing, "drop_t expects a lifted polynomial");
    const std::size_t nv = f.nvars() - 1;
    Poly out(RingId::PolyT, nv);
    for (const auto& [e, c] : f.terms()) {
        ExpVec x(nv);
        for (std::size_t i = 0; i < nv; ++i) x[i] = e[i];
        out.add_term(x, RingElem(UniPoly::monomial(c.as_rational(), e[nv])));
    }
    return out;
}

Poly gcd_multivar(const Poly& f, const Poly& g) {
    require_same_ring(f.ring(), g.ring(), "gcd_multivar");
    switch (f.ring()) {
    case RingId::Q: return gcd_q(f, g);
    case RingId::PolyT: return normalize_monic(drop_t(gcd_q(lift_t(f), lift_t(g))));
    case RingId::Circle: break;
    }
    throw Error(ErrorKind::UnsupportedRing, "gcd over the circle ring is not supported");
}

// --------------------------------------------------------------- nth_root

std::optional<Poly> nth_root(const Poly& f, unsigned n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "nth_root with n = 0");
    if (f.is_zero()) return f;
    if (n == 1) return f;
    const ExpVec& lead = f.leading_exp();
    ExpVec root_exp(f.nvars());
    for (std::size_t i = 0; i < f.nvars(); ++i) {
        if (lead[i] % n != 0) return std::nullopt;
        root_exp[i] = lead[i] / n;
    }
    auto lc = f.leading_coeff().nth_root(n);
    if (!lc) return std::nullopt;
    if (n % 2 == 0 && lc->leading_rational().sign() < 0) lc = -*lc;

    Poly g = Poly::monomial(f.ring(), root_exp, *lc);
    // Leading term of f - g^n is n * lc^(n-1) * x^((n-1)*root_exp) times the next root term.
    const RingElem denom = lc->pow(n - 1).scaled(Rational(static_cast<long>(n)));
    const ExpVec denom_exp = root_exp.scaled(n - 1);
    ExpVec last = root_exp;
    while (true) {
        const Poly r = f - g.pow(n);
        if (r.is_zero()) return g;
        auto e = r.leading_exp().minus(denom_exp);
        if (!e || !GrlexGreater{}(last, *e)) return std::nullopt;
        auto c = r.leading_coeff().exact_div(denom);
        if (!c) return std::nullopt;
        g.add_term(*e, *c);
        last = *e;
    }
}

std::set<LatticePoint> support_points(const Poly& f, std::size_t i, std::size_t j) {
    if (i >= f.nvars() || j >= f.nvars()) throw Error(ErrorKind::DimensionError, "support_points: bad variable index");
    std::set<LatticePoint> pts{{0, 0}};
    for (const auto& [e, c] : f.terms()) pts.emplace(e[i], e[j]);
    return pts;
}

} // namespace lnd

#include "lnd/normal_form.hpp"

#include "lnd/error.hpp"

#include <algorithm>
#include <sstream>

namespace lnd {

namespace {

constexpr std::size_t kX = 0, kY = 1, kZ = 2;

Poly var(std::size_t i) { return Poly::variable(RingId::Q, 3, i); }

Poly monomial(unsigned ex, unsigned ey, unsigned ez, const Rational& c = Rational(1)) {
    return Poly::monomial(RingId::Q, ExpVec{ex, ey, ez}, RingElem(c));
}

Rational rat(const RingElem& c) { return c.as_rational(); }

std::string term_text(const Poly& f) {
    if (f.is_zero()) return "0";
    Poly lead(f.ring(), f.nvars());
    lead.add_term(f.leading_exp(), f.leading_coeff());
    return to_string(lead);
}

[[noreturn]] void shape_error(const std::string& msg) { throw Error(ErrorKind::ShapeViolation, msg); }

void require_q(const Derivation& D, const char* where) {
    if (D.ring() != RingId::Q) throw Error(ErrorKind::UnsupportedRing, std::string(where) + " is implemented over Q only");
    if (D.nvars() != 3) throw Error(ErrorKind::DimensionError, std::string(where) + " needs three variables");
}

// Rows of M: the given form followed by the first standard vectors that keep
// the rows independent.
RatMatrix complete_basis(const LinearForm& X) {
    RatMatrix m{{rat(X.coeffs[0]), rat(X.coeffs[1]), rat(X.coeffs[2])}};
    for (std::size_t j = 0; j < 3 && m.size() < 3; ++j) {
        std::vector<Row> rows;
        for (const auto& r : m) rows.push_back({RingElem(r[0]), RingElem(r[1]), RingElem(r[2])});
        Row e(3, RingElem(Rational(0)));
        e[j] = RingElem(Rational(1));
        if (in_span(rows, e, RingId::Q)) continue;
        std::vector<Rational> er(3);
        er[j] = Rational(1);
        m.push_back(er);
    }
    return m;
}

// First nonzero entry scaled to 1.
std::vector<Rational> unit_leading(std::vector<Rational> v) {
    for (const auto& x : v) {
        if (x.is_zero()) continue;
        const Rational s = x.inverse();
        for (auto& y : v) y *= s;
        break;
    }
    return v;
}

Rational derivation_ratio(const Derivation& D, const Derivation& Delta) {
    std::optional<Rational> delta;
    for (std::size_t i = 0; i < 3; ++i) {
        if (Delta.image(i).is_zero()) continue;
        delta = rat(D.image(i).leading_coeff()) / rat(Delta.image(i).leading_coeff());
        break;
    }
    if (!delta) shape_error("Delta_(X,P) is zero");
    for (std::size_t i = 0; i < 3; ++i)
        if (!(D.image(i) == Delta.image(i).scaled(*delta))) shape_error("D is not a constant multiple of Delta_(X,P)");
    return *delta;
}

} // namespace

Poly drop_var(const Poly& f, std::size_t v) {
    if (v >= f.nvars()) throw Error(ErrorKind::DimensionError, "drop_var: index out of range");
    Poly out(f.ring(), f.nvars() - 1);
    for (const auto& [e, c] : f.terms()) {
        if (e[v] != 0) throw Error(ErrorKind::InvalidArgument, "drop_var: variable still occurs");
        ExpVec g(f.nvars() - 1);
        for (std::size_t i = 0, k = 0; i < f.nvars(); ++i)
            if (i != v) g[k++] = e[i];
        out.add_term(g, c);
    }
    return out;
}

Poly insert_var(const Poly& f, std::size_t v) {
    if (v > f.nvars() || f.nvars() + 1 > kMaxMainVars) throw Error(ErrorKind::DimensionError, "insert_var: index out of range");
    Poly out(f.ring(), f.nvars() + 1);
    for (const auto& [e, c] : f.terms()) {
        ExpVec g(f.nvars() + 1);
        for (std::size_t i = 0, k = 0; i <= f.nvars(); ++i)
            if (i != v) g[i] = e[k++];
        out.add_term(g, c);
    }
    return out;
}

Derivation reduce_mod_var(const Derivation& D, std::size_t v) {
    if (v >= D.nvars()) throw Error(ErrorKind::DimensionError, "reduce_mod_var: index out of range");
    if (!D.image(v).is_zero()) throw Error(ErrorKind::NotInKernel, "the variable is not in ker D");
    std::vector<Poly> images;
    for (std::size_t k = 0; k < D.nvars(); ++k)
        if (k != v) images.push_back(drop_var(set_var_zero(D.image(k), v), v));
    return Derivation(std::move(images));
}

RentschlerData rentschler_data(const Derivation& Dbar, long d) {
    if (Dbar.ring() != RingId::Q) throw Error(ErrorKind::UnsupportedRing, "rentschler_data is implemented over Q only");
    if (Dbar.nvars() != 2) throw Error(ErrorKind::DimensionError, "rentschler_data needs two variables");
    if (d < 0) throw Error(ErrorKind::InvalidArgument, "negative degree");
    if (Dbar.is_zero()) throw Error(ErrorKind::NoLinearKernel, "the reduced derivation is zero");
    const auto ker = nullspace(coefficient_matrix(Dbar.images()), RingId::Q, 2);
    if (ker.size() != 1) throw Error(ErrorKind::NoLinearKernel, "the reduced derivation has no linear kernel element");
    RentschlerData out;
    out.v1 = LinearForm{ker.front()};
    const Poly power = out.v1.to_poly(RingId::Q).pow(static_cast<unsigned>(d + 1));
    // (c, e, alpha) with Dbar(c V + e W) = alpha * v1^(d+1).
    const auto sol = canonical_basis(nullspace(coefficient_matrix({Dbar.image(0), Dbar.image(1), -power}), RingId::Q, 3),
                                     RingId::Q, 3);
    for (const auto& r : sol) {
        if (r[2].is_zero()) continue;
        const Rational s = rat(r[2]).inverse();
        out.v2 = LinearForm{{r[0].scaled(s), r[1].scaled(s)}};
        return out;
    }
    throw Error(ErrorKind::NoPreimage, "v1^(d+1) is not in the image of linear forms");
}

std::vector<LinearForm> SaForm::coords() const {
    std::vector<LinearForm> out;
    for (const auto& row : change.matrix()) {
        Row r;
        for (const auto& x : row) r.emplace_back(x);
        out.push_back(LinearForm{r});
    }
    return out;
}

SaForm normalize_sa(const Derivation& D, const LinearForm& X, const Poly& P, unsigned bound) {
    require_q(D, "normalize_sa");
    if (X.coeffs.size() != 3 || P.ring() != RingId::Q || P.nvars() != 3)
        throw Error(ErrorKind::DimensionError, "normalize_sa: inputs must live in Q[X,Y,Z]");
    if (!kernel_member(D, X.to_poly(RingId::Q))) throw Error(ErrorKind::NotInKernel, "the given linear form is not in ker D");
    auto d = homogeneity_degree(D, {1, 1, 1});
    if (!d) throw Error(ErrorKind::NotHomogeneous, "D is not homogeneous");

    const LinearChange c0(complete_basis(X));
    const auto rd = rentschler_data(reduce_mod_var(c0.conjugate(D), 0), *d);
    const auto v1 = unit_leading({rat(rd.v1.coeffs[0]), rat(rd.v1.coeffs[1])});
    const auto v2 = unit_leading({rat(rd.v2.coeffs[0]), rat(rd.v2.coeffs[1])});
    const RatMatrix m1{{Rational(1), Rational(0), Rational(0)}, {Rational(0), v1[0], v1[1]}, {Rational(0), v2[0], v2[1]}};

    SaForm sa;
    sa.d = *d;
    sa.change = c0.then(LinearChange(m1));
    sa.D = sa.change.conjugate(D);
    const auto n = static_cast<unsigned>(*d + 2);
    const Poly P1 = sa.change.to_new(P);
    const RingElem g = P1.coeff(ExpVec{0, n, 0});
    if (g.is_zero()) shape_error("no Y^" + std::to_string(n) + " term in the new coordinates");
    sa.gamma = rat(g);
    const Poly P2 = P1.scaled(sa.gamma.inverse());
    sa.x_strip = rat(P2.coeff(ExpVec{n, 0, 0}));
    sa.P = P2 - monomial(n, 0, 0, sa.x_strip);
    const Poly rest = sa.P - monomial(0, n, 0);
    for (const auto& [e, c] : rest.terms()) {
        if (e[kX] != 0) continue;
        Poly bad(RingId::Q, 3);
        bad.add_term(e, c);
        shape_error("term " + to_string(bad) + " is not divisible by X");
    }
    sa.q = exact_divide(rest, var(kX));
    sa.derivation_scale = derivation_ratio(sa.D, jacobian_derivation(var(kX), sa.P));

    sa.deg_y = deg_d(sa.D, var(kY), bound);
    if (sa.deg_y == 0) shape_error("deg_D(Y) = 0 in the new coordinates");
    if (d_power(sa.D, var(kZ), sa.deg_y + 1).is_zero()) shape_error("deg_D(Z) <= deg_D(Y) in the new coordinates");
    return sa;
}

Poly SbShape::assemble() const {
    Poly out = monomial(0, static_cast<unsigned>(d + 2), 0);
    for (std::size_t k = 0; k < f.size(); ++k) out += var(kX) * f[k] * var(kZ).pow(static_cast<unsigned>(k));
    out += monomial(static_cast<unsigned>(d + 2 - e), 0, static_cast<unsigned>(e), beta);
    return out;
}

SbShape shape_sb(const Poly& P, long d) {
    if (P.ring() != RingId::Q || P.nvars() != 3) throw Error(ErrorKind::UnsupportedRing, "shape_sb works in Q[X,Y,Z]");
    SbShape sb;
    sb.d = d;
    sb.e = P.degree_in(kZ);
    sb.i = d - sb.e;
    if (sb.e < 1) shape_error("P does not involve Z");
    if (sb.e > std::max(d, 1L) || (d + 2) % sb.e != 0) {
        std::ostringstream os;
        os << "top Z-degree " << sb.e << " = d - i with i = " << sb.i << "; need 0 <= i < d and (d - i) | (d + 2) = " << d + 2;
        shape_error(os.str());
    }
    const Poly top = coefficient_in(P, kZ, static_cast<unsigned>(sb.e));
    const auto xe = static_cast<unsigned>(d + 2 - sb.e);
    if (top.size() != 1 || !(top.leading_exp() == ExpVec{xe, 0, 0}))
        shape_error("coefficient of Z^" + std::to_string(sb.e) + " is " + to_string(top) + ", expected beta*X^" + std::to_string(xe));
    sb.beta = rat(top.leading_coeff());
    const auto n = static_cast<unsigned>(d + 2);
    for (long k = 0; k < sb.e; ++k) {
        Poly ck = coefficient_in(P, kZ, static_cast<unsigned>(k));
        if (k == 0) {
            if (!ck.coeff(ExpVec{0, n, 0}).is_one()) shape_error("coefficient of Y^" + std::to_string(n) + " is not 1");
            ck -= monomial(0, n, 0);
        }
        auto fk = try_exact_divide(ck, var(kX));
        if (!fk) shape_error("coefficient of Z^" + std::to_string(k) + " is not divisible by X: " + term_text(ck));
        sb.f.push_back(std::move(*fk));
    }
    return sb;
}

TriangularReport triangular_test(const Derivation& D, const LinearForm& X, const Poly& P, unsigned bound) {
    TriangularReport rep;
    rep.sa = normalize_sa(D, X, P, bound);
    rep.sb = shape_sb(rep.sa.P, rep.sa.d);
    rep.triangular = rep.sb.e == 1;
    if (!rep.triangular) return rep;
    const Derivation& T = rep.sa.D;
    if (!T.image(kX).is_zero() || T.image(kY).uses_var(kY) || T.image(kY).uses_var(kZ) || T.image(kZ).uses_var(kZ))
        shape_error("normalized derivation is not triangular");
    rep.deg_y = deg_d(T, var(kY), bound);
    rep.deg_z = deg_d(T, var(kZ), bound);
    return rep;
}

namespace {

Poly integrate(const Poly& f, std::size_t v) {
    Poly out(f.ring(), f.nvars());
    for (const auto& [e, c] : f.terms()) {
        ExpVec n = e;
        ++n[v];
        out.add_term(n, RingElem(rat(c) / Rational(static_cast<long>(n[v]))));
    }
    return out;
}

} // namespace

std::optional<Poly> jacobian_potential(const Derivation& D, const LinearForm& X) {
    require_q(D, "jacobian_potential");
    const LinearChange c0(complete_basis(X));
    const Derivation E = c0.conjugate(D);
    if (!E.image(kX).is_zero()) return std::nullopt;
    // E(Y) = -P_Z, E(Z) = P_Y.
    Poly P = integrate(E.image(kZ), kY);
    const Poly rest = -E.image(kY) - partial(P, kZ);
    if (rest.uses_var(kY)) return std::nullopt;
    P += integrate(rest, kZ);
    if (!(partial(P, kY) == E.image(kZ)) || !(-partial(P, kZ) == E.image(kY))) return std::nullopt;
    const Poly old = c0.to_old(P);
    const Derivation Delta = jacobian_derivation(X.to_poly(RingId::Q), old);
    if (Delta.is_zero()) return std::nullopt;
    try {
        return old.scaled(derivation_ratio(D, Delta));
    } catch (const Error&) {
        return std::nullopt;
    }
}

Poly ntr_polynomial(long p, long q, const Poly& h, const std::vector<Rational>& c) {
    if (p < 1 || q < 1 || c.size() != static_cast<std::size_t>(p))
        throw Error(ErrorKind::InvalidArgument, "ntr_polynomial: need p, q >= 1 and p coefficients");
    const auto up = static_cast<unsigned>(p), uq = static_cast<unsigned>(q);
    const Poly zt = h + var(kX).pow(uq - 1) * var(kZ);
    Poly P = zt.pow(up);
    for (unsigned j = 1; j < up; ++j)
        if (!c[j - 1].is_zero()) P += monomial(j * uq, 0, 0, c[j - 1]) * zt.pow(up - j);
    P += monomial(up * uq - 1, 1, 0, c[up - 1]);
    return P;
}

Poly NtrReport::expanded() const { return ntr_polynomial(p, q, h, c); }

Poly NtrReport::reconstruct_input() const {
    const auto n = static_cast<unsigned>(p * q);
    return change.to_old(expanded() + monomial(n, 0, 0, x_adjust + x_strip)).scaled(gamma);
}

namespace {

// Root of `top` normalized so that the coefficient at `unit_exp` is +1.
std::optional<Poly> unit_root(const Poly& top, unsigned p, const ExpVec& unit_exp) {
    auto r = nth_root(top, p);
    if (!r) return std::nullopt;
    const RingElem u = r->coeff(unit_exp);
    if (u == RingElem(Rational(-1))) return -*r;
    if (!u.is_one()) return std::nullopt;
    return r;
}

NtrReport ntr_attempt(const SaForm& sa, long p, long q, unsigned bound) {
    const auto up = static_cast<unsigned>(p), uq = static_cast<unsigned>(q);
    if (p < 2 || q < 2) throw Error(ErrorKind::InvalidArgument, "p and q must be at least 2");
    if (sa.d != p * q - 2) throw Error(ErrorKind::InvalidArgument, "degree of D is not pq - 2");

    // Top part for the weights (0, 1, q) must be (Y^q + alpha X^(q-1) Z)^p.
    auto root = unit_root(top_part(sa.P, {0, 1, q}), up, ExpVec{0, uq, 0});
    if (!root) throw Error(ErrorKind::NotAPthPower, "top part for weights (0,1," + std::to_string(q) + ") is not a p-th power");
    const RingElem alpha = root->coeff(ExpVec{uq - 1, 0, 1});
    if (alpha.is_zero() || root->size() != 2)
        throw Error(ErrorKind::NotAPthPower, "root of the top part is " + to_string(*root) + ", expected Y^q + alpha*X^(q-1)*Z");

    NtrReport rep;
    rep.p = p;
    rep.q = q;
    rep.gamma = sa.gamma;
    rep.x_strip = sa.x_strip;
    const LinearChange scale({{Rational(1), Rational(0), Rational(0)},
                              {Rational(0), Rational(1), Rational(0)},
                              {Rational(0), Rational(0), rat(alpha)}});
    rep.change = sa.change.then(scale);
    const Poly P = scale.to_new(sa.P);

    // Rewrite P as sum a_k(X, Y) W^k with W = Y^q + X^(q-1) Z, by descending
    // Z-degree. Below, variable 2 of Pw stands for W.
    const Poly W = var(kY).pow(uq) + var(kX).pow(uq - 1) * var(kZ);
    Poly rem = P;
    Poly Pw(RingId::Q, 3);
    for (int k = static_cast<int>(P.degree_in(kZ)); k >= 0; --k) {
        const auto uk = static_cast<unsigned>(k);
        const Poly b = coefficient_in(rem, kZ, uk);
        if (b.is_zero()) continue;
        auto a = try_exact_divide(b, var(kX).pow((uq - 1) * uk));
        if (!a) throw Error(ErrorKind::RewriteNonExact, "Z^" + std::to_string(k) + " coefficient is not divisible by X^" + std::to_string((uq - 1) * uk));
        rem -= *a * W.pow(uk);
        Pw += *a * var(kZ).pow(uk);
    }
    if (!rem.is_zero()) throw Error(ErrorKind::RewriteNonExact, "remainder " + term_text(rem) + " after rewriting");

    rep.h = var(kY).pow(uq);
    while (true) {
        const Poly a0 = coefficient_in(Pw, kZ, 0);
        const int s = a0.degree_in(kY);
        if (s <= 1) break;
        if (++rep.iterations > uq) throw Error(ErrorKind::NonTermination, "iteration budget q exhausted");
        if (s % p != 0 || s / p >= q)
            throw Error(ErrorKind::ShapeViolation, "trailing coefficient has Y-degree " + std::to_string(s) + ", not r*p with 1 <= r < q");
        const auto r = static_cast<unsigned>(s / p);
        auto rr = unit_root(top_part(Pw, {0, 1, static_cast<long>(r)}), up, ExpVec{0, 0, 1});
        if (!rr) throw Error(ErrorKind::NotAPthPower, "top part for weights (0,1," + std::to_string(r) + ") is not a p-th power");
        const RingElem lambda = rr->coeff(ExpVec{uq - r, r, 0});
        if (lambda.is_zero() || rr->size() != 2)
            throw Error(ErrorKind::NotAPthPower, "root " + to_string(*rr) + " is not W + lambda*X^(q-r)*Y^r");
        const Poly shift = monomial(uq - r, r, 0, rat(lambda));
        const std::vector<Poly> sub{var(kX), var(kY), var(kZ) - shift};
        Pw = substitute(Pw, sub);
        rep.h += shift;
    }

    if (!(coefficient_in(Pw, kZ, up) == Poly::constant(RingId::Q, 3, 1)) || Pw.degree_in(kZ) != static_cast<int>(up))
        throw Error(ErrorKind::ShapeViolation, "leading W-coefficient is not 1");
    rep.c.assign(up, Rational(0));
    for (unsigned j = 1; j < up; ++j) {
        const Poly a = coefficient_in(Pw, kZ, up - j);
        if (a.is_zero()) continue;
        if (a.size() != 1 || !(a.leading_exp() == ExpVec{j * uq, 0, 0}))
            throw Error(ErrorKind::ShapeViolation, "coefficient of W^" + std::to_string(up - j) + " is " + to_string(a) + ", not c*X^" + std::to_string(j * uq));
        rep.c[j - 1] = rat(a.leading_coeff());
    }
    const Poly a0 = coefficient_in(Pw, kZ, 0);
    const unsigned n = up * uq;
    rep.c[up - 1] = rat(a0.coeff(ExpVec{n - 1, 1, 0}));
    rep.x_adjust = rat(a0.coeff(ExpVec{n, 0, 0}));
    if (!(a0 == monomial(n - 1, 1, 0, rep.c[up - 1]) + monomial(n, 0, 0, rep.x_adjust)))
        throw Error(ErrorKind::ShapeViolation, "trailing coefficient is " + to_string(a0));
    if (rep.c[up - 1].is_zero()) throw Error(ErrorKind::ShapeViolation, "c_p = 0");

    rep.z_tilde = rep.h + var(kX).pow(uq - 1) * var(kZ);
    const Poly Pn = rep.expanded();
    if (!(Pn + monomial(n, 0, 0, rep.x_adjust) == P)) throw Error(ErrorKind::RewriteNonExact, "normal form does not expand back to P");
    const Derivation Delta = jacobian_derivation(var(kX), Pn);
    rep.deg_y = deg_d(Delta, var(kY), bound);
    rep.deg_z = deg_d(Delta, var(kZ), bound);
    return rep;
}

} // namespace

NtrReport ntr_normal_form(const Derivation& D, const LinearForm& X, const Poly& P, long p, long q, unsigned bound) {
    const SaForm sa = normalize_sa(D, X, P, bound);
    if (shape_sb(sa.P, sa.d).e == 1) throw Error(ErrorKind::ShapeViolation, "D is triangularizable");
    try {
        return ntr_attempt(sa, p, q, bound);
    } catch (const Error& first) {
        if (p == q) throw;
        try {
            NtrReport rep = ntr_attempt(sa, q, p, bound);
            rep.swapped = true;
            return rep;
        } catch (const Error&) {
            throw first;
        }
    }
}

NewtonPolygon newton_polygon(const Poly& f, std::size_t i, std::size_t j) {
    const auto pts_set = support_points(f, i, j);
    std::vector<LatticePoint> pts(pts_set.begin(), pts_set.end());
    NewtonPolygon out;
    if (pts.size() <= 2) {
        out.vertices = pts;
        return out;
    }
    auto cross = [](const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
        return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
    };
    std::vector<LatticePoint> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& pt : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pt) <= 0) --k;
        hull[k++] = pt;
    }
    for (std::size_t idx = pts.size() - 1, lower = k + 1; idx-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[idx]) <= 0) --k;
        hull[k++] = pts[idx];
    }
    hull.resize(k - 1);
    out.vertices = hull;
    return out;
}

NpCheck np_check(const NewtonPolygon& poly) {
    NpCheck r;
    const auto& v = poly.vertices;
    if (v.empty() || v.front() != LatticePoint{0, 0}) return r;
    if (v.size() == 1) {
        r.ok = r.degenerate = true;
        return r;
    }
    if (v.size() == 2) {
        const auto [a, b] = v[1];
        r.m = b == 0 ? a : 0;
        r.n = a == 0 ? b : 0;
        r.ok = r.degenerate = (a == 0 || b == 0);
        return r;
    }
    if (v.size() != 3 || v[1].second != 0 || v[2].first != 0) return r;
    r.m = v[1].first;
    r.n = v[2].second;
    r.ok = r.m > 0 && r.n > 0 && (r.n % r.m == 0 || r.m % r.n == 0);
    return r;
}

} // namespace lnd

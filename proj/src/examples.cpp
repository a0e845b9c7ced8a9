#include "lnd/examples.hpp"

#include "lnd/error.hpp"

#include <algorithm>
#include <sstream>

namespace lnd {

void VerificationReport::add(std::string name, bool pass, std::string witness) {
    checks.push_back({std::move(name), pass, std::move(witness)});
}

bool VerificationReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* VerificationReport::find(std::string_view name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

const std::vector<std::string> kLower{"x", "y", "z"};
const std::vector<std::string> kUpper{"X", "Y", "Z"};

Poly var(RingId r, std::size_t i) { return Poly::variable(r, 3, i); }
Poly cst(RingId r, const RingElem& c) { return Poly::constant(r, 3, c); }
Poly cst(RingId r, long c) { return Poly::constant(r, 3, c); }

std::string join(const std::vector<unsigned>& v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
    return os.str();
}

std::string orders_str(const NilpotenceCert& cert) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < cert.orders.size(); ++i) {
        if (i) os << ',';
        if (cert.orders[i]) os << *cert.orders[i];
        else os << "null";
    }
    os << ']';
    return os.str();
}

std::vector<unsigned> orders_of(const NilpotenceCert& cert) {
    std::vector<unsigned> out;
    for (const auto& o : cert.orders) out.push_back(o.value_or(0));
    return out;
}

void add_zero(VerificationReport& rep, const std::string& name, const Poly& value, const std::vector<std::string>& names) {
    rep.add(name, value.is_zero(), value.str(names));
}

// Runs fn and records a failed check instead of propagating library errors.
template <typename Fn>
void guarded(VerificationReport& rep, const std::string& name, Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        rep.add(name, false, std::string("error: ") + e.what());
    }
}

bool proportional(const Row& a, const Row& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return false;
    return true;
}

Row linear_row(const Poly& f) {
    Row row;
    for (std::size_t i = 0; i < f.nvars(); ++i) {
        ExpVec e(f.nvars());
        e[i] = 1;
        row.push_back(f.coeff(e));
    }
    return row;
}

std::string degree_witness(const Derivation& D, const std::vector<std::string>& names, unsigned bound, std::vector<unsigned>& out) {
    std::ostringstream os;
    for (std::size_t i = 0; i < D.nvars(); ++i) {
        out.push_back(deg_d(D, Poly::variable(D.ring(), D.nvars(), i), bound));
        os << (i ? ", " : "") << "deg_D(" << names[i] << ")=" << out.back();
    }
    return os.str();
}

Poly mod_t(const Poly& f) {
    return map_coefficients(f, RingId::Q, [](const RingElem& c) { return RingElem(c.as_unipoly().coeff(0)); });
}

// lambda with a = lambda * b, if any.
std::optional<Rational> ratio(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero() || a.leading_exp() != b.leading_exp()) return std::nullopt;
    const Rational lambda = a.leading_coeff().as_rational() * b.leading_coeff().as_rational().inverse();
    if (a != b.scaled(lambda)) return std::nullopt;
    return lambda;
}

} // namespace

Example1 build_example1() {
    constexpr RingId R = RingId::PolyT;
    const Poly t = cst(R, RingElem::t());
    const Poly x = var(R, 0), y = var(R, 1), z = var(R, 2);
    Example1 ex;
    ex.F = x * (t * z + x) - t.pow(2) * y.pow(2);
    ex.G = (t * z + x) * ex.F.pow(2) + cst(R, 2) * t * x.pow(2) * y * ex.F + x.pow(5);
    ex.P = t * y * ex.F + x.pow(3);
    ex.D = Derivation({cst(R, -2) * t.pow(2) * ex.F * ex.P, t * (cst(R, 6) * x.pow(2) * ex.P - ex.G),
                       cst(R, 2) * x * (cst(R, 5) * t.pow(2) * y * ex.P + t * ex.F.pow(2)) + cst(R, 2) * t * ex.F * ex.P});
    const Poly& F1 = ex.F1 = x * z - t * y.pow(2);
    ex.G1 = x.pow(4) * z + cst(R, 2) * t * x.pow(2) * F1 * z + t.pow(2) * F1.pow(2) * z + cst(R, 2) * x.pow(3) * F1 +
            t * x * F1.pow(2) + cst(R, 2) * x.pow(2) * y * ex.F;
    const Poly& G1 = ex.G1;
    ex.H = cst(R, 4) * x.pow(5) * G1 + t * G1.pow(2) - cst(R, 20) * x.pow(8) * F1 - cst(R, 40) * t * x.pow(6) * F1.pow(2) -
           cst(R, 40) * t.pow(2) * x.pow(4) * F1.pow(3) - cst(R, 20) * t.pow(3) * x.pow(2) * F1.pow(4) -
           cst(R, 4) * t.pow(4) * F1.pow(5);
    return ex;
}

VerificationReport verify_example1(unsigned bound) {
    const Example1 ex = build_example1();
    constexpr RingId R = RingId::PolyT;
    const Poly t = cst(R, RingElem::t());
    const Poly x = var(R, 0);
    VerificationReport rep;
    rep.instance = "example1";

    const auto cert = certify_nilpotent(ex.D, bound);
    rep.add("nilpotence_orders", cert.certified && orders_of(cert) == std::vector<unsigned>{3, 7, 11}, orders_str(cert));
    add_zero(rep, "DF", d_apply(ex.D, ex.F), kLower);
    add_zero(rep, "DG", d_apply(ex.D, ex.G), kLower);
    add_zero(rep, "DH", d_apply(ex.D, ex.H), kLower);
    add_zero(rep, "relation_G2_4F5_tH", ex.G.pow(2) - ex.F.pow(5).scaled(Rational(4)) - t * ex.H, kLower);
    add_zero(rep, "F_eq_x2_tF1", ex.F - x.pow(2) - t * ex.F1, kLower);
    add_zero(rep, "G_eq_2x5_tG1", ex.G - cst(R, 2) * x.pow(5) - t * ex.G1, kLower);

    const auto hd = homogeneity_degree(ex.D, {1, 1, 1});
    rep.add("homogeneity_degree", hd == 4, hd ? std::to_string(*hd) : "not homogeneous");

    const KernelType kt = kernel_type(ex.F, ex.G, {1, 1, 1});
    rep.add("kernel_type", kt.p == 2 && kt.q == 5 && kt.d == 4,
            "(" + std::to_string(kt.p) + "," + std::to_string(kt.q) + "), d=" + std::to_string(kt.d));

    // Modulo t, G^a - lambda F^b vanishes only for (a, b) = (2, 5).
    const Poly F0 = mod_t(ex.F), G0 = mod_t(ex.G);
    for (unsigned b : {3u, 4u}) {
        const auto lambda = ratio(G0.pow(2), F0.pow(b));
        rep.add("no_relation_G2_F" + std::to_string(b), !lambda.has_value(),
                lambda ? "lambda=" + lambda->str() : "G^2 mod t is not a multiple of F^" + std::to_string(b) + " mod t");
    }
    const auto lambda5 = ratio(G0.pow(2), F0.pow(5));
    rep.add("relation_G2_F5_mod_t", lambda5 == Rational(4), lambda5 ? "lambda=" + lambda5->str() : "none");

    rep.asserted = {"ker(D) = k[t,F,G,H] (kernel completeness via the homogeneous (2,5) derivation)",
                    "ker(D) is not R^[2]", "rank(D) = 3"};
    return rep;
}

Example2 build_example2(long d) {
    if (d < 0) throw Error(ErrorKind::InvalidArgument, "example 2 needs d >= 0");
    constexpr RingId R = RingId::Circle;
    const auto ud = static_cast<unsigned>(d);
    const Poly w1 = cst(R, RingElem::w1()), w2 = cst(R, RingElem::w2()), one = cst(R, 1);
    const Poly X = var(R, 0), Y = var(R, 1), Z = var(R, 2);
    Example2 ex;
    ex.d = d;
    ex.X1 = w1 * X + (one - w2) * Y;
    ex.X2 = (one + w2) * X + w1 * Y;
    const Poly X1p = ex.X1.pow(ud + 1);
    ex.D = Derivation({(one - w2) * X1p, -(w1 * X1p), cst(R, d + 2) * w1 * Y.pow(ud + 1)});
    ex.F = Y.pow(ud + 2) + X1p * Z;
    return ex;
}

VerificationReport verify_example2(long d, unsigned bound) {
    const Example2 ex = build_example2(d);
    constexpr RingId R = RingId::Circle;
    const auto ud = static_cast<unsigned>(d);
    VerificationReport rep;
    rep.instance = "example2(d=" + std::to_string(d) + ")";

    add_zero(rep, "DX1", d_apply(ex.D, ex.X1), kUpper);
    add_zero(rep, "DX2", d_apply(ex.D, ex.X2), kUpper);
    add_zero(rep, "DF", d_apply(ex.D, ex.F), kUpper);
    const Poly w1 = cst(R, RingElem::w1()), w2 = cst(R, RingElem::w2());
    add_zero(rep, "w1X2_eq_(1+w2)X1", w1 * ex.X2 - (cst(R, 1) + w2) * ex.X1, kUpper);

    const auto cert = certify_nilpotent(ex.D, bound);
    rep.add("nilpotent", cert.certified, orders_str(cert));
    const auto hd = homogeneity_degree(ex.D, {1, 1, 1});
    rep.add("homogeneity_degree", hd == d, hd ? std::to_string(*hd) : "not homogeneous");

    guarded(rep, "degrees", [&] {
        std::vector<unsigned> degs;
        const std::string w = degree_witness(ex.D, kUpper, bound, degs);
        rep.add("degrees", degs == std::vector<unsigned>{1, 1, ud + 2}, w);
    });

    guarded(rep, "filtration_jumps", [&] {
        const LinearFiltration filt = linear_filtration(ex.D, bound);
        const auto jumps = filt.jumps();
        rep.add("filtration_jumps", jumps == std::vector<unsigned>{0, 1, ud + 2}, join(jumps));
        const Stratum& s0 = filt.strata.front();
        const bool prop = s0.dim == 1 && proportional(s0.basis.front().coeffs, linear_row(ex.X1));
        rep.add("m0_form_proportional_to_X1", prop, s0.dim ? s0.basis.front().str(kUpper) : "empty");
        const auto triple = strict_triple(filt);
        rep.add("strict_triple_over_fraction_field", triple && triple->degrees == std::vector<unsigned>{0, 1, ud + 2},
                triple ? join(triple->degrees) : "none");
    });

    // The kernel form exists over the fraction field but is not certified a variable.
    const RankBound rb = rank_upper(ex.D);
    const bool undecided = rb.kernel_dim == 1 && !rb.decided && rb.witnesses.size() == 1 &&
                           rb.witnesses.front().status == FormStatus::Undecided;
    rep.add("rank_kernel_form_undecided", undecided,
            rb.witnesses.empty() ? "no kernel form"
                                 : rb.witnesses.front().form.str(kUpper) + ": " + rb.witnesses.front().reason);

    rep.asserted = {"neither X1 nor X2 is a variable of R[X,Y,Z]", "ker(D) = R[X1,X2,F] is not R^[2]", "rank(D) = 3",
                    "no system of linear variables with strictly increasing deg_D"};
    return rep;
}

Example3 build_example3(long d) {
    if (d < 0) throw Error(ErrorKind::InvalidArgument, "example 3 needs d >= 0");
    constexpr RingId R = RingId::Circle;
    const auto ud = static_cast<unsigned>(d);
    const Poly w1 = cst(R, RingElem::w1()), w2 = cst(R, RingElem::w2()), one = cst(R, 1);
    const Poly X = var(R, 0), Y = var(R, 1), Z = var(R, 2);
    Example3 ex;
    ex.d = d;
    ex.D = Derivation({Poly(R, 3), (one + w2) * X.pow(ud + 1), cst(R, -2) * w1 * Y * X.pow(ud)});
    ex.F1 = w1 * Y.pow(2) + (one + w2) * X * Z;
    ex.F2 = (one - w2) * Y.pow(2) + w1 * X * Z;
    return ex;
}

VerificationReport verify_example3(long d, unsigned bound) {
    const Example3 ex = build_example3(d);
    constexpr RingId R = RingId::Circle;
    VerificationReport rep;
    rep.instance = "example3(d=" + std::to_string(d) + ")";

    add_zero(rep, "DX", d_apply(ex.D, var(R, 0)), kUpper);
    add_zero(rep, "DF1", d_apply(ex.D, ex.F1), kUpper);
    add_zero(rep, "DF2", d_apply(ex.D, ex.F2), kUpper);
    const Poly w1 = cst(R, RingElem::w1()), w2 = cst(R, RingElem::w2());
    add_zero(rep, "(1-w2)F1_eq_w1F2", (cst(R, 1) - w2) * ex.F1 - w1 * ex.F2, kUpper);

    const auto cert = certify_nilpotent(ex.D, bound);
    rep.add("nilpotent", cert.certified, orders_str(cert));
    const auto hd = homogeneity_degree(ex.D, {1, 1, 1});
    rep.add("homogeneity_degree", hd == d, hd ? std::to_string(*hd) : "not homogeneous");

    const RankBound rb = rank_upper(ex.D);
    bool via_x = false;
    std::string witness = "no certified kernel variable";
    for (const auto& w : rb.witnesses)
        if (w.status == FormStatus::Certified && proportional(w.form.coeffs, linear_row(var(R, 0)))) {
            via_x = true;
            witness = w.form.str(kUpper) + ": " + w.reason;
        }
    rep.add("rank_upper_bound_2", rb.bound == 2 && rb.decided && via_x, "bound " + std::to_string(rb.bound) + ", " + witness);

    rep.asserted = {"ker(D) = R[X,F1,F2] is not R^[2]", "rank(D) = 2 exactly"};
    return rep;
}

namespace {

bool binary_form_of_degree(const Poly& f, long deg) {
    if (f.ring() != RingId::Q || f.nvars() != 3) return false;
    for (const auto& [e, c] : f.terms())
        if (e[2] != 0 || static_cast<long>(e.total()) != deg) return false;
    return true;
}

LinearForm x_form() { return LinearForm{{RingElem(Rational(1)), RingElem(Rational(0)), RingElem(Rational(0))}}; }

} // namespace

Instance build_tr_instance(long d, const Poly& f, const Rational& beta) {
    if (d < 0 || beta.is_zero() || !binary_form_of_degree(f, d + 1))
        throw Error(ErrorKind::ShapeViolation, "tr instance needs d >= 0, beta != 0 and f homogeneous of degree d+1 in X, Y");
    const auto ud = static_cast<unsigned>(d);
    const Poly X = var(RingId::Q, 0), Y = var(RingId::Q, 1), Z = var(RingId::Q, 2);
    Instance inst;
    inst.name = "tr(d=" + std::to_string(d) + ")";
    inst.P = Y.pow(ud + 2) + X * f + X.pow(ud + 1).scaled(beta) * Z;
    inst.D = jacobian_derivation(X, inst.P);
    inst.X = x_form();
    inst.expected = Classification::Triangular;
    inst.d = d;
    inst.deg_y = 1;
    inst.deg_z = ud + 2;
    return inst;
}

Instance build_ntr_instance(long p, long q, const Poly& h, const std::vector<Rational>& c) {
    if (p < 2 || q < 2 || c.size() != static_cast<std::size_t>(p) || c.back().is_zero())
        throw Error(ErrorKind::ShapeViolation, "ntr instance needs p, q >= 2, p coefficients and c_p != 0");
    if (!binary_form_of_degree(h, q) || !h.coeff(ExpVec{0, static_cast<unsigned>(q), 0}).is_one())
        throw Error(ErrorKind::ShapeViolation, "h must be homogeneous of degree q in X, Y and monic in Y");
    Instance inst;
    inst.name = "ntr(p=" + std::to_string(p) + ",q=" + std::to_string(q) + ")";
    inst.P = ntr_polynomial(p, q, h, c);
    inst.D = jacobian_derivation(var(RingId::Q, 0), inst.P);
    inst.X = x_form();
    inst.expected = Classification::NotTriangular;
    inst.p = p;
    inst.q = q;
    inst.d = p * q - 2;
    inst.deg_y = static_cast<unsigned>(p);
    inst.deg_z = static_cast<unsigned>(p * q);
    return inst;
}

Instance change_coordinates(const Instance& inst, const LinearChange& change) {
    Instance out = inst;
    out.D = change.conjugate(inst.D);
    out.P = change.to_new(inst.P);
    out.X = LinearForm{linear_row(change.to_new(inst.X.to_poly(RingId::Q)))};
    return out;
}

VerificationReport verify_instance(const Instance& inst, unsigned bound) {
    VerificationReport rep;
    rep.instance = inst.name;
    add_zero(rep, "DX", d_apply(inst.D, inst.X.to_poly(RingId::Q)), kUpper);
    add_zero(rep, "DP", d_apply(inst.D, inst.P), kUpper);

    std::optional<TriangularReport> tr;
    guarded(rep, "classification", [&] {
        tr = triangular_test(inst.D, inst.X, inst.P, bound);
        const bool want = inst.expected == Classification::Triangular;
        rep.add("classification", tr->triangular == want, tr->triangular ? "Triangular" : "NotTriangular");
    });
    if (!tr) return rep;

    if (inst.expected == Classification::Triangular) {
        rep.add("degrees", tr->triangular && tr->deg_y == inst.deg_y && tr->deg_z == inst.deg_z,
                "deg_D(Y)=" + std::to_string(tr->deg_y) + ", deg_D(Z)=" + std::to_string(tr->deg_z));
    } else {
        guarded(rep, "round_trip", [&] {
            const NtrReport nf = ntr_normal_form(inst.D, inst.X, inst.P, inst.p, inst.q, bound);
            const Poly back = nf.reconstruct_input();
            rep.add("round_trip", back == inst.P, "Zt = " + nf.z_tilde.str(kUpper));
            rep.add("degrees", nf.deg_y == inst.deg_y && nf.deg_z == inst.deg_z,
                    "deg_D(Y)=" + std::to_string(nf.deg_y) + ", deg_D(Z)=" + std::to_string(nf.deg_z));
        });
    }

    const NewtonPolygon np = newton_polygon(tr->sa.P, 1, 2);
    const NpCheck npc = np_check(np);
    std::ostringstream os;
    for (const auto& [a, b] : np.vertices) os << "(" << a << "," << b << ")";
    rep.add("newton_polygon", npc.ok, os.str());
    return rep;
}

} // namespace lnd

#include "generators.hpp"

#include "lnd/error.hpp"
#include "lnd/normal_form.hpp"

#include <doctest.h>

using namespace lnd;
using lnd::testing::Engine;

namespace {

const Poly X = Poly::variable(RingId::Q, 3, 0);
const Poly Y = Poly::variable(RingId::Q, 3, 1);
const Poly Z = Poly::variable(RingId::Q, 3, 2);
Poly c(long v) { return Poly::constant(RingId::Q, 3, v); }
Poly cq(long n, long d) { return Poly::constant(RingId::Q, 3, RingElem(Rational(mpz_class(n), mpz_class(d)))); }

const LinearForm kX{{RingElem(Rational(1)), RingElem(Rational(0)), RingElem(Rational(0))}};

Poly v2(unsigned i) { return Poly::variable(RingId::Q, 2, i); }

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

} // namespace

TEST_CASE("reduce_mod_var") {
    const Derivation D({Poly(RingId::Q, 3), -X.pow(2), c(3) * Y.pow(2) + c(2) * X * Y});
    const Derivation Dbar = reduce_mod_var(D, 0);
    CHECK(Dbar.nvars() == 2);
    CHECK(Dbar.image(0).is_zero());
    CHECK(Dbar.image(1) == Poly::constant(RingId::Q, 2, 3) * v2(0).pow(2));

    const Poly s = Y.pow(2) + X * Z;
    const Derivation E = jacobian_derivation(X, s.pow(2) + X.pow(3) * Y);
    const Derivation Ebar = reduce_mod_var(E, 0);
    CHECK(Ebar.image(0).is_zero());
    CHECK(Ebar.image(1) == Poly::constant(RingId::Q, 2, 4) * v2(0).pow(3));

    CHECK(reduce_mod_var(Derivation::zero(RingId::Q, 3), 0).is_zero());
    CHECK(kind_of([&] { reduce_mod_var(D, 1); }) == ErrorKind::NotInKernel);
}

TEST_CASE("rentschler data") {
    const Poly zero2(RingId::Q, 2);
    auto r = rentschler_data(Derivation({zero2, Poly::constant(RingId::Q, 2, 3) * v2(0).pow(2)}), 1);
    CHECK(r.v1.to_poly(RingId::Q) == v2(0));
    CHECK(r.v2.to_poly(RingId::Q) == v2(1).scaled(Rational(mpz_class(1), mpz_class(3))));
    CHECK(r.alpha == Rational(1));

    auto id = rentschler_data(Derivation({zero2, v2(0).pow(3)}), 2);
    CHECK(id.v1.to_poly(RingId::Q) == v2(0));
    CHECK(id.v2.to_poly(RingId::Q) == v2(1));

    auto r4 = rentschler_data(Derivation({zero2, Poly::constant(RingId::Q, 2, 4) * v2(0).pow(3)}), 2);
    CHECK(r4.v2.to_poly(RingId::Q) == v2(1).scaled(Rational(mpz_class(1), mpz_class(4))));

    CHECK(kind_of([&] { rentschler_data(Derivation::zero(RingId::Q, 2), 1); }) == ErrorKind::NoLinearKernel);
    // D(V) = W, D(W) = V has no linear kernel.
    CHECK(kind_of([&] { rentschler_data(Derivation({v2(1), v2(0)}), 0); }) == ErrorKind::NoLinearKernel);
    // Kernel form V, but V^2 is not hit by a linear form.
    CHECK(kind_of([&] { rentschler_data(Derivation({zero2, v2(0) * v2(1)}), 1); }) == ErrorKind::NoPreimage);
}

TEST_CASE("normalize_sa examples") {
    const Poly P = Y.pow(3) + X * Y.pow(2) + X.pow(2) * Z;
    const SaForm sa = normalize_sa(jacobian_derivation(X, P), kX, P);
    CHECK(sa.P == P);
    CHECK(sa.gamma == Rational(1));
    CHECK(sa.x_strip == Rational(0));
    CHECK(sa.derivation_scale == Rational(1));
    CHECK(sa.change.matrix() == LinearChange::identity(3).matrix());
    CHECK(sa.q == Y.pow(2) + X * Z);

    // Y and Z exchanged in the input.
    const Poly Q = Z.pow(3) + X * Z.pow(2) + X.pow(2) * Y;
    const SaForm sw = normalize_sa(jacobian_derivation(X, Q), kX, Q);
    CHECK(sw.P == P);
    CHECK(sw.coords()[1].to_poly(RingId::Q) == Z);
    CHECK(sw.coords()[2].to_poly(RingId::Q) == Y);
    CHECK(sw.derivation_scale == Rational(-1));
    CHECK(deg_d(sw.D, Y) < deg_d(sw.D, Z));

    const Poly s = Y.pow(2) + X * Z;
    const Poly R = s.pow(2) + X.pow(3) * Y;
    const SaForm sr = normalize_sa(jacobian_derivation(X, R), kX, R);
    CHECK(sr.P == R);
    CHECK(sr.q == c(2) * Y.pow(2) * Z + X * Z.pow(2) + X.pow(2) * Y);

    // A scaled input with an X^(d+2) monomial.
    const Poly T = c(3) * P + c(5) * X.pow(3);
    const SaForm st = normalize_sa(jacobian_derivation(X, T), kX, T);
    CHECK(st.gamma == Rational(3));
    CHECK(st.x_strip == Rational(mpz_class(5), mpz_class(3)));
    CHECK(st.P == P);

    CHECK(kind_of([&] { normalize_sa(jacobian_derivation(X, P), LinearForm{{RingElem(Rational(0)), RingElem(Rational(1)), RingElem(Rational(0))}}, P); }) ==
          ErrorKind::NotInKernel);
}

TEST_CASE("shape_sb examples") {
    const SbShape a = shape_sb(Y.pow(3) + X * Y.pow(2) + X.pow(2) * Z, 1);
    CHECK(a.i == 0);
    CHECK(a.e == 1);
    CHECK(a.beta == Rational(1));
    REQUIRE(a.f.size() == 1);
    CHECK(a.f[0] == Y.pow(2));

    const SbShape b = shape_sb(Y.pow(4) + c(2) * X * Y.pow(2) * Z + X.pow(2) * Z.pow(2) + X.pow(3) * Y, 2);
    CHECK(b.i == 0);
    CHECK(b.e == 2);
    CHECK(b.beta == Rational(1));
    REQUIRE(b.f.size() == 2);
    CHECK(b.f[0] == X.pow(2) * Y);
    CHECK(b.f[1] == c(2) * Y.pow(2));

    CHECK(kind_of([&] { shape_sb(Y.pow(4) + X * Z.pow(3), 2); }) == ErrorKind::ShapeViolation);
    // d = 0: P = Y^2 + beta X Z.
    const SbShape z = shape_sb(Y.pow(2) + c(2) * X * Z + X * Y, 0);
    CHECK(z.e == 1);
    CHECK(z.i == -1);
    CHECK(z.assemble() == Y.pow(2) + c(2) * X * Z + X * Y);
}

TEST_CASE("triangular_test examples") {
    const Poly P = Y.pow(3) + X * Y.pow(2) + X.pow(2) * Z;
    const auto tr = triangular_test(jacobian_derivation(X, P), kX, P);
    CHECK(tr.triangular);
    CHECK(tr.sa.D.image(1) == -X.pow(2));
    CHECK(tr.sa.D.image(2) == c(3) * Y.pow(2) + c(2) * X * Y);
    CHECK(tr.deg_y == 1);
    CHECK(tr.deg_z == 3);

    const Poly s = Y.pow(2) + X * Z;
    const Poly R = s.pow(2) + X.pow(3) * Y;
    const auto nt = triangular_test(jacobian_derivation(X, R), kX, R);
    CHECK_FALSE(nt.triangular);
    CHECK(nt.sb.e == 2);
}

TEST_CASE("ntr normal form examples") {
    const Poly s = Y.pow(2) + X * Z;
    const Poly R = s.pow(2) + X.pow(3) * Y;
    const auto rep = ntr_normal_form(jacobian_derivation(X, R), kX, R, 2, 2);
    CHECK(rep.h == Y.pow(2));
    CHECK(rep.c == std::vector<Rational>{Rational(0), Rational(1)});
    CHECK(rep.z_tilde == s);
    CHECK(rep.deg_y == 2);
    CHECK(rep.deg_z == 4);
    CHECK(rep.reconstruct_input() == R);

    const Poly t = Y.pow(3) + X * Y.pow(2) + X.pow(2) * Z;
    const Poly P = t.pow(2) + X.pow(5) * Y;
    const auto r23 = ntr_normal_form(jacobian_derivation(X, P), kX, P, 2, 3);
    CHECK(r23.h == Y.pow(3) + X * Y.pow(2));
    CHECK(r23.c == std::vector<Rational>{Rational(0), Rational(1)});
    CHECK(r23.z_tilde == t);
    CHECK_FALSE(r23.swapped);
    CHECK(r23.deg_y == 2);
    CHECK(r23.deg_z == 6);
    CHECK(r23.reconstruct_input() == P);

    // The same polynomial with the orders exchanged is found after the swap.
    const auto r32 = ntr_normal_form(jacobian_derivation(X, P), kX, P, 3, 2);
    CHECK(r32.swapped);
    CHECK(r32.p == 2);

    const Poly bad = s.pow(2) + X.pow(4);
    CHECK_THROWS_AS(ntr_normal_form(jacobian_derivation(X, bad), kX, bad, 2, 2), Error);
}

TEST_CASE("Newton polygons") {
    const Poly s = Y.pow(2) + X * Z;
    auto a = newton_polygon(s, 1, 2);
    CHECK(a.vertices == std::vector<LatticePoint>{{0, 0}, {2, 0}, {0, 1}});
    CHECK(np_check(a).ok);
    auto b = newton_polygon(s.pow(2) + X.pow(3) * Y, 1, 2);
    CHECK(b.vertices == std::vector<LatticePoint>{{0, 0}, {4, 0}, {0, 2}});
    CHECK(np_check(b).ok);
    auto bad = newton_polygon(Y.pow(3) + Z.pow(2) + Y * Z.pow(2), 1, 2);
    CHECK(bad.vertices == std::vector<LatticePoint>{{0, 0}, {3, 0}, {1, 2}, {0, 2}});
    CHECK_FALSE(np_check(bad).ok);
    auto nodiv = newton_polygon(Y.pow(3) + Z.pow(2), 1, 2);
    CHECK_FALSE(np_check(nodiv).ok);
    auto pt = np_check(newton_polygon(c(3), 1, 2));
    CHECK(pt.ok);
    CHECK(pt.degenerate);
    auto seg = np_check(newton_polygon(X * Y.pow(3), 1, 2));
    CHECK(seg.ok);
    CHECK(seg.degenerate);
    CHECK(seg.m == 3);
    CHECK_FALSE(np_check(newton_polygon(Y * Z, 1, 2)).ok);
}

TEST_CASE("property: sa normalization and sb shape in random coordinates") {
    Engine rng(31);
    for (int k = 0; k < 40; ++k) {
        const auto d = static_cast<unsigned>(testing::small_int(rng, 0, 4));
        const Poly P = testing::random_tr_polynomial(rng, d);
        const auto inst = testing::move_instance(rng, P);
        const SaForm sa = normalize_sa(inst.D, inst.X, inst.P);
        CHECK(sa.P.coeff(ExpVec{0, d + 2, 0}).is_one());
        CHECK(sa.P.coeff(ExpVec{d + 2, 0, 0}).is_zero());
        CHECK(sa.P == Y.pow(d + 2) + X * sa.q);
        const Derivation Delta = jacobian_derivation(X, sa.P);
        for (std::size_t i = 0; i < 3; ++i) CHECK(sa.D.image(i) == Delta.image(i).scaled(sa.derivation_scale));
        CHECK(sa.change.to_old(sa.P + X.pow(d + 2).scaled(sa.x_strip)).scaled(sa.gamma) == inst.P);
        const SbShape sb = shape_sb(sa.P, sa.d);
        CHECK(sb.assemble() == sa.P);
        const auto tr = triangular_test(inst.D, inst.X, inst.P);
        CHECK(tr.triangular);
        CHECK(tr.deg_y == 1);
        CHECK(tr.deg_z == d + 2);
    }
}

TEST_CASE("property: ntr normal form round trip") {
    Engine rng(32);
    const std::vector<std::pair<long, long>> pq{{2, 2}, {2, 3}, {3, 2}, {3, 3}};
    for (int k = 0; k < 24; ++k) {
        const auto [p, q] = pq[static_cast<std::size_t>(k) % pq.size()];
        const Poly h = testing::random_binary_form(rng, static_cast<unsigned>(q), true);
        std::vector<Rational> cs;
        for (long j = 1; j < p; ++j) cs.push_back(testing::small_rational(rng, 2));
        cs.push_back(testing::nonzero_rational(rng));
        const Poly P = ntr_polynomial(p, q, h, cs);
        const auto inst = testing::move_instance(rng, P);
        CHECK_FALSE(triangular_test(inst.D, inst.X, inst.P).triangular);
        const auto rep = ntr_normal_form(inst.D, inst.X, inst.P, p, q);
        CHECK(rep.reconstruct_input() == inst.P);
        CHECK(rep.deg_y == static_cast<unsigned>(p));
        CHECK(rep.deg_z == static_cast<unsigned>(p * q));
        CHECK_FALSE(rep.c.back().is_zero());
        CHECK(rep.h.coeff(ExpVec{0, static_cast<unsigned>(q), 0}).is_one());
        CHECK(np_check(newton_polygon(P, 1, 2)).ok);
    }
}

TEST_CASE("jacobian potential") {
    const Poly P = Y.pow(3) + X * Y.pow(2) + X.pow(2) * Z;
    const auto found = jacobian_potential(jacobian_derivation(X, P), kX);
    REQUIRE(found);
    CHECK(*found == P);
    CHECK_FALSE(jacobian_potential(Derivation({Poly(RingId::Q, 3), Y, Z}), kX));

    Engine rng(33);
    for (int k = 0; k < 20; ++k) {
        const auto d = static_cast<unsigned>(testing::small_int(rng, 0, 3));
        const auto inst = testing::move_instance(rng, testing::random_tr_polynomial(rng, d));
        const auto Q = jacobian_potential(inst.D, inst.X);
        REQUIRE(Q);
        CHECK(jacobian_derivation(inst.X.to_poly(RingId::Q), *Q) == inst.D);
    }
}

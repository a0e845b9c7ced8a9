#include "generators.hpp"

#include "lnd/derivation.hpp"
#include "lnd/error.hpp"

#include <doctest.h>

using namespace lnd;
using lnd::testing::Engine;

namespace {

struct Vars {
    RingId ring;
    Poly X, Y, Z;
    explicit Vars(RingId r)
        : ring(r), X(Poly::variable(r, 3, 0)), Y(Poly::variable(r, 3, 1)), Z(Poly::variable(r, 3, 2)) {}
    Poly c(long v) const { return Poly::constant(ring, 3, v); }
    Poly c(const RingElem& v) const { return Poly::constant(ring, 3, v); }
};

// Circle-ring derivation with X1 = w1 X + (1 - w2) Y in the kernel.
struct Circle2 {
    Vars v{RingId::Circle};
    Poly w1 = v.c(RingElem::w1()), w2 = v.c(RingElem::w2()), one = v.c(1);
    Poly X1 = w1 * v.X + (one - w2) * v.Y;
    Poly X2 = (one + w2) * v.X + w1 * v.Y;
    Derivation D(unsigned d) const {
        return Derivation({(one - w2) * X1.pow(d + 1), -(w1 * X1.pow(d + 1)), v.c(static_cast<long>(d) + 2) * w1 * v.Y.pow(d + 1)});
    }
};

struct Circle3 {
    Vars v{RingId::Circle};
    Poly w1 = v.c(RingElem::w1()), w2 = v.c(RingElem::w2()), one = v.c(1);
    Derivation D(unsigned d) const {
        return Derivation({Poly(RingId::Circle, 3), (one + w2) * v.X.pow(d + 1), v.c(-2) * w1 * v.Y * v.X.pow(d)});
    }
};

Derivation tr_example() {
    Vars q(RingId::Q);
    return Derivation({Poly(RingId::Q, 3), -q.X.pow(2), q.c(3) * q.Y.pow(2) + q.c(2) * q.X * q.Y});
}

} // namespace

TEST_CASE("d_apply on kernel elements") {
    Circle2 c2;
    const Derivation D = c2.D(0);
    CHECK(d_apply(D, c2.X1).is_zero());
    CHECK(d_apply(D, c2.X2).is_zero());
    CHECK(d_apply(D, c2.v.Y.pow(2) + c2.X1 * c2.v.Z).is_zero());
    Circle3 c3;
    CHECK(d_apply(c3.D(0), c3.w1 * c3.v.Y.pow(2) + (c3.one + c3.w2) * c3.v.X * c3.v.Z).is_zero());
    CHECK(d_apply(D, c2.v.c(5)).is_zero());
}

TEST_CASE("nilpotence certificates") {
    Vars q(RingId::Q);
    const auto cert = certify_nilpotent(Derivation::zero(RingId::Q, 3), 8);
    CHECK(cert.certified);
    CHECK(cert.orders == std::vector<std::optional<unsigned>>{1u, 1u, 1u});
    const Derivation E({q.X, Poly(RingId::Q, 3), Poly(RingId::Q, 3)});
    const auto bad = certify_nilpotent(E, 10);
    CHECK_FALSE(bad.certified);
    CHECK(bad.failing_var == 0u);
    CHECK(bad.witness == q.X);
    CHECK_FALSE(bad.orders[0].has_value());
    const auto tr = certify_nilpotent(tr_example());
    CHECK(tr.orders == std::vector<std::optional<unsigned>>{1u, 2u, 4u});
}

TEST_CASE("deg_D and mu_bar") {
    Circle2 c2;
    for (unsigned d = 0; d <= 2; ++d) {
        const Derivation D = c2.D(d);
        CHECK(deg_d(D, c2.v.X) == 1);
        CHECK(deg_d(D, c2.v.Y) == 1);
        CHECK(deg_d(D, c2.v.Z) == d + 2);
        CHECK(deg_d(D, c2.X1) == 0);
    }
    CHECK_THROWS_AS(deg_d(c2.D(0), Poly(RingId::Circle, 3)), Error);
    Vars q(RingId::Q);
    const Derivation E({q.X, Poly(RingId::Q, 3), Poly(RingId::Q, 3)});
    try {
        deg_d(E, q.X, 5);
        FAIL("expected BoundExceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BoundExceeded);
    }

    const Derivation B({Poly(RingId::Q, 3), q.X, q.Y});
    const Poly f = q.Y.pow(2) - q.c(2) * q.X * q.Z;
    CHECK(deg_d(B, f) == 0);
    CHECK(mu_bar(B, f) == 2);
    CHECK(mu_bar(B, q.Y.pow(3)) == deg_d(B, q.Y.pow(3)));
    CHECK(mu_bar(B, q.X.pow(2) + q.X) == 0);
}

TEST_CASE("homogeneity degree") {
    Circle2 c2;
    for (unsigned d = 0; d <= 3; ++d) CHECK(homogeneity_degree(c2.D(d), {1, 1, 1}) == static_cast<long>(d));
    Vars q(RingId::Q);
    CHECK(homogeneity_degree(Derivation({Poly(RingId::Q, 3), q.X, q.Y}), {1, 1, 1}) == 0);
    CHECK_FALSE(homogeneity_degree(Derivation::zero(RingId::Q, 3), {1, 1, 1}).has_value());
    CHECK_FALSE(homogeneity_degree(Derivation({Poly(RingId::Q, 3), q.X, q.c(1)}), {1, 1, 1}).has_value());
}

TEST_CASE("jacobian derivations") {
    Vars q(RingId::Q);
    const Poly P = q.Y.pow(3) + q.X * q.Y.pow(2) + q.X.pow(2) * q.Z;
    const Derivation D = jacobian_derivation(q.X, P);
    CHECK(D.image(0).is_zero());
    CHECK(D.image(1) == -q.X.pow(2));
    CHECK(D.image(2) == q.c(3) * q.Y.pow(2) + q.c(2) * q.X * q.Y);

    const Poly s = q.Y.pow(2) + q.X * q.Z;
    const Derivation E = jacobian_derivation(q.X, s.pow(2) + q.X.pow(3) * q.Y);
    CHECK(E.image(1) == q.c(-2) * q.X * s);
    CHECK(E.image(2) == q.c(4) * q.Y * s + q.X.pow(3));
    CHECK(jacobian_derivation(s, s).is_zero());

    CHECK(is_local_slice(E, s));
    CHECK(d_apply(E, s) == q.X.pow(4));
    CHECK(kernel_member(E, q.c(1)));
    CHECK_FALSE(is_local_slice(E, q.c(1)));

    Vars two(RingId::Q);
    CHECK_THROWS_AS(jacobian_derivation(Poly::variable(RingId::Q, 2, 0), Poly::variable(RingId::Q, 2, 1)), Error);
}

TEST_CASE("irreducibility") {
    Vars q(RingId::Q);
    CHECK(is_irreducible(Derivation({Poly(RingId::Q, 3), -q.X.pow(2), q.c(3) * q.Y.pow(2) + q.c(2) * q.X * q.Y})));
    CHECK_FALSE(is_irreducible(Derivation({Poly(RingId::Q, 3), q.X.pow(2) * q.Y, q.X.pow(3)})));
    CHECK_FALSE(is_irreducible(Derivation::zero(RingId::Q, 3)));
    Vars t(RingId::PolyT);
    const Poly tt = t.c(RingElem::t());
    CHECK_FALSE(is_irreducible(Derivation({tt * t.Y, tt * t.X, Poly(RingId::PolyT, 3)})));
    CHECK(is_irreducible(Derivation({tt * t.Y, t.X, Poly(RingId::PolyT, 3)})));
    Circle3 c3;
    CHECK_THROWS_AS(is_irreducible(c3.D(0)), Error);
}

TEST_CASE("linear filtration and strict triples") {
    Circle2 c2;
    const auto filt = linear_filtration(c2.D(0));
    CHECK(filt.jumps() == std::vector<unsigned>{0, 1, 2});
    REQUIRE(filt.strata[0].basis.size() == 1);
    const LinearForm x1{{RingElem::w1(), RingElem::one(RingId::Circle) - RingElem::w2(), RingElem::zero(RingId::Circle)}};
    CHECK(filt.strata[0].basis[0] == x1);
    auto triple = strict_triple(filt);
    REQUIRE(triple.has_value());
    CHECK(triple->degrees == std::vector<unsigned>{0, 1, 2});
    CHECK(triple->forms[0] == x1);
    CHECK(triple->forms[1].to_poly(RingId::Circle) == c2.v.X);
    CHECK(triple->forms[2].to_poly(RingId::Circle) == c2.v.Z);

    const auto tr = linear_filtration(tr_example());
    CHECK(tr.jumps() == std::vector<unsigned>{0, 1, 3});
    auto t3 = strict_triple(tr);
    REQUIRE(t3.has_value());
    Vars q(RingId::Q);
    CHECK(t3->forms[0].to_poly(RingId::Q) == q.X);
    CHECK(t3->forms[1].to_poly(RingId::Q) == q.Y);
    CHECK(t3->forms[2].to_poly(RingId::Q) == q.Z);
    CHECK(t3->degrees == std::vector<unsigned>{0, 1, 3});

    const auto zero = linear_filtration(Derivation::zero(RingId::Q, 3));
    CHECK(zero.strata.size() == 1);
    CHECK(zero.strata[0].dim == 3);

    const Derivation dz({Poly(RingId::Q, 3), Poly(RingId::Q, 3), q.c(1)});
    CHECK(linear_filtration(dz).jumps() == std::vector<unsigned>{0, 1});
    CHECK_FALSE(strict_triple(dz).has_value());
}

TEST_CASE("rank upper bounds") {
    Circle3 c3;
    for (unsigned d = 0; d <= 2; ++d) {
        const auto r = rank_upper(c3.D(d));
        CHECK(r.bound == 2);
        REQUIRE(r.witnesses.size() == 1);
        CHECK(r.witnesses[0].status == FormStatus::Certified);
        CHECK(r.witnesses[0].form.to_poly(RingId::Circle) == c3.v.X);
    }
    Circle2 c2;
    const auto r2 = rank_upper(c2.D(0));
    CHECK(r2.bound == 3);
    CHECK(r2.kernel_dim == 1);
    CHECK_FALSE(r2.decided);
    CHECK(r2.witnesses[0].status == FormStatus::Undecided);

    Vars q(RingId::Q);
    CHECK(rank_upper(Derivation({Poly(RingId::Q, 3), q.X, q.Y})).bound == 2);
    CHECK(rank_upper(Derivation({Poly(RingId::Q, 3), q.X, Poly(RingId::Q, 3)})).bound == 1);

    Vars t(RingId::PolyT);
    const Poly tt = t.c(RingElem::t());
    // t X + (1 - t) Y is in the kernel; its row is unimodular.
    const Derivation Dt({(t.c(1) - tt) * t.Z, -(tt * t.Z), t.X});
    const auto rt = rank_upper(Dt);
    CHECK(rt.bound == 2);
    REQUIRE(rt.witnesses.size() == 1);
    CHECK(rt.witnesses[0].status == FormStatus::Certified);
    RingElem sum = RingElem::zero(RingId::PolyT);
    for (std::size_t i = 0; i < 3; ++i) sum += rt.witnesses[0].bezout[i] * rt.witnesses[0].form.coeffs[i];
    CHECK(sum.is_one());
}

TEST_CASE("kernel types") {
    Vars q(RingId::Q);
    for (long d = 0; d <= 3; ++d) {
        const Poly P = q.Y.pow(static_cast<unsigned>(d + 2)) + q.X.pow(static_cast<unsigned>(d + 1)) * q.Z;
        const auto kt = kernel_type(P, q.X, {1, 1, 1});
        CHECK(kt.p == 1);
        CHECK(kt.q == d + 2);
        CHECK(kt.d == d);
        CHECK_FALSE(kt.degenerate);
    }
    const auto lin = kernel_type(q.X, q.Y, {1, 1, 1});
    CHECK(lin.d == -1);
    CHECK(lin.degenerate);
    CHECK_THROWS_AS(kernel_type(q.X + q.c(1), q.Y, {1, 1, 1}), Error);
}

TEST_CASE("property: Leibniz rule and R-linearity") {
    Engine rng(21);
    for (RingId ring : {RingId::Q, RingId::PolyT, RingId::Circle}) {
        for (int k = 0; k < 100; ++k) {
            const Derivation D({testing::random_poly(rng, ring, 3, 2, 3), testing::random_poly(rng, ring, 3, 2, 3),
                                testing::random_poly(rng, ring, 3, 2, 3)});
            const Poly f = testing::random_poly(rng, ring, 3, 3, 4);
            const Poly g = testing::random_poly(rng, ring, 3, 3, 4);
            CHECK(d_apply(D, f * g) == f * d_apply(D, g) + g * d_apply(D, f));
            const RingElem a = testing::random_ring_elem(rng, ring);
            const RingElem b = testing::random_ring_elem(rng, ring);
            CHECK(d_apply(D, f.scaled(a) + g.scaled(b)) == d_apply(D, f).scaled(a) + d_apply(D, g).scaled(b));
        }
    }
}

namespace {

Derivation random_lnd(Engine& rng, RingId ring) {
    const Derivation T = testing::random_triangular(rng, ring, 2);
    return LinearChange(testing::to_rational(testing::random_unimodular(rng, 3))).conjugate(T);
}

} // namespace

TEST_CASE("property: deg_D is a degree function on locally nilpotent derivations") {
    Engine rng(22);
    for (RingId ring : {RingId::Q, RingId::PolyT, RingId::Circle}) {
        for (int k = 0; k < 100; ++k) {
            const Derivation D = random_lnd(rng, ring);
            REQUIRE(certify_nilpotent(D).certified);
            const Poly f = testing::random_nonzero_poly(rng, ring, 3, 2, 3);
            const Poly g = testing::random_nonzero_poly(rng, ring, 3, 2, 3);
            const unsigned df = deg_d(D, f), dg = deg_d(D, g);
            CHECK(deg_d(D, f * g) == df + dg);
            if (!(f + g).is_zero()) CHECK(deg_d(D, f + g) <= std::max(df, dg));
            CHECK(df <= mu_bar(D, f));
        }
    }
}

TEST_CASE("property: homogeneous derivations shift degrees") {
    Engine rng(23);
    for (RingId ring : {RingId::Q, RingId::PolyT, RingId::Circle}) {
        for (int k = 0; k < 100; ++k) {
            // Jacobian derivation of two homogeneous polynomials is homogeneous.
            const Poly F = top_part(testing::random_nonzero_poly(rng, ring, 3, 3, 4), {1, 1, 1});
            const Poly G = top_part(testing::random_nonzero_poly(rng, ring, 3, 3, 4), {1, 1, 1});
            const Derivation D = jacobian_derivation(F, G);
            auto d = homogeneity_degree(D, {1, 1, 1});
            if (D.is_zero()) {
                CHECK_FALSE(d.has_value());
                continue;
            }
            REQUIRE(d.has_value());
            CHECK(*d == *is_homogeneous(F, {1, 1, 1}) + *is_homogeneous(G, {1, 1, 1}) - 3);
            const Poly h = top_part(testing::random_nonzero_poly(rng, ring, 3, 3, 3), {1, 1, 1});
            const Poly dh = d_apply(D, h);
            if (!dh.is_zero()) CHECK(is_homogeneous(dh, {1, 1, 1}) == *is_homogeneous(h, {1, 1, 1}) + *d);
        }
    }
}

TEST_CASE("property: Jacobian derivations kill their arguments") {
    Engine rng(24);
    for (RingId ring : {RingId::Q, RingId::PolyT, RingId::Circle}) {
        for (int k = 0; k < 100; ++k) {
            const Poly F = testing::random_poly(rng, ring, 3, 3, 3);
            const Poly G = testing::random_poly(rng, ring, 3, 3, 3);
            const Derivation D = jacobian_derivation(F, G);
            CHECK(kernel_member(D, F));
            CHECK(kernel_member(D, G));
            const Derivation E = jacobian_derivation(G, F);
            for (std::size_t i = 0; i < 3; ++i) CHECK(E.image(i) == -D.image(i));
        }
    }
}

TEST_CASE("property: conjugation preserves deg_D and the filtration") {
    Engine rng(25);
    for (RingId ring : {RingId::Q, RingId::PolyT, RingId::Circle}) {
        for (int k = 0; k < 100; ++k) {
            const Derivation D = random_lnd(rng, ring);
            const LinearChange sigma(testing::to_rational(testing::random_unimodular(rng, 3)));
            const Derivation E = sigma.conjugate(D);
            const Poly f = testing::random_nonzero_poly(rng, ring, 3, 2, 3);
            CHECK(deg_d(E, sigma.to_new(f)) == deg_d(D, f));
            CHECK(sigma.to_new(d_apply(D, f)) == d_apply(E, sigma.to_new(f)));
            const auto fd = linear_filtration(D);
            const auto fe = linear_filtration(E);
            CHECK(fd.jumps() == fe.jumps());
            std::size_t prev = 0;
            for (const auto& s : fd.strata) {
                CHECK(s.dim >= prev);
                prev = s.dim;
                for (const auto& form : s.basis) CHECK(d_power(D, form.to_poly(ring), s.m + 1).is_zero());
            }
            CHECK(fd.strata.back().dim == 3);
        }
    }
}

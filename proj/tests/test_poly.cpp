#include "generators.hpp"

#include "lnd/error.hpp"
#include "lnd/poly.hpp"

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

} // namespace

TEST_CASE("poly arithmetic examples") {
    Vars q(RingId::Q);
    const Poly f = q.Y.pow(2) + q.X * q.Z;
    CHECK(f.pow(2) == q.Y.pow(4) + q.c(2) * q.X * q.Y.pow(2) * q.Z + q.X.pow(2) * q.Z.pow(2));
    CHECK((f * q.c(0)).is_zero());
    CHECK((f * q.c(0)).terms().empty());

    Vars c(RingId::Circle);
    const Poly one = c.c(1);
    const Poly w1 = c.c(RingElem::w1());
    const Poly w2 = c.c(RingElem::w2());
    const Poly f1 = w1 * c.Y.pow(2) + (one + w2) * c.X * c.Z;
    const Poly f2 = (one - w2) * c.Y.pow(2) + w1 * c.X * c.Z;
    const Poly lhs = (one - w2) * f1;
    CHECK(lhs == (one - w2) * w1 * c.Y.pow(2) + (one - w2 * w2) * c.X * c.Z);
    CHECK(lhs == w1 * f2);
}

TEST_CASE("printing is explicit and grlex ordered") {
    Vars q(RingId::Q);
    const auto names = default_names(3);
    CHECK((q.Y.pow(2) + q.X * q.Z).str(names) == "x*z + y^2");
    CHECK((q.c(3) * q.X - q.c(1)).str(names) == "3*x - 1");
    Vars c(RingId::Circle);
    const Poly w = c.c(RingElem::w1()) * c.X + (c.c(1) - c.c(RingElem::w2())) * c.Y;
    CHECK(w.str(names) == "w1*x + (-w2 + 1)*y");
}

TEST_CASE("partial derivatives") {
    Vars q(RingId::Q);
    CHECK(partial(q.Y.pow(2) + q.X * q.Z, 1) == q.c(2) * q.Y);
    CHECK(partial(q.Y.pow(3), 0).is_zero());

    // d/dZ of Y^2 + X1 Z over the circle ring, d = 0, returns X1.
    Vars c(RingId::Circle);
    const Poly x1 = c.c(RingElem::w1()) * c.X + (c.c(1) - c.c(RingElem::w2())) * c.Y;
    CHECK(partial(c.Y.pow(2) + x1 * c.Z, 2) == x1);

    Vars t(RingId::PolyT);
    CHECK(partial(t.c(RingElem::t()) * t.X, 0) == t.c(RingElem::t()));
}

TEST_CASE("substitution reproduces the t-deformed forms") {
    Vars q(RingId::PolyT);
    const Poly tt = q.c(RingElem::t());
    const Poly u = q.X, v = q.Y, w = q.Z;
    const Poly F = u * w - v.pow(2);
    const std::vector<Poly> sigma{q.X, tt * q.Y, tt * q.Z + q.X};
    const Poly Fs = substitute(F, sigma);
    CHECK(Fs == q.X * (tt * q.Z + q.X) - tt.pow(2) * q.Y.pow(2));
    const Poly G = w * F.pow(2) + q.c(2) * u.pow(2) * v * F + u.pow(5);
    const Poly Gs = substitute(G, sigma);
    CHECK(Gs == (tt * q.Z + q.X) * Fs.pow(2) + q.c(2) * tt * q.X.pow(2) * q.Y * Fs + q.X.pow(5));
    const std::vector<Poly> id{q.X, q.Y, q.Z};
    CHECK(substitute(G, id) == G);
}

TEST_CASE("weighted parts") {
    Vars q(RingId::Q);
    const Poly s = q.Y.pow(2) + q.X * q.Z;
    const Poly P = s.pow(2) + q.X.pow(3) * q.Y;
    CHECK(top_part(P, {0, 1, 2}) == s.pow(2));
    CHECK(is_homogeneous(q.c(1), {1, 1, 1}) == 0);
    CHECK_FALSE(weighted_degree(Poly(RingId::Q, 3), {1, 1, 1}).has_value());
    CHECK(is_homogeneous(q.X * q.Z - q.Y.pow(2), {1, 1, 1}) == 2);
    CHECK(is_homogeneous(P, {1, 1, 1}) == 4);
    CHECK_FALSE(is_homogeneous(P + q.X, {1, 1, 1}).has_value());
}

TEST_CASE("exact division") {
    Vars q(RingId::Q);
    CHECK(exact_divide(q.X * q.Y.pow(2) + q.X.pow(2) * q.Z, q.X) == q.Y.pow(2) + q.X * q.Z);
    CHECK_THROWS_AS(exact_divide(q.Y.pow(2) + q.X * q.Z, q.X), Error);
    CHECK_THROWS_AS(exact_divide(q.X, Poly(RingId::Q, 3)), Error);

    Vars c(RingId::Circle);
    const Poly one = c.c(1);
    const Poly w1 = c.c(RingElem::w1());
    const Poly w2 = c.c(RingElem::w2());
    const Poly f1 = w1 * c.Y.pow(2) + (one + w2) * c.X * c.Z;
    const Poly f2 = (one - w2) * c.Y.pow(2) + w1 * c.X * c.Z;
    CHECK(exact_divide(w1 * f2, one - w2) == f1);
}

TEST_CASE("multivariate gcd") {
    Vars q(RingId::Q);
    CHECK(gcd_multivar(q.X.pow(2) * q.Y, q.X * q.Y.pow(2)) == q.X * q.Y);
    const Poly F = q.Y.pow(2) + q.X * q.Z;
    CHECK(gcd_multivar(F * q.X, F * q.Y) == F);
    CHECK(gcd_multivar(Poly(RingId::Q, 3), q.c(-2) * F) == F);

    Vars t(RingId::PolyT);
    const Poly tt = t.c(RingElem::t());
    CHECK(gcd_multivar(tt.pow(2) * t.X, tt * t.Y) == tt);

    Vars c(RingId::Circle);
    CHECK_THROWS_AS(gcd_multivar(c.X, c.Y), Error);
}

TEST_CASE("nth roots") {
    Vars q(RingId::Q);
    const Poly s = q.Y.pow(2) + q.X * q.Z;
    CHECK(nth_root(s.pow(2), 2) == s);
    // Y^4 + X Y^2 Z + X^2 Z^2 is not a square: matching forces 2XY^2Z in the middle.
    CHECK_FALSE(nth_root(q.Y.pow(4) + q.X * q.Y.pow(2) * q.Z + q.X.pow(2) * q.Z.pow(2), 2).has_value());
    CHECK(nth_root(s, 1) == s);
    CHECK(nth_root((-s).pow(3), 3) == -s);
    CHECK_FALSE(nth_root(-s.pow(2), 2).has_value());

    Vars t(RingId::PolyT);
    const Poly g = t.c(RingElem(UniPoly({Rational(1), Rational(1)}))) * t.X + t.Y;
    CHECK(nth_root(g.pow(3), 3) == g);
}

TEST_CASE("support points") {
    Vars q(RingId::Q);
    const Poly s = q.Y.pow(2) + q.X * q.Z;
    CHECK(support_points(s, 1, 2) == std::set<LatticePoint>{{0, 0}, {2, 0}, {0, 1}});
    CHECK(support_points(s.pow(2) + q.X.pow(3) * q.Y, 1, 2) ==
          std::set<LatticePoint>{{0, 0}, {4, 0}, {2, 1}, {0, 2}, {1, 0}});
    CHECK(support_points(q.c(7), 1, 2) == std::set<LatticePoint>{{0, 0}});
}

TEST_CASE("property: poly ring axioms") {
    Engine rng(11);
    for (RingId ring : {RingId::Q, RingId::PolyT, RingId::Circle}) {
        for (int k = 0; k < 100; ++k) {
            const Poly f = testing::random_poly(rng, ring, 3, 3, 4);
            const Poly g = testing::random_poly(rng, ring, 3, 3, 4);
            const Poly h = testing::random_poly(rng, ring, 3, 3, 4);
            CHECK((f * g) * h == f * (g * h));
            CHECK(f * g == g * f);
            CHECK(f * (g + h) == f * g + f * h);
            CHECK((f + g) - g == f);
        }
    }
}

TEST_CASE("property: mixed partials commute") {
    Engine rng(12);
    for (RingId ring : {RingId::Q, RingId::PolyT, RingId::Circle}) {
        for (int k = 0; k < 100; ++k) {
            const Poly f = testing::random_poly(rng, ring, 3, 5, 6);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = i + 1; j < 3; ++j) CHECK(partial(partial(f, i), j) == partial(partial(f, j), i));
        }
    }
}

namespace {

std::vector<Poly> linear_images(RingId ring, const std::vector<std::vector<Rational>>& m) {
    std::vector<Poly> out;
    for (const auto& row : m) {
        Poly p(ring, 3);
        for (std::size_t j = 0; j < 3; ++j) p += Poly::variable(ring, 3, j).scaled(row[j]);
        out.push_back(p);
    }
    return out;
}

// Inverse of a 3x3 integer unimodular matrix via the adjugate; exact because det = +-1.
std::vector<std::vector<Rational>> inverse3(const std::vector<std::vector<long>>& m) {
    auto cof = [&](int r, int c) {
        int r0 = (r + 1) % 3, r1 = (r + 2) % 3, c0 = (c + 1) % 3, c1 = (c + 2) % 3;
        return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    };
    long det = 0;
    for (int c = 0; c < 3; ++c) det += m[0][c] * cof(0, c);
    std::vector<std::vector<Rational>> inv(3, std::vector<Rational>(3));
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) inv[r][c] = Rational(cof(c, r)) / Rational(det);
    return inv;
}

} // namespace

TEST_CASE("property: substitution round trip under unimodular maps") {
    Engine rng(13);
    for (RingId ring : {RingId::Q, RingId::PolyT, RingId::Circle}) {
        for (int k = 0; k < 100; ++k) {
            const auto m = testing::random_unimodular(rng, 3);
            std::vector<std::vector<Rational>> mr(3, std::vector<Rational>(3));
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) mr[r][c] = Rational(m[r][c]);
            const auto sigma = linear_images(ring, mr);
            const auto sigma_inv = linear_images(ring, inverse3(m));
            const Poly f = testing::random_poly(rng, ring, 3, 4, 5);
            CHECK(substitute(substitute(f, sigma), sigma_inv) == f);
        }
    }
}

TEST_CASE("property: exact division recovers the cofactor") {
    Engine rng(14);
    for (RingId ring : {RingId::Q, RingId::PolyT, RingId::Circle}) {
        for (int k = 0; k < 100; ++k) {
            const Poly f = testing::random_poly(rng, ring, 3, 3, 4);
            const Poly g = testing::random_nonzero_poly(rng, ring, 3, 3, 3);
            CHECK(exact_divide(f * g, g) == f);
        }
    }
}

TEST_CASE("property: nth_root inverts pow up to sign") {
    Engine rng(15);
    for (RingId ring : {RingId::Q, RingId::PolyT, RingId::Circle}) {
        for (int k = 0; k < 100; ++k) {
            const Poly g = testing::random_nonzero_poly(rng, ring, 3, 2, 3);
            for (unsigned n : {2u, 3u, 5u}) {
                if (ring == RingId::Circle && n == 5) continue;
                auto r = nth_root(g.pow(n), n);
                INFO(to_string(ring), " n=", n, " g=", to_string(g));
                REQUIRE(r.has_value());
                if (n % 2 == 1) {
                    CHECK(*r == g);
                } else {
                    CHECK((*r == g || *r == -g));
                    CHECK(r->leading_coeff().leading_rational().sign() > 0);
                }
            }
        }
    }
}

TEST_CASE("property: gcd is multiplicative in a common factor") {
    Engine rng(16);
    for (int k = 0; k < 100; ++k) {
        const Poly f = testing::random_nonzero_poly(rng, RingId::Q, 3, 2, 3);
        const Poly g = testing::random_nonzero_poly(rng, RingId::Q, 3, 2, 3);
        const Poly h = testing::random_nonzero_poly(rng, RingId::Q, 3, 2, 3);
        const Poly lhs = gcd_multivar(f * h, g * h);
        const Poly rhs = gcd_multivar(f, g) * h;
        // Equal up to a rational unit.
        const Rational s = rhs.leading_coeff().leading_rational() / lhs.leading_coeff().leading_rational();
        CHECK(lhs.scaled(s) == rhs);
    }
}

TEST_CASE("property: weighted parts sum back") {
    Engine rng(17);
    for (RingId ring : {RingId::Q, RingId::PolyT, RingId::Circle}) {
        for (int k = 0; k < 100; ++k) {
            const Poly f = testing::random_poly(rng, ring, 3, 5, 6);
            const WeightVec w{testing::small_int(rng, 0, 3), testing::small_int(rng, 0, 3), testing::small_int(rng, 0, 3)};
            const auto parts = weighted_parts(f, w);
            Poly sum(ring, 3);
            for (const auto& [deg, part] : parts) {
                CHECK(is_homogeneous(part, w) == deg);
                sum += part;
            }
            CHECK(sum == f);
            if (!parts.empty()) CHECK(top_part(f, w) == parts.rbegin()->second);
            if (is_homogeneous(f, w)) CHECK(parts.size() == 1);
        }
    }
}

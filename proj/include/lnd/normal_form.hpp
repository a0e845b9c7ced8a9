#pragma once

#include "lnd/derivation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lnd {

/// Sets X_v = 0 in the other images and drops X_v. Requires D(X_v) = 0.
Derivation reduce_mod_var(const Derivation& D, std::size_t v);

/// Removes variable `v`, which must not occur in f.
Poly drop_var(const Poly& f, std::size_t v);
/// Inserts a new, unused variable at position `v`.
Poly insert_var(const Poly& f, std::size_t v);

struct RentschlerData {
    LinearForm v1;     ///< spans the linear kernel of Dbar
    LinearForm v2;     ///< Dbar(v2) = alpha * v1^(d+1)
    Rational alpha{1}; ///< 1: the scale is absorbed into v2
};

/// Linear data of a nonzero homogeneous 2-variable LND of degree d over Q.
RentschlerData rentschler_data(const Derivation& Dbar, long d);

/// Output of the first normalization: in the coordinates `change`
/// (X, Y, Z), the input P equals gamma * (P + x_strip * X^(d+2)) and
/// P = Y^(d+2) + X * q.
struct SaForm {
    LinearChange change = LinearChange::identity(3);
    long d = 0;
    Poly P;
    Poly q;
    Rational gamma{1};
    Rational x_strip{0};
    /// D in the new coordinates equals derivation_scale * Delta_(X, P).
    Rational derivation_scale{1};
    Derivation D;
    unsigned deg_y = 0;
    bool rank_two_assumed = true;

    std::vector<LinearForm> coords() const;
};

/// Runs the normalization on D = unit * Delta_(X, P) with X a linear form
/// in ker D. Only the ring Q is supported.
SaForm normalize_sa(const Derivation& D, const LinearForm& X, const Poly& P, unsigned bound = kDefaultBound);

/// P = Y^(d+2) + X f_(d+1) + X f_d Z + ... + X f_(i+2) Z^(e-1) + beta X^(i+2) Z^e
/// with e = d - i.
struct SbShape {
    long d = 0;
    long i = 0;
    long e = 0;
    Rational beta{1};
    std::vector<Poly> f; ///< f[k] multiplies X Z^k, i.e. f_(d+1-k), k = 0..e-1

    Poly assemble() const;
};

SbShape shape_sb(const Poly& P, long d);

/// P with D = Delta_(X, P), when D has this form. P is fixed up to adding a
/// polynomial in X alone; the returned one has no pure X-monomial in the
/// coordinates completing X by standard vectors.
std::optional<Poly> jacobian_potential(const Derivation& D, const LinearForm& X);

struct TriangularReport {
    bool triangular = false;
    SaForm sa;
    SbShape sb;
    unsigned deg_y = 0; ///< triangular case only
    unsigned deg_z = 0;
};

TriangularReport triangular_test(const Derivation& D, const LinearForm& X, const Poly& P, unsigned bound = kDefaultBound);

/// P = Zt^p + c_1 X^q Zt^(p-1) + ... + c_(p-1) X^(pq-q) Zt + c_p X^(pq-1) Y
/// with Zt = h(X, Y) + X^(q-1) Z, in the coordinates `change`.
struct NtrReport {
    long p = 0;
    long q = 0;
    bool swapped = false; ///< (q, p) was used instead of the requested order
    Poly h;
    std::vector<Rational> c; ///< c_1 .. c_p
    Poly z_tilde;
    LinearChange change = LinearChange::identity(3);
    Rational gamma{1};
    Rational x_strip{0};  ///< X^(pq) removed by the first normalization
    Rational x_adjust{0}; ///< X^(pq) left over after the rewriting
    unsigned iterations = 0;
    unsigned deg_y = 0;
    unsigned deg_z = 0;

    /// The normal form itself, in the new coordinates.
    Poly expanded() const;
    /// The input P rebuilt from the report, in the original coordinates.
    Poly reconstruct_input() const;
};

NtrReport ntr_normal_form(const Derivation& D, const LinearForm& X, const Poly& P, long p, long q,
                          unsigned bound = kDefaultBound);

/// Builds the normal form above in standard coordinates.
Poly ntr_polynomial(long p, long q, const Poly& h, const std::vector<Rational>& c);

struct NewtonPolygon {
    std::vector<LatticePoint> vertices; ///< counterclockwise, starting at (0,0)
};

NewtonPolygon newton_polygon(const Poly& f, std::size_t i, std::size_t j);

struct NpCheck {
    bool ok = false;
    bool degenerate = false; ///< a point or a segment on an axis
    long m = 0;
    long n = 0;
};

NpCheck np_check(const NewtonPolygon& poly);

} // namespace lnd

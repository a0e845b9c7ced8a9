#pragma once

#include "lnd/derivation.hpp"
#include "lnd/normal_form.hpp"

#include <string>
#include <vector>

namespace lnd {

struct Check {
    std::string name;
    bool pass = false;
    std::string witness;
};

struct VerificationReport {
    std::string instance;
    std::vector<Check> checks;
    /// Claims cited with the example that are not machine-checked here.
    std::vector<std::string> asserted;

    void add(std::string name, bool pass, std::string witness);
    bool pass() const;
    const Check* find(std::string_view name) const;
};

/// Over Q[t], variables x, y, z.
struct Example1 {
    Derivation D;
    Poly F, G, P, H, F1, G1;
};

Example1 build_example1();
VerificationReport verify_example1(unsigned bound = kDefaultBound);

/// Over the circle ring, variables X, Y, Z.
struct Example2 {
    long d = 0;
    Derivation D;
    Poly X1, X2, F;
};

Example2 build_example2(long d);
VerificationReport verify_example2(long d, unsigned bound = kDefaultBound);

struct Example3 {
    long d = 0;
    Derivation D;
    Poly F1, F2;
};

Example3 build_example3(long d);
VerificationReport verify_example3(long d, unsigned bound = kDefaultBound);

enum class Classification { Triangular, NotTriangular };

/// D = Delta_(X, P) over Q, possibly moved to other coordinates.
struct Instance {
    std::string name;
    Derivation D;
    LinearForm X;
    Poly P;
    Classification expected = Classification::Triangular;
    long p = 0; ///< ntr only
    long q = 0;
    long d = 0;
    unsigned deg_y = 0; ///< expected deg_D of the normal-form Y and Z
    unsigned deg_z = 0;
};

/// P = Y^(d+2) + X f + beta X^(d+1) Z with f homogeneous of degree d+1 in X, Y.
Instance build_tr_instance(long d, const Poly& f, const Rational& beta);
/// P as in the ntr normal form with h homogeneous of degree q, monic in Y.
Instance build_ntr_instance(long p, long q, const Poly& h, const std::vector<Rational>& c);
/// The same instance in the coordinates y = M x.
Instance change_coordinates(const Instance& inst, const LinearChange& change);

VerificationReport verify_instance(const Instance& inst, unsigned bound = kDefaultBound);

} // namespace lnd

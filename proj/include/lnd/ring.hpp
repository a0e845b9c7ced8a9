#pragma once

#include "lnd/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace lnd {

/// Dense univariate polynomial over Q. Used both for Q[t] and for the
/// w2-components of circle-ring elements. The highest stored coefficient is
/// nonzero; the zero polynomial has no coefficients.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs);
    UniPoly(const Rational& c) : UniPoly(std::vector<Rational>{c}) {} // NOLINT(google-explicit-constructor)

    static UniPoly monomial(const Rational& c, unsigned degree);
    static UniPoly x() { return monomial(Rational(1), 1); }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(unsigned i) const { return i < c_.size() ? c_[i] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
    std::size_t term_count() const;

    UniPoly operator-() const;
    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    UniPoly scaled(const Rational& s) const;
    friend bool operator==(const UniPoly&, const UniPoly&) = default;

    /// Euclidean division; throws DivisorZero when `divisor` is zero.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const;
    std::optional<UniPoly> exact_div(const UniPoly& divisor) const;
    UniPoly monic() const;
    UniPoly pow(unsigned e) const;
    Rational eval(const Rational& at) const;

    std::string str(std::string_view symbol) const;

private:
    void trim();
    std::vector<Rational> c_;
};

UniPoly derivative(const UniPoly& f);

/// Distinct rational roots in increasing order (exact Sturm isolation).
std::vector<Rational> rational_roots(const UniPoly& f);

struct BezoutResult {
    UniPoly g; ///< monic gcd
    UniPoly u;
    UniPoly v;
};

/// Extended Euclid over Q[t]: u*a + v*b = g with g monic.
BezoutResult uni_gcd_bezout(const UniPoly& a, const UniPoly& b);

/// Element a(w2) + b(w2)*w1 of Q[w1,w2]/(w1^2 + w2^2 - 1). Canonical because
/// w1^2 is always rewritten to 1 - w2^2.
struct CircleElem {
    UniPoly a;
    UniPoly b;

    static CircleElem w1() { return {UniPoly(), UniPoly(Rational(1))}; }
    static CircleElem w2() { return {UniPoly::x(), UniPoly()}; }

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    CircleElem conj() const { return {a, -b}; }
    /// x * conj(x) = a^2 - b^2 (1 - w2^2), an element of Q[w2].
    UniPoly norm() const;

    friend bool operator==(const CircleElem&, const CircleElem&) = default;
};

CircleElem operator+(const CircleElem& x, const CircleElem& y);
CircleElem operator-(const CircleElem& x, const CircleElem& y);
CircleElem operator*(const CircleElem& x, const CircleElem& y);

/// Monomial expansion sum c_{ij} w1^i w2^j of a not-yet-reduced circle element.
using CircleMonomials = std::map<std::pair<unsigned, unsigned>, Rational>;

/// Rewrites w1^2 -> 1 - w2^2 to exhaustion.
CircleElem circle_normalize(const CircleMonomials& raw);

enum class RingId { Q, PolyT, Circle };

std::string_view to_string(RingId id);

/// A canonical element of one of the three coefficient rings.
class RingElem {
public:
    RingElem() : v_(Rational(0)) {}
    RingElem(Rational r) : v_(std::move(r)) {}   // NOLINT(google-explicit-constructor)
    RingElem(UniPoly p) : v_(std::move(p)) {}    // NOLINT(google-explicit-constructor)
    RingElem(CircleElem c) : v_(std::move(c)) {} // NOLINT(google-explicit-constructor)

    static RingElem zero(RingId ring);
    static RingElem one(RingId ring) { return constant(ring, Rational(1)); }
    static RingElem constant(RingId ring, const Rational& value);
    static RingElem t() { return RingElem(UniPoly::x()); }
    static RingElem w1() { return RingElem(CircleElem::w1()); }
    static RingElem w2() { return RingElem(CircleElem::w2()); }

    RingId ring() const { return static_cast<RingId>(v_.index()); }
    bool is_zero() const;
    bool is_one() const;

    const Rational& as_rational() const { return std::get<Rational>(v_); }
    const UniPoly& as_unipoly() const { return std::get<UniPoly>(v_); }
    const CircleElem& as_circle() const { return std::get<CircleElem>(v_); }

    /// The value as a rational number when the element is a constant.
    std::optional<Rational> rational_value() const;
    /// A deterministic "leading" rational coefficient, used for sign and
    /// scale normalization. Zero only for the zero element.
    Rational leading_rational() const;
    /// Number of monomials in the printed form.
    std::size_t term_count() const;

    RingElem operator-() const;
    friend RingElem operator+(const RingElem& x, const RingElem& y);
    friend RingElem operator-(const RingElem& x, const RingElem& y);
    friend RingElem operator*(const RingElem& x, const RingElem& y);
    RingElem& operator+=(const RingElem& y) { return *this = *this + y; }
    RingElem& operator-=(const RingElem& y) { return *this = *this - y; }
    RingElem& operator*=(const RingElem& y) { return *this = *this * y; }
    RingElem scaled(const Rational& s) const;
    RingElem pow(unsigned e) const;
    friend bool operator==(const RingElem&, const RingElem&) = default;

    /// q with q*divisor == *this, if it exists. Throws DivisorZero.
    std::optional<RingElem> exact_div(const RingElem& divisor) const;

    /// Inverse when the element is a unit. Circle units are restricted to
    /// nonzero rational constants.
    std::optional<RingElem> inverse() const;
    bool is_unit() const { return inverse().has_value(); }

    /// Exact n-th root in the ring, when one exists.
    std::optional<RingElem> nth_root(unsigned n) const;

    std::string str() const;

private:
    std::variant<Rational, UniPoly, CircleElem> v_;
};

/// Throws RingMismatch unless both rings agree.
void require_same_ring(RingId a, RingId b, std::string_view where);

} // namespace lnd

#pragma once

#include "lnd/ring.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lnd {

/// Main variables are at most three. One extra slot is used internally when
/// the coefficient variable t is lifted into a main variable (gcd over Q[t]).
inline constexpr std::size_t kMaxVars = 4;
inline constexpr std::size_t kMaxMainVars = 3;

class ExpVec {
public:
    ExpVec() = default;
    explicit ExpVec(std::size_t nvars);
    ExpVec(std::initializer_list<unsigned> exps);

    std::size_t size() const { return n_; }
    unsigned operator[](std::size_t i) const { return e_[i]; }
    unsigned& operator[](std::size_t i) { return e_[i]; }
    unsigned total() const;

    ExpVec operator+(const ExpVec& o) const;
    /// Componentwise difference, if every component stays nonnegative.
    std::optional<ExpVec> minus(const ExpVec& o) const;
    bool divides(const ExpVec& o) const;
    ExpVec scaled(unsigned k) const;

    friend bool operator==(const ExpVec&, const ExpVec&) = default;

private:
    std::array<unsigned, kMaxVars> e_{};
    std::size_t n_ = 0;
};

/// Graded-lexicographic "greater": higher total degree first, ties broken
/// lexicographically with variable 0 most significant.
struct GrlexGreater {
    bool operator()(const ExpVec& a, const ExpVec& b) const;
};

using WeightVec = std::vector<long>;

/// Sparse polynomial in `nvars` main variables with coefficients in one of
/// the rings of ring.hpp. Terms iterate in descending grlex order and no
/// stored coefficient is zero.
class Poly {
public:
    using TermMap = std::map<ExpVec, RingElem, GrlexGreater>;

    Poly() = default;
    Poly(RingId ring, std::size_t nvars);

    static Poly constant(RingId ring, std::size_t nvars, const RingElem& c);
    static Poly constant(RingId ring, std::size_t nvars, long c) {
        return constant(ring, nvars, RingElem::constant(ring, Rational(c)));
    }
    static Poly variable(RingId ring, std::size_t nvars, std::size_t index);
    static Poly monomial(RingId ring, const ExpVec& exps, const RingElem& c);

    RingId ring() const { return ring_; }
    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;

    const ExpVec& leading_exp() const;
    const RingElem& leading_coeff() const;
    RingElem coeff(const ExpVec& e) const;

    /// -1 for the zero polynomial.
    int total_degree() const;
    int degree_in(std::size_t var) const;
    bool uses_var(std::size_t var) const { return degree_in(var) > 0; }

    /// Accumulates c * x^e.
    void add_term(const ExpVec& e, const RingElem& c);

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly scaled(const RingElem& c) const;
    Poly scaled(const Rational& c) const;
    Poly times_monomial(const ExpVec& e, const RingElem& c) const;
    Poly pow(unsigned n) const;

    friend bool operator==(const Poly& a, const Poly& b);

    /// Canonical text: grlex-descending terms, explicit '*', compound
    /// coefficients parenthesized.
    std::string str(std::span<const std::string> names) const;

private:
    void check_compatible(const Poly& o, const char* where) const;

    RingId ring_ = RingId::Q;
    std::size_t nvars_ = 0;
    TermMap terms_;
};

/// Default variable names x, y, z (then u).
std::vector<std::string> default_names(std::size_t nvars);
std::string to_string(const Poly& f);

Poly partial(const Poly& f, std::size_t var);

/// Simultaneous substitution x_i -> images[i]; images share ring and nvars,
/// which become the ring and nvars of the result.
Poly substitute(const Poly& f, std::span<const Poly> images);

/// Sets the variable `var` to zero.
Poly set_var_zero(const Poly& f, std::size_t var);

/// Maps every coefficient through `fn` into a (possibly different) ring.
template <typename Fn>
Poly map_coefficients(const Poly& f, RingId target, Fn&& fn) {
    Poly out(target, f.nvars());
    for (const auto& [e, c] : f.terms()) out.add_term(e, fn(c));
    return out;
}

/// Coefficient of x_var^k, as a polynomial in the remaining variables (same nvars).
Poly coefficient_in(const Poly& f, std::size_t var, unsigned k);

/// Weighted degree of a monomial (coefficient symbols have weight 0).
long weighted_degree(const ExpVec& e, const WeightVec& w);
/// Weighted degree of f; std::nullopt encodes -infinity for f = 0.
std::optional<long> weighted_degree(const Poly& f, const WeightVec& w);
std::map<long, Poly> weighted_parts(const Poly& f, const WeightVec& w);
/// The degree when f is nonzero and has a single weighted part.
std::optional<long> is_homogeneous(const Poly& f, const WeightVec& w);
Poly top_part(const Poly& f, const WeightVec& w);

/// q with q*g == f; throws NotDivisible or DivisorZero.
Poly exact_divide(const Poly& f, const Poly& g);
std::optional<Poly> try_exact_divide(const Poly& f, const Poly& g);

/// gcd over Q or Q[t], primitive and normalized so that the leading grlex
/// coefficient has leading rational coefficient 1. Throws UnsupportedRing
/// for the circle ring.
Poly gcd_multivar(const Poly& f, const Poly& g);

/// g with g^n == f, when it exists. For even n the root whose leading
/// coefficient has positive leading rational is returned.
std::optional<Poly> nth_root(const Poly& f, unsigned n);

using LatticePoint = std::pair<long, long>;
/// {(deg_i, deg_j) of each term} together with (0,0).
std::set<LatticePoint> support_points(const Poly& f, std::size_t i, std::size_t j);

/// Lifts a Q[t]-polynomial into Q with t as an extra, last main variable.
Poly lift_t(const Poly& f);
/// Inverse of lift_t.
Poly drop_t(const Poly& f);

} // namespace lnd

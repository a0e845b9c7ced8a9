#include "lnd/rational.hpp"

#include "lnd/error.hpp"

#include <cctype>

namespace lnd {

namespace {

std::optional<mpz_class> integer_root(const mpz_class& value, unsigned n) {
    if (value < 0) {
        if (n % 2 == 0) return std::nullopt;
        auto r = integer_root(mpz_class(-value), n);
        if (!r) return std::nullopt;
        return mpz_class(-*r);
    }
    mpz_class root;
    if (mpz_root(root.get_mpz_t(), value.get_mpz_t(), n) == 0) return std::nullopt;
    return root;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw Error(ErrorKind::DivisorZero, "rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(mpq_class value) : q_(std::move(value)) { q_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? "1" : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw Error(ErrorKind::InvalidArgument, "malformed rational literal '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    const mpz_class d(std::string(den), 10);
    if (negative) n = -n;
    return Rational(n, d);
}

Rational& Rational::operator+=(const Rational& o) {
    q_ += o.q_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    q_ -= o.q_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    q_ *= o.q_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorKind::DivisorZero, "rational division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::inverse() const { return Rational(1) / *this; }

Rational Rational::pow(unsigned exponent) const {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), exponent);
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), exponent);
    return Rational(n, d);
}

std::optional<Rational> Rational::nth_root(unsigned n) const {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "zeroth root");
    auto rn = integer_root(q_.get_num(), n);
    if (!rn) return std::nullopt;
    auto rd = integer_root(q_.get_den(), n);
    if (!rd) return std::nullopt;
    return Rational(*rn, *rd);
}

std::string Rational::str() const { return q_.get_str(); }

} // namespace lnd

#pragma once

#include "lnd/linalg.hpp"
#include "lnd/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lnd {

/// An R-derivation of R[x_1..x_n], given by the images of the variables.
class Derivation {
public:
    Derivation() = default;
    explicit Derivation(std::vector<Poly> images);
    static Derivation zero(RingId ring, std::size_t nvars);

    RingId ring() const { return ring_; }
    std::size_t nvars() const { return images_.size(); }
    const std::vector<Poly>& images() const { return images_; }
    const Poly& image(std::size_t i) const { return images_.at(i); }
    bool is_zero() const;

    friend bool operator==(const Derivation&, const Derivation&) = default;

private:
    RingId ring_ = RingId::Q;
    std::vector<Poly> images_;
};

/// a_1 x_1 + ... + a_n x_n. Coefficients live in the ring; a form found
/// over the fraction field is stored with denominators cleared.
struct LinearForm {
    Row coeffs;

    Poly to_poly(RingId ring) const;
    std::string str(std::span<const std::string> names) const;
    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// Rows are the monomials occurring in any of `polys` (grlex descending),
/// column i holds the coefficients of polys[i].
Matrix coefficient_matrix(const std::vector<Poly>& polys);

Poly d_apply(const Derivation& D, const Poly& f);
/// D^k(f).
Poly d_power(const Derivation& D, const Poly& f, unsigned k);

inline constexpr unsigned kDefaultBound = 64;

struct NilpotenceCert {
    bool certified = false;
    unsigned bound = 0;
    /// Minimal n with D^n(x_i) = 0; empty where the bound was hit.
    std::vector<std::optional<unsigned>> orders;
    /// D^bound(x_i) for the first variable that survived, when uncertified.
    std::optional<std::size_t> failing_var;
    Poly witness;
};

NilpotenceCert certify_nilpotent(const Derivation& D, unsigned bound = kDefaultBound);

/// max{n : D^n f != 0}. Throws ZeroInput for f = 0 and BoundExceeded when
/// D^bound f is still nonzero.
unsigned deg_d(const Derivation& D, const Poly& f, unsigned bound = kDefaultBound);

/// Largest deg_d over the monomials of f.
unsigned mu_bar(const Derivation& D, const Poly& f, unsigned bound = kDefaultBound);

/// The d with every nonzero image of x_i homogeneous of degree w_i + d.
std::optional<long> homogeneity_degree(const Derivation& D, const WeightVec& w);

/// h -> det of the Jacobian of (F, G, h) in three variables.
Derivation jacobian_derivation(const Poly& F, const Poly& G);

bool kernel_member(const Derivation& D, const Poly& f);
/// Df != 0 and D^2 f = 0.
bool is_local_slice(const Derivation& D, const Poly& f);

/// The gcd of the nonzero images is a unit. Zero derivation: false.
bool is_irreducible(const Derivation& D);

struct Stratum {
    unsigned m = 0;
    std::size_t dim = 0;
    std::vector<LinearForm> basis; ///< canonical echelon basis of {L : D^(m+1) L = 0}
};

struct LinearFiltration {
    std::vector<Stratum> strata; ///< m = 0, 1, ... until dim = nvars
    /// Thresholds m at which the dimension grows (dim(-1) = 0).
    std::vector<unsigned> jumps() const;
};

LinearFiltration linear_filtration(const Derivation& D, unsigned bound = kDefaultBound);

struct StrictTriple {
    std::vector<LinearForm> forms;
    std::vector<unsigned> degrees;
};

/// One new form per jump of the filtration, when there are nvars jumps.
std::optional<StrictTriple> strict_triple(const Derivation& D, unsigned bound = kDefaultBound);
std::optional<StrictTriple> strict_triple(const LinearFiltration& filt);

enum class FormStatus { Certified, Undecided };

struct RankWitness {
    LinearForm form;
    FormStatus status = FormStatus::Undecided;
    std::string reason;
    /// Q[t]: u with sum u_i a_i = 1.
    Row bezout;
};

struct RankBound {
    std::size_t bound = 0;
    std::size_t kernel_dim = 0; ///< linear forms in ker D, over the fraction field
    bool decided = true;        ///< false when kernel forms exist but none is certified a variable
    std::vector<RankWitness> witnesses;
};

/// Upper bound on the rank from linear kernel forms.
RankBound rank_upper(const Derivation& D);

struct KernelType {
    long p = 0;
    long q = 0;
    long d = 0;
    bool degenerate = false; ///< d < 0
};

/// p <= q are the weighted degrees of F and G, d = p + q - sum(w).
KernelType kernel_type(const Poly& F, const Poly& G, const WeightVec& w);

/// Linear change of variables y = M x over Q. Row i of M is the form y_i in
/// the old variables.
class LinearChange {
public:
    explicit LinearChange(RatMatrix m);
    static LinearChange identity(std::size_t n);

    const RatMatrix& matrix() const { return m_; }
    const RatMatrix& inverse() const { return inv_; }

    /// f(x) rewritten in the new variables y.
    Poly to_new(const Poly& f) const;
    /// g(y) rewritten in the old variables x.
    Poly to_old(const Poly& g) const;
    /// The derivation in the new variables: D'(y_i) = sum_j M_ij D(x_j).
    Derivation conjugate(const Derivation& D) const;
    /// First the change `this`, then `next` (applied to the new variables).
    LinearChange then(const LinearChange& next) const;

private:
    RatMatrix m_;
    RatMatrix inv_;
};

} // namespace lnd

#include "lnd/derivation.hpp"

#include "lnd/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace lnd {

Derivation::Derivation(std::vector<Poly> images) : images_(std::move(images)) {
    if (images_.empty()) throw Error(ErrorKind::DimensionError, "derivation without variables");
    ring_ = images_.front().ring();
    for (const auto& p : images_) {
        require_same_ring(ring_, p.ring(), "Derivation");
        if (p.nvars() != images_.size())
            throw Error(ErrorKind::DimensionError, "derivation image has the wrong number of variables");
    }
}

Derivation Derivation::zero(RingId ring, std::size_t nvars) {
    return Derivation(std::vector<Poly>(nvars, Poly(ring, nvars)));
}

bool Derivation::is_zero() const {
    return std::all_of(images_.begin(), images_.end(), [](const Poly& p) { return p.is_zero(); });
}

Poly LinearForm::to_poly(RingId ring) const {
    Poly out(ring, coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (!coeffs[i].is_zero()) out += Poly::variable(ring, coeffs.size(), i).scaled(coeffs[i]);
    return out;
}

std::string LinearForm::str(std::span<const std::string> names) const {
    if (coeffs.empty()) return "0";
    return to_poly(coeffs.front().ring()).str(names);
}

Poly d_apply(const Derivation& D, const Poly& f) {
    require_same_ring(D.ring(), f.ring(), "d_apply");
    if (f.nvars() != D.nvars()) throw Error(ErrorKind::DimensionError, "d_apply: variable count mismatch");
    Poly out(f.ring(), f.nvars());
    for (std::size_t i = 0; i < D.nvars(); ++i) {
        if (D.image(i).is_zero() || !f.uses_var(i)) continue;
        out += partial(f, i) * D.image(i);
    }
    return out;
}

Poly d_power(const Derivation& D, const Poly& f, unsigned k) {
    Poly g = f;
    for (unsigned i = 0; i < k && !g.is_zero(); ++i) g = d_apply(D, g);
    return g;
}

NilpotenceCert certify_nilpotent(const Derivation& D, unsigned bound) {
    if (bound == 0) throw Error(ErrorKind::InvalidArgument, "nilpotence bound must be positive");
    NilpotenceCert cert;
    cert.bound = bound;
    cert.certified = true;
    for (std::size_t i = 0; i < D.nvars(); ++i) {
        Poly g = Poly::variable(D.ring(), D.nvars(), i);
        std::optional<unsigned> order;
        for (unsigned n = 1; n <= bound; ++n) {
            g = d_apply(D, g);
            if (g.is_zero()) {
                order = n;
                break;
            }
        }
        cert.orders.push_back(order);
        if (!order && cert.certified) {
            cert.certified = false;
            cert.failing_var = i;
            cert.witness = g;
        }
    }
    return cert;
}

unsigned deg_d(const Derivation& D, const Poly& f, unsigned bound) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroInput, "deg_D(0) is -infinity");
    Poly g = f;
    for (unsigned n = 0; n <= bound; ++n) {
        g = d_apply(D, g);
        if (g.is_zero()) return n;
    }
    throw Error(ErrorKind::BoundExceeded, "D^" + std::to_string(bound + 1) + " f is nonzero");
}

unsigned mu_bar(const Derivation& D, const Poly& f, unsigned bound) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroInput, "mu_bar(0) is -infinity");
    unsigned best = 0;
    for (const auto& [e, c] : f.terms())
        best = std::max(best, deg_d(D, Poly::monomial(f.ring(), e, RingElem::one(f.ring())), bound));
    return best;
}

std::optional<long> homogeneity_degree(const Derivation& D, const WeightVec& w) {
    if (w.size() != D.nvars()) throw Error(ErrorKind::DimensionError, "weight vector length");
    std::optional<long> d;
    for (std::size_t i = 0; i < D.nvars(); ++i) {
        if (D.image(i).is_zero()) continue;
        auto deg = is_homogeneous(D.image(i), w);
        if (!deg) return std::nullopt;
        const long di = *deg - w[i];
        if (d && *d != di) return std::nullopt;
        d = di;
    }
    return d;
}

Derivation jacobian_derivation(const Poly& F, const Poly& G) {
    require_same_ring(F.ring(), G.ring(), "jacobian_derivation");
    if (F.nvars() != 3 || G.nvars() != 3) throw Error(ErrorKind::DimensionError, "Jacobian derivations need three variables");
    std::vector<Poly> dF, dG;
    for (std::size_t i = 0; i < 3; ++i) {
        dF.push_back(partial(F, i));
        dG.push_back(partial(G, i));
    }
    // Expansion of det(grad F; grad G; e_k) along the last row.
    std::vector<Poly> images;
    for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t i = (k + 1) % 3, j = (k + 2) % 3;
        images.push_back(dF[i] * dG[j] - dF[j] * dG[i]);
    }
    return Derivation(std::move(images));
}

bool kernel_member(const Derivation& D, const Poly& f) { return d_apply(D, f).is_zero(); }

bool is_local_slice(const Derivation& D, const Poly& f) {
    const Poly df = d_apply(D, f);
    return !df.is_zero() && d_apply(D, df).is_zero();
}

bool is_irreducible(const Derivation& D) {
    if (D.ring() == RingId::Circle) throw Error(ErrorKind::UnsupportedRing, "irreducibility over the circle ring");
    Poly g(D.ring(), D.nvars());
    bool any = false;
    for (const auto& p : D.images()) {
        if (p.is_zero()) continue;
        g = any ? gcd_multivar(g, p) : gcd_multivar(p, Poly(D.ring(), D.nvars()));
        any = true;
    }
    return any && g.is_constant() && g.leading_coeff().is_unit();
}

Matrix coefficient_matrix(const std::vector<Poly>& polys) {
    std::map<ExpVec, std::size_t, GrlexGreater> index;
    for (const auto& p : polys)
        for (const auto& [e, c] : p.terms()) index.emplace(e, 0);
    std::size_t k = 0;
    for (auto& [e, i] : index) i = k++;
    const RingId ring = polys.front().ring();
    Matrix m(index.size(), Row(polys.size(), RingElem::zero(ring)));
    for (std::size_t col = 0; col < polys.size(); ++col)
        for (const auto& [e, c] : polys[col].terms()) m[index.at(e)][col] = c;
    return m;
}

namespace {

std::vector<LinearForm> kernel_forms(const std::vector<Poly>& iterates, RingId ring) {
    const std::size_t n = iterates.size();
    const auto basis = canonical_basis(nullspace(coefficient_matrix(iterates), ring, n), ring, n);
    std::vector<LinearForm> out;
    for (const auto& r : basis) out.push_back(LinearForm{r});
    return out;
}

std::vector<Row> rows_of(const std::vector<LinearForm>& forms) {
    std::vector<Row> rows;
    for (const auto& f : forms) rows.push_back(f.coeffs);
    return rows;
}

} // namespace

std::vector<unsigned> LinearFiltration::jumps() const {
    std::vector<unsigned> out;
    std::size_t prev = 0;
    for (const auto& s : strata) {
        if (s.dim > prev) out.push_back(s.m);
        prev = s.dim;
    }
    return out;
}

LinearFiltration linear_filtration(const Derivation& D, unsigned bound) {
    LinearFiltration filt;
    const std::size_t n = D.nvars();
    std::vector<Poly> iterates = D.images();
    for (unsigned m = 0;; ++m) {
        if (m > bound) throw Error(ErrorKind::BoundExceeded, "linear filtration did not close within the bound");
        Stratum s;
        s.m = m;
        s.basis = kernel_forms(iterates, D.ring());
        s.dim = s.basis.size();
        filt.strata.push_back(std::move(s));
        if (filt.strata.back().dim == n) break;
        for (auto& p : iterates) p = d_apply(D, p);
    }
    return filt;
}

std::optional<StrictTriple> strict_triple(const LinearFiltration& filt) {
    if (filt.strata.empty()) return std::nullopt;
    const std::size_t n = filt.strata.back().dim;
    const auto jumps = filt.jumps();
    if (jumps.size() < n) return std::nullopt;
    StrictTriple out;
    std::vector<Row> chosen;
    for (const auto& s : filt.strata) {
        if (std::find(jumps.begin(), jumps.end(), s.m) == jumps.end()) continue;
        for (const auto& f : s.basis) {
            if (!chosen.empty() && in_span(chosen, f.coeffs, f.coeffs.front().ring())) continue;
            chosen.push_back(f.coeffs);
            out.forms.push_back(f);
            out.degrees.push_back(s.m);
            break;
        }
    }
    return out;
}

std::optional<StrictTriple> strict_triple(const Derivation& D, unsigned bound) {
    return strict_triple(linear_filtration(D, bound));
}

namespace {

bool has_unit_minor(const std::vector<Row>& rows, RingId ring) {
    const std::size_t k = rows.size(), n = rows.empty() ? 0 : rows.front().size();
    if (k == 0 || k > n) return false;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
    do {
        Matrix minor;
        for (const auto& r : rows) {
            Row sub;
            for (std::size_t j = 0; j < n; ++j)
                if (pick[j]) sub.push_back(r[j]);
            minor.push_back(std::move(sub));
        }
        if (determinant(minor, ring).is_unit()) return true;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return false;
}

} // namespace

RankBound rank_upper(const Derivation& D) {
    const std::size_t n = D.nvars();
    const auto forms = kernel_forms(D.images(), D.ring());
    RankBound out;
    out.kernel_dim = forms.size();
    switch (D.ring()) {
    case RingId::Q:
        for (const auto& f : forms) out.witnesses.push_back({f, FormStatus::Certified, "coefficients in a field", {}});
        out.bound = n - forms.size();
        break;
    case RingId::PolyT: {
        // Rows are primitive after normalization; a Bezout chain shows each
        // one unimodular. Over a PID the saturated kernel lattice is a direct
        // summand, so all k forms extend to a system of variables.
        for (const auto& f : forms) {
            UniPoly g;
            Row u(n, RingElem::zero(RingId::PolyT));
            for (std::size_t i = 0; i < n; ++i) {
                const UniPoly& a = f.coeffs[i].as_unipoly();
                if (a.is_zero()) continue;
                if (g.is_zero()) {
                    g = a.monic();
                    u[i] = RingElem(UniPoly(a.leading().inverse()));
                    continue;
                }
                const auto b = uni_gcd_bezout(g, a);
                for (std::size_t j = 0; j < i; ++j) u[j] = u[j] * RingElem(b.u);
                u[i] = RingElem(b.v);
                g = b.g;
            }
            RankWitness w{f, FormStatus::Undecided, "row not unimodular", {}};
            if (g == UniPoly(Rational(1))) w = {f, FormStatus::Certified, "unimodular row over Q[t]", u};
            out.witnesses.push_back(std::move(w));
        }
        out.bound = n - forms.size();
        break;
    }
    case RingId::Circle: {
        // Only rows containing a unit entry (or sets of rows with a unit
        // maximal minor) are known to extend to a system of variables.
        std::size_t certified = 0;
        for (const auto& f : forms) {
            const bool unit = std::any_of(f.coeffs.begin(), f.coeffs.end(), [](const RingElem& c) { return c.is_unit(); });
            if (unit) ++certified;
            out.witnesses.push_back({f, unit ? FormStatus::Certified : FormStatus::Undecided,
                                     unit ? "row has a unit entry" : "variable status undecided", {}});
        }
        if (!forms.empty() && has_unit_minor(rows_of(forms), RingId::Circle)) {
            for (auto& w : out.witnesses) w.status = FormStatus::Certified;
            out.bound = n - forms.size();
        } else {
            out.bound = certified > 0 ? n - 1 : n;
        }
        out.decided = forms.empty() || certified > 0;
        break;
    }
    }
    return out;
}

KernelType kernel_type(const Poly& F, const Poly& G, const WeightVec& w) {
    auto p = is_homogeneous(F, w);
    auto q = is_homogeneous(G, w);
    if (!p || !q) throw Error(ErrorKind::NotHomogeneous, "kernel_type needs homogeneous inputs");
    KernelType t;
    t.p = std::min(*p, *q);
    t.q = std::max(*p, *q);
    t.d = t.p + t.q - std::accumulate(w.begin(), w.end(), 0L);
    t.degenerate = t.d < 0;
    return t;
}

LinearChange::LinearChange(RatMatrix m) : m_(std::move(m)) {
    auto inv = invert(m_);
    if (!inv) throw Error(ErrorKind::InvalidArgument, "coordinate change is not invertible");
    inv_ = std::move(*inv);
}

LinearChange LinearChange::identity(std::size_t n) {
    RatMatrix m(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = Rational(1);
    return LinearChange(std::move(m));
}

namespace {

std::vector<Poly> linear_images(const RatMatrix& m, RingId ring) {
    const std::size_t n = m.size();
    std::vector<Poly> out;
    for (const auto& row : m) {
        Poly p(ring, n);
        for (std::size_t j = 0; j < n; ++j)
            if (!row[j].is_zero()) p += Poly::variable(ring, n, j).scaled(row[j]);
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace

Poly LinearChange::to_new(const Poly& f) const { return substitute(f, linear_images(inv_, f.ring())); }

Poly LinearChange::to_old(const Poly& g) const { return substitute(g, linear_images(m_, g.ring())); }

Derivation LinearChange::conjugate(const Derivation& D) const {
    const std::size_t n = D.nvars();
    if (m_.size() != n) throw Error(ErrorKind::DimensionError, "coordinate change size");
    std::vector<Poly> images;
    for (std::size_t i = 0; i < n; ++i) {
        Poly acc(D.ring(), n);
        for (std::size_t j = 0; j < n; ++j)
            if (!m_[i][j].is_zero()) acc += D.image(j).scaled(m_[i][j]);
        images.push_back(to_new(acc));
    }
    return Derivation(std::move(images));
}

LinearChange LinearChange::then(const LinearChange& next) const {
    const std::size_t n = m_.size();
    RatMatrix prod(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) prod[i][j] += next.m_[i][k] * m_[k][j];
    return LinearChange(std::move(prod));
}

} // namespace lnd

#include "lnd/linalg.hpp"

#include "lnd/error.hpp"

#include <algorithm>

namespace lnd {

namespace {

bool row_is_zero(const Row& r) {
    return std::all_of(r.begin(), r.end(), [](const RingElem& x) { return x.is_zero(); });
}

UniPoly uni_gcd(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() && b.is_zero()) return {};
    return uni_gcd_bezout(a, b).g;
}

} // namespace

Echelon eliminate(Matrix m, RingId ring, std::size_t ncols) {
    for (const auto& r : m)
        if (r.size() != ncols) throw Error(ErrorKind::DimensionError, "eliminate: ragged matrix");
    Echelon out;
    std::size_t next = 0;
    for (std::size_t col = 0; col < ncols && next < m.size(); ++col) {
        std::size_t piv = next;
        while (piv < m.size() && m[piv][col].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[next]);
        const RingElem p = m[next][col];
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == next || m[i][col].is_zero()) continue;
            const RingElem f = m[i][col];
            for (std::size_t j = 0; j < ncols; ++j) m[i][j] = p * m[i][j] - f * m[next][j];
            m[i] = normalize_row(std::move(m[i]));
        }
        m[next] = normalize_row(std::move(m[next]));
        out.pivots.push_back(col);
        ++next;
    }
    m.resize(next);
    out.rows = std::move(m);
    (void)ring;
    return out;
}

std::vector<Row> nullspace(const Matrix& m, RingId ring, std::size_t ncols) {
    const Echelon e = eliminate(m, ring, ncols);
    std::vector<Row> basis;
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        // x_f = prod of pivots, x_{p_i} = -M[i][f] * prod_{j != i} pivots.
        Row x(ncols, RingElem::zero(ring));
        RingElem all = RingElem::one(ring);
        for (std::size_t i = 0; i < e.rank(); ++i) all *= e.rows[i][e.pivots[i]];
        x[f] = all;
        for (std::size_t i = 0; i < e.rank(); ++i) {
            RingElem others = RingElem::one(ring);
            for (std::size_t j = 0; j < e.rank(); ++j)
                if (j != i) others *= e.rows[j][e.pivots[j]];
            x[e.pivots[i]] = -(e.rows[i][f] * others);
        }
        basis.push_back(normalize_row(std::move(x)));
    }
    return basis;
}

Row normalize_row(Row r) {
    if (r.empty() || row_is_zero(r)) return r;
    const RingId ring = r.front().ring();
    if (ring == RingId::PolyT) {
        UniPoly g;
        for (const auto& x : r) g = uni_gcd(g, x.as_unipoly());
        for (auto& x : r) x = RingElem(*x.as_unipoly().exact_div(g));
    } else if (ring == RingId::Circle) {
        // Move the last nonzero entry into Q[w2]; the remaining freedom is a
        // factor in Q(w2), fixed by the content division below.
        for (auto it = r.rbegin(); it != r.rend(); ++it) {
            if (it->is_zero()) continue;
            if (!it->as_circle().b.is_zero()) {
                const RingElem c(it->as_circle().conj());
                for (auto& x : r) x = x * c;
            }
            break;
        }
        UniPoly g;
        for (const auto& x : r) {
            g = uni_gcd(g, x.as_circle().a);
            g = uni_gcd(g, x.as_circle().b);
        }
        for (auto& x : r) {
            const auto& c = x.as_circle();
            const UniPoly a = c.a.is_zero() ? UniPoly() : *c.a.exact_div(g);
            const UniPoly b = c.b.is_zero() ? UniPoly() : *c.b.exact_div(g);
            x = RingElem(CircleElem{a, b});
        }
    }
    for (const auto& x : r) {
        if (x.is_zero()) continue;
        const Rational s = x.leading_rational().inverse();
        for (auto& y : r) y = y.scaled(s);
        break;
    }
    return r;
}

std::vector<Row> canonical_basis(const std::vector<Row>& rows, RingId ring, std::size_t ncols) {
    Echelon e = eliminate(rows, ring, ncols);
    return e.rows;
}

bool in_span(const std::vector<Row>& rows, const Row& v, RingId ring) {
    const std::size_t n = v.size();
    const std::size_t r0 = eliminate(rows, ring, n).rank();
    std::vector<Row> more = rows;
    more.push_back(v);
    return eliminate(more, ring, n).rank() == r0;
}

RingElem determinant(const Matrix& m, RingId ring) {
    const std::size_t n = m.size();
    if (n == 0) return RingElem::one(ring);
    if (n == 1) return m[0][0];
    RingElem det = RingElem::zero(ring);
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero()) continue;
        Matrix minor;
        for (std::size_t r = 1; r < n; ++r) {
            Row row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(std::move(row));
        }
        const RingElem term = m[0][c] * determinant(minor, ring);
        det = (c % 2 == 0) ? det + term : det - term;
    }
    return det;
}

Rational determinant(const RatMatrix& m) {
    Matrix mm;
    for (const auto& row : m) {
        Row r;
        for (const auto& x : row) r.emplace_back(x);
        mm.push_back(std::move(r));
    }
    return determinant(mm, RingId::Q).as_rational();
}

std::optional<RatMatrix> invert(const RatMatrix& m) {
    const std::size_t n = m.size();
    RatMatrix a = m;
    RatMatrix inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw Error(ErrorKind::DimensionError, "invert: matrix not square");
        inv[i][i] = Rational(1);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const Rational s = a[col][col].inverse();
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] *= s;
            inv[col][j] *= s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            const Rational f = a[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

} // namespace lnd

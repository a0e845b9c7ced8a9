#pragma once

#include "lnd/ring.hpp"

#include <optional>
#include <vector>

namespace lnd {

using Row = std::vector<RingElem>;
using Matrix = std::vector<Row>;
using RatMatrix = std::vector<std::vector<Rational>>;

/// Reduced echelon form over the fraction field, kept with entries in the
/// ring: rows are scaled, never divided, so pivots need not be one.
struct Echelon {
    Matrix rows;                      ///< nonzero rows only, ordered by pivot column
    std::vector<std::size_t> pivots;  ///< pivot column of each row
    std::size_t rank() const { return rows.size(); }
};

/// Fraction-free Gauss-Jordan elimination. Instead of dividing by the
/// previous pivot, every updated row is reduced by its content.
Echelon eliminate(Matrix m, RingId ring, std::size_t ncols);

/// Basis of the right kernel {x : m x = 0} over the fraction field, one
/// vector per free column (increasing), each with cleared denominators and
/// normalized by normalize_row.
std::vector<Row> nullspace(const Matrix& m, RingId ring, std::size_t ncols);

/// Removes the ring content of a row and fixes its scale:
///   Q      first nonzero entry becomes 1;
///   Q[t]   divide by the monic gcd of the entries;
///   circle multiply by a conjugate so that the last nonzero entry lies in
///          Q[w2], then divide by the Q[w2]-gcd of every component.
/// After the content step the first nonzero entry gets leading rational 1.
Row normalize_row(Row r);

/// Echelon rows of the span of `rows`, each normalized. Deterministic, so
/// two spanning sets of one space give the same result.
std::vector<Row> canonical_basis(const std::vector<Row>& rows, RingId ring, std::size_t ncols);

/// Whether `v` lies in the fraction-field span of `rows`.
bool in_span(const std::vector<Row>& rows, const Row& v, RingId ring);

/// Determinant by cofactor expansion (square matrices up to size 3 or 4).
RingElem determinant(const Matrix& m, RingId ring);

/// Exact inverse of a square rational matrix, if it is invertible.
std::optional<RatMatrix> invert(const RatMatrix& m);
Rational determinant(const RatMatrix& m);

} // namespace lnd

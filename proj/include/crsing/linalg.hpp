#pragma once

#include <optional>
#include <vector>

#include "rational.hpp"

namespace crsing {

// Dense exact matrices over Q(i).  Elimination never rounds, so rank and
// kernel answers are verdicts, not estimates.
using Row = std::vector<GaussianRational>;
using Matrix = std::vector<Row>;

int exact_rank(Matrix m);

// Basis of the right kernel {x : A x = 0}.
std::vector<Row> kernel_basis(Matrix a);

GaussianRational determinant(Matrix a);

// One solution of A x = b, if the system is consistent.
std::optional<Row> solve(Matrix a, Row b);

// Inverse of a square matrix, if it exists.
std::optional<Matrix> inverse(Matrix a);

// Dimension of the intersection of two column spans given by bases
// (each vector a Row of length n).
int intersection_dim(const std::vector<Row>& u, const std::vector<Row>& v);

}  // namespace crsing

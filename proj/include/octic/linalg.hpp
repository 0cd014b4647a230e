#pragma once

#include <vector>

#include "octic/rational.hpp"

namespace octic {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;  // row-major

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m);
std::size_t rank(QMatrix m);
// Basis of {v : m v = 0}, one vector per free column.
std::vector<QVector> nullspace(QMatrix m, std::size_t ncols);
Rational determinant(QMatrix m);

}  // namespace octic

#pragma once

#include <optional>
#include <vector>

#include "lowrank/field.hpp"
#include "lowrank/matrix.hpp"

namespace lowrank {

Matrix identity(const Field& f, std::size_t n);
Matrix multiply(const Field& f, const Matrix& a, const Matrix& b);
Matrix add(const Field& f, const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
std::vector<Fel> apply(const Field& f, const Matrix& a, const std::vector<Fel>& x);

struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Reduced row echelon form by Gauss-Jordan elimination.
Echelon rref(const Field& f, Matrix a);
std::size_t rank(const Field& f, const Matrix& a);
Fel determinant(const Field& f, Matrix a);

// One solution of a x = b with free variables set to zero; nullopt if inconsistent.
std::optional<std::vector<Fel>> solve(const Field& f, const Matrix& a, const std::vector<Fel>& b);

// Rows form a basis of {x : a x = 0}; basis vector t has a 1 at the t-th free column
// and zeros at the other free columns.
Matrix nullspace(const Field& f, const Matrix& a);

}  // namespace lowrank

namespace lowrank {

// Coefficients (lowest first) of the unique polynomial of degree < points.size()
// through (points[i], values[i]). Points must be distinct.
std::vector<Fel> interpolate(const Field& f, const std::vector<Fel>& points, const std::vector<Fel>& values);
Fel evaluate(const Field& f, const std::vector<Fel>& coeffs, Fel x);

}  // namespace lowrank

#include "lowrank/linalg.hpp"

#include <utility>

namespace lowrank {

Matrix identity(const Field& f, std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
}

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
    require(a.cols == b.rows, Errc::ShapeMismatch, "matrix product dimensions disagree");
    Matrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t t = 0; t < a.cols; ++t) {
            const Fel x = a(i, t);
            if (x.v == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c(i, j) = f.add(c(i, j), f.mul(x, b(t, j)));
        }
    }
    return c;
}

Matrix add(const Field& f, const Matrix& a, const Matrix& b) {
    require(a.rows == b.rows && a.cols == b.cols, Errc::ShapeMismatch, "matrix sum dimensions disagree");
    Matrix c(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) c.data[i] = f.add(a.data[i], b.data[i]);
    return c;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
    return t;
}

std::vector<Fel> apply(const Field& f, const Matrix& a, const std::vector<Fel>& x) {
    require(a.cols == x.size(), Errc::ShapeMismatch, "matrix-vector dimensions disagree");
    std::vector<Fel> y(a.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
        Fel s = f.zero();
        for (std::size_t j = 0; j < a.cols; ++j) s = f.add(s, f.mul(a(i, j), x[j]));
        y[i] = s;
    }
    return y;
}

Echelon rref(const Field& f, Matrix a) {
    Echelon out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols && row < a.rows; ++col) {
        std::size_t piv = row;
        while (piv < a.rows && a(piv, col).v == 0) ++piv;
        if (piv == a.rows) continue;
        if (piv != row) {
            for (std::size_t j = 0; j < a.cols; ++j) std::swap(a(piv, j), a(row, j));
        }
        const Fel scale = f.inv(a(row, col));
        for (std::size_t j = col; j < a.cols; ++j) a(row, j) = f.mul(a(row, j), scale);
        for (std::size_t i = 0; i < a.rows; ++i) {
            if (i == row) continue;
            const Fel c = a(i, col);
            if (c.v == 0) continue;
            for (std::size_t j = col; j < a.cols; ++j) a(i, j) = f.sub(a(i, j), f.mul(c, a(row, j)));
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.reduced = std::move(a);
    return out;
}

std::size_t rank(const Field& f, const Matrix& a) { return rref(f, a).pivots.size(); }

Fel determinant(const Field& f, Matrix a) {
    require(a.rows == a.cols, Errc::ShapeMismatch, "determinant of a non-square matrix");
    Fel det = f.one();
    for (std::size_t col = 0; col < a.cols; ++col) {
        std::size_t piv = col;
        while (piv < a.rows && a(piv, col).v == 0) ++piv;
        if (piv == a.rows) return f.zero();
        if (piv != col) {
            for (std::size_t j = 0; j < a.cols; ++j) std::swap(a(piv, j), a(col, j));
            det = f.neg(det);
        }
        det = f.mul(det, a(col, col));
        const Fel inv = f.inv(a(col, col));
        for (std::size_t i = col + 1; i < a.rows; ++i) {
            const Fel c = f.mul(a(i, col), inv);
            if (c.v == 0) continue;
            for (std::size_t j = col; j < a.cols; ++j) a(i, j) = f.sub(a(i, j), f.mul(c, a(col, j)));
        }
    }
    return det;
}

std::optional<std::vector<Fel>> solve(const Field& f, const Matrix& a, const std::vector<Fel>& b) {
    require(a.rows == b.size(), Errc::ShapeMismatch, "right-hand side length disagrees");
    Matrix aug(a.rows, a.cols + 1);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) aug(i, j) = a(i, j);
        aug(i, a.cols) = b[i];
    }
    Echelon e = rref(f, std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == a.cols) return std::nullopt;
    std::vector<Fel> x(a.cols);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, a.cols);
    return x;
}

Matrix nullspace(const Field& f, const Matrix& a) {
    Echelon e = rref(f, a);
    std::vector<bool> is_pivot(a.cols, false);
    for (std::size_t c : e.pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < a.cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix basis(free_cols.size(), a.cols);
    for (std::size_t t = 0; t < free_cols.size(); ++t) {
        const std::size_t fc = free_cols[t];
        basis(t, fc) = f.one();
        for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(t, e.pivots[r]) = f.neg(e.reduced(r, fc));
    }
    return basis;
}

}  // namespace lowrank

namespace lowrank {

std::vector<Fel> interpolate(const Field& f, const std::vector<Fel>& points, const std::vector<Fel>& values) {
    require(points.size() == values.size(), Errc::LengthMismatch, "one value per point");
    const std::size_t n = points.size();
    // Newton divided differences, then expand the Newton form into monomials.
    std::vector<Fel> dd = values;
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = n - 1; i >= level; --i) {
            const Fel denom = f.sub(points[i], points[i - level]);
            require(denom.v != 0, Errc::DuplicatePoints, "interpolation points must be distinct");
            dd[i] = f.div(f.sub(dd[i], dd[i - 1]), denom);
        }
    }
    std::vector<Fel> coeffs(n, f.zero());
    for (std::size_t i = n; i-- > 0;) {
        // coeffs <- coeffs * (x - points[i]) + dd[i]
        for (std::size_t j = n - 1; j > 0; --j) coeffs[j] = f.sub(coeffs[j - 1], f.mul(coeffs[j], points[i]));
        coeffs[0] = f.sub(dd[i], f.mul(coeffs[0], points[i]));
    }
    return coeffs;
}

Fel evaluate(const Field& f, const std::vector<Fel>& coeffs, Fel x) {
    Fel acc = f.zero();
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = f.add(f.mul(acc, x), coeffs[i]);
    return acc;
}

}  // namespace lowrank

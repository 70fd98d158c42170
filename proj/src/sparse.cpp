#include "lowrank/sparse.hpp"

#include <algorithm>
#include <set>

#include "lowrank/linalg.hpp"

namespace lowrank {

namespace {

void check_distinct(std::vector<Fel> pts) {
    std::sort(pts.begin(), pts.end());
    require(std::adjacent_find(pts.begin(), pts.end()) == pts.end(), Errc::DuplicatePoints,
            "evaluation points must be pairwise distinct");
}

}  // namespace

DualRS dual_rs(const Field& field, std::vector<Fel> points, std::size_t s) {
    check_distinct(points);
    DualRS code{field, std::move(points), s, Matrix(2 * s, 0)};
    const std::size_t n = code.points.size();
    code.v = Matrix(2 * s, n);
    for (std::size_t j = 0; j < n; ++j) {
        Fel x = field.one();
        for (std::size_t i = 0; i < 2 * s; ++i) {
            code.v(i, j) = x;
            x = field.mul(x, code.points[j]);
        }
    }
    return code;
}

DualRS dual_rs(const Field& field, Fel g, std::size_t n, std::size_t s) {
    std::vector<Fel> pts(n);
    Fel x = field.one();
    for (std::size_t j = 0; j < n; ++j) {
        pts[j] = x;
        x = field.mul(x, g);
    }
    return dual_rs(field, std::move(pts), s);
}

std::vector<Fel> syndrome(const DualRS& code, const std::vector<Fel>& x) { return apply(code.field, code.v, x); }

std::vector<Fel> pronys_method(const Field& field, std::size_t n, std::size_t s, std::vector<std::size_t> advice,
                               const std::vector<Fel>& y, const std::vector<Fel>& points, PronyTrace* trace) {
    require(y.size() == 2 * s, Errc::LengthMismatch, "syndrome length must be 2s");
    require(points.size() == n, Errc::LengthMismatch, "need one point per coordinate");
    std::sort(advice.begin(), advice.end());
    advice.erase(std::unique(advice.begin(), advice.end()), advice.end());
    require(advice.empty() || advice.back() < n, Errc::InvalidArgument, "advice index out of range");
    require(advice.size() <= 2 * s, Errc::AdviceTooLarge,
            "advice of size " + std::to_string(advice.size()) + " exceeds 2s = " + std::to_string(2 * s));

    std::vector<Fel> pts = points;
    if (advice.size() % 2 == 1) {
        std::size_t extra = 0;
        while (extra < n && std::binary_search(advice.begin(), advice.end(), extra)) ++extra;
        if (extra == n) {
            // Every index is advised: pad with a point outside the evaluation set.
            std::set<Fel> used(points.begin(), points.end());
            Fel fresh{0};
            while (used.count(fresh)) {
                require(fresh.v + 1 < field.size(), Errc::FieldTooSmall, "no spare point for padding");
                fresh = Fel{fresh.v + 1};
            }
            pts.push_back(fresh);
        }
        advice.push_back(extra);
        std::sort(advice.begin(), advice.end());
    }
    const std::size_t t = advice.size() / 2;
    const std::size_t rows = s + t, cols = s + t + 1;

    Matrix a(rows, cols);
    for (std::size_t i = 0; i < advice.size(); ++i) {
        Fel x = field.one();
        for (std::size_t j = 0; j < cols; ++j) {
            a(i, j) = x;
            x = field.mul(x, pts[advice[i]]);
        }
    }
    for (std::size_t l = 0; l + advice.size() < rows; ++l) {
        for (std::size_t j = 0; j < cols; ++j) a(advice.size() + l, j) = y[l + j];
    }

    const Echelon e = rref(field, a);
    std::size_t lead = 0;
    while (lead < e.pivots.size() && e.pivots[lead] == lead) ++lead;
    std::vector<Fel> c(lead + 1);
    for (std::size_t i = 0; i < lead; ++i) c[i] = field.neg(e.reduced(i, lead));
    c[lead] = field.one();

    std::vector<std::size_t> roots;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        Fel acc = field.zero();
        for (std::size_t i = c.size(); i-- > 0;) acc = field.add(field.mul(acc, pts[k]), c[i]);
        if (acc.v == 0) roots.push_back(k);
    }
    if (trace) {
        trace->minor_size = lead;
        trace->system_rank = e.pivots.size();
        trace->locator = c;
        trace->roots = roots;
    }

    Matrix d(2 * s, roots.size());
    for (std::size_t col = 0; col < roots.size(); ++col) {
        Fel x = field.one();
        for (std::size_t i = 0; i < 2 * s; ++i) {
            d(i, col) = x;
            x = field.mul(x, pts[roots[col]]);
        }
    }
    const auto z = solve(field, d, y);
    require(z.has_value(), Errc::InconsistentSyndrome, "syndrome is not explained by the located support");
    std::vector<Fel> x(n, field.zero());
    for (std::size_t col = 0; col < roots.size(); ++col) {
        if (roots[col] >= n) {
            require((*z)[col].v == 0, Errc::InconsistentSyndrome, "padding coordinate came out nonzero");
            continue;
        }
        x[roots[col]] = (*z)[col];
    }
    return x;
}

}  // namespace lowrank

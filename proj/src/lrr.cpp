#include "lowrank/lrr.hpp"

#include <algorithm>

#include "lowrank/linalg.hpp"
#include "lowrank/sparse.hpp"

namespace lowrank {

std::vector<std::pair<std::size_t, std::size_t>> lne_scan(const DenseTensor& m, std::size_t k) {
    require(m.order() == 2, Errc::ShapeMismatch, "lne_scan needs a matrix");
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t rows = m.dims()[0], cols = m.dims()[1];
    for (std::size_t i = 0; i < rows && i < k; ++i) {
        for (std::size_t j = 0; j < cols && i + j < k; ++j) {
            if (m(i, j).v != 0) {
                out.emplace_back(i, j);
                break;
            }
        }
    }
    return out;
}

bool is_upper_echelon(const DenseTensor& m, std::size_t k) {
    const std::size_t rows = m.dims()[0];
    for (auto [i, j] : lne_scan(m, k)) {
        for (std::size_t i2 = i + 1; i2 < rows && i2 + j < k; ++i2) {
            if (m(i2, j).v != 0) return false;
        }
    }
    return true;
}

std::vector<RowOp> make_upper_echelon(const DenseTensor& p, std::size_t k) {
    require(is_upper_echelon(p, k), Errc::NotEchelon, "input is not (<k)-upper-echelon");
    const Field& f = p.field();
    const std::size_t rows = p.dims()[0], cols = p.dims()[1];
    std::vector<RowOp> ops;
    for (auto [i, j] : lne_scan(p, k)) {
        const std::size_t t = k - j;
        if (t >= rows || j >= cols) continue;
        const Fel target = p(t, j);
        if (target.v == 0) continue;
        ops.push_back({t, i, f.neg(f.div(target, p(i, j)))});
    }
    return ops;
}

Matrix row_ops_matrix(const Field& f, std::size_t n, const std::vector<RowOp>& ops) {
    Matrix l = identity(f, n);
    for (const RowOp& op : ops) {
        for (std::size_t c = 0; c < n; ++c) l(op.target, c) = f.add(l(op.target, c), f.mul(op.coeff, l(op.source, c)));
    }
    return l;
}

DenseTensor low_rank_recovery(const Field& field, std::size_t r, const DiagonalMeasurements& meas,
                              const DiagonalOracle& oracle, const RecoveryObserver* observer) {
    const std::size_t n = meas.n, m = meas.m;
    require(n > 0 && m > 0, Errc::ShapeMismatch, "empty matrix shape");
    require(meas.weights.size() == n + m - 1 && meas.syndromes.size() == n + m - 1, Errc::ShapeMismatch,
            "need one measurement group per diagonal");
    Matrix l = identity(field, n);
    DenseTensor recovered(field, {n, m});
    DenseTensor reduced(field, {n, m});
    std::vector<long> lne_col(n, -1);
    std::vector<std::size_t> lne_rows;

    std::vector<Fel> correction, corrected, diag;
    std::vector<std::size_t> advice;
    std::vector<RowOp> ops;
    for (std::size_t k = 0; k + 1 < n + m; ++k) {
        const std::size_t len = diagonal_length(n, m, k);
        const std::size_t i0 = diagonal_first_row(n, m, k);
        const Matrix& w = meas.weights[k];
        require(w.cols == len && w.rows == meas.syndromes[k].size(), Errc::ShapeMismatch,
                "diagonal " + std::to_string(k) + " weights do not match its length");

        // Correction ((L - I) N) on diagonal k; L - I is supported on lne rows.
        correction.assign(len, field.zero());
        for (std::size_t s = 0; s < len; ++s) {
            const std::size_t i = i0 + s, j = k - i;
            Fel acc = field.zero();
            for (std::size_t src : lne_rows) {
                if (src >= i) break;
                const Fel c = l(i, src);
                if (c.v != 0) acc = field.add(acc, field.mul(c, recovered(src, j)));
            }
            correction[s] = acc;
        }

        advice.clear();
        for (std::size_t src : lne_rows) {
            // Column k - src sits in row src; column lne(src) sits in row k - lne(src).
            for (std::size_t row : {src, k - static_cast<std::size_t>(lne_col[src])}) {
                if (row >= i0 && row < i0 + len) advice.push_back(row - i0);
            }
        }
        std::sort(advice.begin(), advice.end());
        advice.erase(std::unique(advice.begin(), advice.end()), advice.end());

        corrected = meas.syndromes[k];
        for (std::size_t t = 0; t < w.rows; ++t) {
            Fel acc = corrected[t];
            for (std::size_t s = 0; s < len; ++s) acc = field.add(acc, field.mul(w(t, s), correction[s]));
            corrected[t] = acc;
        }

        diag = oracle(k, w, corrected, advice);
        require(diag.size() == len, Errc::OracleFailure, "oracle returned a diagonal of the wrong length");
        if (observer && observer->on_diagonal) observer->on_diagonal(DiagonalEvent{k, lne_rows.size(), advice, diag});

        for (std::size_t s = 0; s < len; ++s) {
            const std::size_t i = i0 + s;
            recovered(i, k - i) = field.sub(diag[s], correction[s]);
        }

        ops.clear();
        for (std::size_t src : lne_rows) {
            const std::size_t j = static_cast<std::size_t>(lne_col[src]);
            const std::size_t t = k - j;
            if (t >= i0 + len || t < i0) continue;
            const Fel target = diag[t - i0];
            if (target.v == 0) continue;
            ops.push_back({t, src, field.neg(field.div(target, reduced(src, j)))});
        }
        for (const RowOp& op : ops) {
            const std::size_t s = op.target - i0;
            diag[s] = field.add(diag[s], field.mul(op.coeff, reduced(op.source, k - op.target)));
            for (std::size_t c = 0; c <= op.source; ++c) {
                l(op.target, c) = field.add(l(op.target, c), field.mul(op.coeff, l(op.source, c)));
            }
        }

        const std::vector<std::size_t> lne_before = lne_rows;
        for (std::size_t s = 0; s < len; ++s) {
            const std::size_t i = i0 + s;
            reduced(i, k - i) = diag[s];
            if (lne_col[i] < 0 && diag[s].v != 0) {
                lne_col[i] = static_cast<long>(k - i);
                lne_rows.insert(std::upper_bound(lne_rows.begin(), lne_rows.end(), i), i);
            }
        }
        require(lne_rows.size() <= r, Errc::RankPromiseViolated,
                "more than " + std::to_string(r) + " leading entries after diagonal " + std::to_string(k));
        if (observer && observer->after_iteration) {
            observer->after_iteration(IterationState{k, l, recovered, reduced, lne_col, lne_before});
        }
    }
    return recovered;
}

std::size_t reduced_rows(std::size_t big_r, std::size_t n, std::size_t m, std::size_t k) {
    return std::min({big_r, k + 1, n + m - k - 1});
}

std::size_t reduced_family_size(std::size_t big_r, std::size_t n, std::size_t m) {
    std::size_t total = 0;
    for (std::size_t k = 0; k + 1 < n + m; ++k) total += reduced_rows(big_r, n, m, k);
    return total;
}

namespace {

std::vector<Fel> power_table(const Field& f, Fel g, std::size_t count) {
    std::vector<Fel> v(count);
    Fel x = f.one();
    for (std::size_t i = 0; i < count; ++i) {
        v[i] = x;
        x = f.mul(x, g);
    }
    return v;
}

// Points g^j for the columns j of diagonal k, by increasing row.
std::vector<Fel> diagonal_points(const std::vector<Fel>& gpow, std::size_t n, std::size_t m, std::size_t k) {
    const std::size_t len = diagonal_length(n, m, k), i0 = diagonal_first_row(n, m, k);
    std::vector<Fel> pts(len);
    for (std::size_t s = 0; s < len; ++s) pts[s] = gpow[k - i0 - s];
    return pts;
}

}  // namespace

std::vector<Fel> measure_diagonal_family(const DenseTensor& mat, Fel g, std::size_t big_r) {
    require(mat.order() == 2, Errc::ShapeMismatch, "diagonal measurements need a matrix");
    const Field& f = mat.field();
    const std::size_t n = mat.dims()[0], m = mat.dims()[1];
    const auto gpow = power_table(f, g, m);
    std::vector<Fel> out;
    out.reserve(reduced_family_size(big_r, n, m));
    for (std::size_t k = 0; k + 1 < n + m; ++k) {
        const auto pts = diagonal_points(gpow, n, m, k);
        auto vals = diagonal(mat, k);
        const std::size_t rows = reduced_rows(big_r, n, m, k);
        for (std::size_t l = 0; l < rows; ++l) {
            Fel acc = f.zero();
            for (std::size_t s = 0; s < vals.size(); ++s) {
                acc = f.add(acc, vals[s]);
                vals[s] = f.mul(vals[s], pts[s]);
            }
            out.push_back(acc);
        }
    }
    return out;
}

DiagonalMeasurements diagonal_family(const Field& field, Fel g, std::size_t n, std::size_t m, std::size_t big_r,
                                     const std::vector<Fel>& syndromes) {
    require(syndromes.size() == reduced_family_size(big_r, n, m), Errc::LengthMismatch,
            "expected " + std::to_string(reduced_family_size(big_r, n, m)) + " syndromes, got " +
                std::to_string(syndromes.size()));
    const auto gpow = power_table(field, g, std::max(n, m));
    DiagonalMeasurements meas{n, m, {}, {}};
    std::size_t pos = 0;
    for (std::size_t k = 0; k + 1 < n + m; ++k) {
        const auto pts = diagonal_points(gpow, n, m, k);
        const std::size_t rows = reduced_rows(big_r, n, m, k);
        Matrix w(rows, pts.size());
        for (std::size_t s = 0; s < pts.size(); ++s) {
            Fel x = field.one();
            for (std::size_t t = 0; t < rows; ++t) {
                w(t, s) = x;
                x = field.mul(x, pts[s]);
            }
        }
        meas.weights.push_back(std::move(w));
        meas.syndromes.emplace_back(syndromes.begin() + static_cast<long>(pos),
                                    syndromes.begin() + static_cast<long>(pos + rows));
        pos += rows;
    }
    return meas;
}

DiagonalOracle diagonal_oracle(const Field& field, Fel g, std::size_t n, std::size_t m) {
    auto gpow = power_table(field, g, std::max(n, m));
    return [field, gpow = std::move(gpow), n, m](std::size_t k, const Matrix& w, const std::vector<Fel>& y,
                                                 const std::vector<std::size_t>& advice) {
        const std::size_t len = w.cols, rows = w.rows;
        if (rows >= len) {
            const auto sol = solve(field, w, y);
            require(sol.has_value(), Errc::InconsistentSyndrome,
                    "diagonal " + std::to_string(k) + " syndromes are inconsistent");
            return *sol;
        }
        require(advice.size() <= rows, Errc::RankPromiseViolated,
                "advice of size " + std::to_string(advice.size()) + " exceeds budget on diagonal " +
                    std::to_string(k));
        const std::size_t s = rows / 2;
        const std::vector<Fel> head(y.begin(), y.begin() + static_cast<long>(2 * s));
        auto x = pronys_method(field, len, s, advice, head, diagonal_points(gpow, n, m, k));
        require(apply(field, w, x) == y, Errc::InconsistentSyndrome,
                "diagonal " + std::to_string(k) + " recovery does not reproduce its syndromes");
        return x;
    };
}

DenseTensor recover_diagonal_family(const Field& field, Fel g, std::size_t n, std::size_t m, std::size_t r,
                                    std::size_t big_r, const std::vector<Fel>& syndromes,
                                    const RecoveryObserver* observer) {
    const DiagonalMeasurements meas = diagonal_family(field, g, n, m, big_r, syndromes);
    return low_rank_recovery(field, r, meas, diagonal_oracle(field, g, n, m), observer);
}

std::vector<Fel> measure_D(const DenseTensor& mat, std::size_t r) {
    require(mat.order() == 2, Errc::ShapeMismatch, "measure_D needs a matrix");
    const Fel g = family_generator(mat.field(), BigInt(std::max(mat.dims()[0], mat.dims()[1])));
    return measure_diagonal_family(mat, g, 2 * r);
}

DenseTensor recover_from_D(const Field& field, std::size_t n, std::size_t m, std::size_t r,
                           const std::vector<Fel>& syndromes, const RecoveryObserver* observer) {
    require(r >= 1, Errc::InvalidArgument, "rank bound must be positive");
    const Fel g = family_generator(field, BigInt(std::max(n, m)));
    return recover_diagonal_family(field, g, n, m, r, 2 * r, syndromes, observer);
}

std::vector<Fel> convert_B_to_D(const Field& field, std::size_t n, std::size_t m, std::size_t r,
                                const std::vector<Fel>& syndromes) {
    const std::size_t big_r = 2 * r;
    require(r >= 1 && big_r <= std::min(n, m), Errc::InvalidArgument,
            "conversion needs 1 <= 2r <= min(n, m)");
    require(syndromes.size() == size_B_prime(big_r, n, m), Errc::LengthMismatch,
            "expected " + std::to_string(size_B_prime(big_r, n, m)) + " syndromes");
    const Fel g = family_generator(field, BigInt(std::max(n, m)));
    const std::size_t ndiag = n + m - 1;
    const auto alphas = family_points(field, ndiag);
    const auto gpow = power_table(field, g, std::max(n, m));

    // coef[K][l] = <M, D_{K,l}>
    std::vector<std::vector<Fel>> coef(ndiag, std::vector<Fel>(big_r, field.zero()));
    std::size_t pos = 0;
    for (std::size_t l = 0; l < big_r; ++l) {
        const std::size_t count = ndiag - 2 * l;
        std::vector<Fel> vals(syndromes.begin() + static_cast<long>(pos),
                              syndromes.begin() + static_cast<long>(pos + count));
        pos += count;

        std::vector<Fel> fringe_coef;
        std::vector<std::size_t> fringe;
        for (std::size_t kk = 0; kk < ndiag; ++kk) {
            if (kk >= l && kk + l < ndiag) continue;
            const auto pts = diagonal_points(gpow, n, m, kk);
            const std::size_t len = pts.size();
            Matrix w(l, len);
            for (std::size_t s = 0; s < len; ++s) {
                Fel x = field.one();
                for (std::size_t t = 0; t < l; ++t) {
                    w(t, s) = x;
                    x = field.mul(x, pts[s]);
                }
            }
            const std::vector<Fel> known(coef[kk].begin(), coef[kk].begin() + static_cast<long>(l));
            const auto sol = solve(field, w, known);
            require(sol.has_value(), Errc::InconsistentEvaluations,
                    "diagonal " + std::to_string(kk) + " coefficients disagree");
            Fel c = field.zero();
            for (std::size_t s = 0; s < len; ++s)
                c = field.add(c, field.mul((*sol)[s], field.pow(pts[s], static_cast<std::uint64_t>(l))));
            coef[kk][l] = c;
            fringe.push_back(kk);
            fringe_coef.push_back(c);
        }

        std::vector<Fel> pts(alphas.begin(), alphas.begin() + static_cast<long>(count));
        for (std::size_t t = 0; t < count; ++t) {
            Fel v = vals[t];
            for (std::size_t q = 0; q < fringe.size(); ++q) {
                v = field.sub(v, field.mul(fringe_coef[q], field.pow(pts[t], static_cast<std::uint64_t>(fringe[q]))));
            }
            vals[t] = field.div(v, field.pow(pts[t], static_cast<std::uint64_t>(l)));
        }
        const auto h = interpolate(field, pts, vals);
        for (std::size_t t = 0; t < count; ++t) coef[l + t][l] = h[t];
    }

    std::vector<Fel> out;
    out.reserve(reduced_family_size(big_r, n, m));
    for (std::size_t kk = 0; kk < ndiag; ++kk) {
        for (std::size_t l = 0; l < reduced_rows(big_r, n, m, kk); ++l) out.push_back(coef[kk][l]);
    }
    return out;
}

std::vector<Fel> tensor_measure(const DenseTensor& t, std::size_t r) {
    require(t.order() >= 2, Errc::ShapeMismatch, "tensor measurements need d >= 2");
    const std::size_t n = t.dims()[0];
    return measure(t, hitting_set_tensor(t.field(), t.order(), n, 2 * r));
}

namespace {

struct TensorLevelContext {
    Field field;
    Fel g;
    std::uint64_t stride_base;
    std::size_t r;
    std::size_t big_r;
};

std::uint64_t checked_power(std::uint64_t base, std::size_t e) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < e; ++i) {
        require(v <= UINT64_MAX / base, Errc::TooLarge, "merge stride overflows");
        v *= base;
    }
    return v;
}

// Rebuilds the coefficient array (dims degs[j] + 1) of a 2^c-variate polynomial from the
// univariate restrictions F[t], t ranging over index tuples in [R]^c with the first index slowest.
DenseTensor recover_level(const TensorLevelContext& ctx, const std::vector<std::size_t>& degs,
                          const std::vector<std::vector<Fel>>& polys, std::size_t first, std::size_t count) {
    const Field& f = ctx.field;
    if (degs.size() == 1) {
        const auto& p = polys[first];
        for (std::size_t e = degs[0] + 1; e < p.size(); ++e) {
            require(p[e].v == 0, Errc::InconsistentEvaluations, "restriction exceeds its degree bound");
        }
        std::vector<Fel> c(degs[0] + 1, f.zero());
        std::copy_n(p.begin(), std::min(p.size(), c.size()), c.begin());
        return DenseTensor(f, {degs[0] + 1}, std::move(c));
    }
    const std::size_t half = degs.size() / 2;
    std::vector<std::size_t> sub_degs(half);
    for (std::size_t u = 0; u < half; ++u) sub_degs[u] = degs[2 * u] + degs[2 * u + 1];
    std::size_t n0 = 1, n1 = 1;
    for (std::size_t u = 0; u < half; ++u) {
        const std::uint64_t w = checked_power(ctx.stride_base, u);
        n0 += degs[2 * u] * w;
        n1 += degs[2 * u + 1] * w;
    }

    const std::size_t block = count / ctx.big_r;
    std::vector<std::vector<Fel>> merged(ctx.big_r);
    for (std::size_t l = 0; l < ctx.big_r; ++l) {
        DenseTensor sub = recover_level(ctx, sub_degs, polys, first + l * block, block);
        for (std::size_t u = 1; u < half; ++u) sub = merge_variables(sub, 0, 1, checked_power(ctx.stride_base, u));
        merged[l] = sub.entries();
        require(merged[l].size() == n0 + n1 - 1, Errc::ShapeMismatch, "merged restriction has wrong length");
    }

    std::vector<Fel> syn;
    for (std::size_t k = 0; k + 1 < n0 + n1; ++k) {
        for (std::size_t l = 0; l < reduced_rows(ctx.big_r, n0, n1, k); ++l) syn.push_back(merged[l][k]);
    }
    DenseTensor c = recover_diagonal_family(f, ctx.g, n0, n1, ctx.r, ctx.big_r, syn);

    try {
        for (std::size_t h = half; h-- > 1;) {
            std::size_t low = 1;
            for (std::size_t u = 0; u < h; ++u) low += degs[2 * u] * checked_power(ctx.stride_base, u);
            c = split_variables(c, 0, checked_power(ctx.stride_base, h), low, degs[2 * h] + 1);
        }
        for (std::size_t h = half; h-- > 1;) {
            std::size_t low = 1;
            for (std::size_t u = 0; u < h; ++u) low += degs[2 * u + 1] * checked_power(ctx.stride_base, u);
            c = split_variables(c, half, checked_power(ctx.stride_base, h), low, degs[2 * h + 1] + 1);
        }
    } catch (const Error& e) {
        if (e.code() == Errc::NotInImage) fail(Errc::InconsistentEvaluations, e.what());
        throw;
    }
    std::vector<std::size_t> perm(2 * half);
    for (std::size_t u = 0; u < half; ++u) {
        perm[2 * u] = u;
        perm[2 * u + 1] = half + u;
    }
    return permute_axes(c, perm);
}

}  // namespace

DenseTensor tensor_recover(const Field& field, std::size_t d, std::size_t n, std::size_t r,
                           const std::vector<Fel>& syndromes) {
    require(d >= 2 && n >= 1 && r >= 1, Errc::InvalidArgument, "tensor recovery needs d >= 2, n >= 1, r >= 1");
    const std::size_t big_r = 2 * r;
    require(syndromes.size() == size_tensor(d, n, big_r), Errc::ShapeMismatch,
            "expected " + std::to_string(size_tensor(d, n, big_r)) + " syndromes");
    const unsigned b = ceil_log2(d);
    const BigInt min_order = boost::multiprecision::pow(BigInt(2 * d * n), static_cast<unsigned>(d));
    const Fel g = family_generator(field, min_order);
    const auto alphas = family_points(field, d * n);

    const std::size_t tuples = syndromes.size() / (d * n);
    std::vector<std::vector<Fel>> polys(tuples);
    for (std::size_t t = 0; t < tuples; ++t) {
        std::vector<Fel> vals(syndromes.begin() + static_cast<long>(t * d * n),
                              syndromes.begin() + static_cast<long>((t + 1) * d * n));
        polys[t] = interpolate(field, alphas, vals);
    }

    const std::size_t padded = std::size_t{1} << b;
    std::vector<std::size_t> degs(padded, 0);
    for (std::size_t j = 0; j < d; ++j) degs[j] = n - 1;
    const TensorLevelContext ctx{field, g, static_cast<std::uint64_t>(n) << b, r, big_r};
    DenseTensor full = recover_level(ctx, degs, polys, 0, tuples);
    return DenseTensor(field, Dims(d, n), full.entries());
}

}  // namespace lowrank

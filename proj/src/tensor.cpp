#include "lowrank/tensor.hpp"

#include <algorithm>

#include "lowrank/linalg.hpp"

namespace lowrank {

namespace {

const Field& wider(const Field& a, const Field& b) {
    if (a.same_as(b)) return a;
    if (a.characteristic() == b.characteristic()) {
        if (a.is_prime_field()) return b;
        if (b.is_prime_field()) return a;
    }
    fail(Errc::FieldMismatch, a.header() + " vs " + b.header());
}

void check_dims(const Dims& a, const Dims& b) {
    require(a == b, Errc::ShapeMismatch, "tensor dimensions disagree");
}

Fel dot(const Field& f, const std::vector<Fel>& a, const std::vector<Fel>& b) {
    require(a.size() == b.size(), Errc::ShapeMismatch, "vector lengths disagree");
    Fel s = f.zero();
    for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
    return s;
}

// Contracts the last axis of `data` (shape prefix x n) against `v`.
std::vector<Fel> contract_last(const Field& f, const std::vector<Fel>& data, const std::vector<Fel>& v) {
    const std::size_t n = v.size();
    std::vector<Fel> out(data.size() / n);
    for (std::size_t p = 0; p < out.size(); ++p) {
        Fel s = f.zero();
        const Fel* row = data.data() + p * n;
        for (std::size_t i = 0; i < n; ++i) s = f.add(s, f.mul(row[i], v[i]));
        out[p] = s;
    }
    return out;
}

}  // namespace

std::size_t volume(const Dims& dims) {
    std::size_t v = 1;
    for (std::size_t n : dims) v *= n;
    return v;
}

DenseTensor::DenseTensor(Field field, Dims dims)
    : field_(std::move(field)), dims_(std::move(dims)), entries_(volume(dims_)) {
    require(!dims_.empty(), Errc::ShapeMismatch, "tensor needs at least one axis");
}

DenseTensor::DenseTensor(Field field, Dims dims, std::vector<Fel> entries)
    : field_(std::move(field)), dims_(std::move(dims)), entries_(std::move(entries)) {
    require(!dims_.empty(), Errc::ShapeMismatch, "tensor needs at least one axis");
    require(entries_.size() == volume(dims_), Errc::ShapeMismatch, "entry count does not match dims");
}

DenseTensor DenseTensor::from_matrix(Field field, const Matrix& m) {
    return DenseTensor(std::move(field), {m.rows, m.cols}, m.data);
}

Matrix DenseTensor::to_matrix() const {
    require(dims_.size() == 2, Errc::ShapeMismatch, "tensor is not a matrix");
    Matrix m(dims_[0], dims_[1]);
    m.data = entries_;
    return m;
}

std::size_t DenseTensor::offset(std::span<const std::size_t> index) const {
    require(index.size() == dims_.size(), Errc::ShapeMismatch, "index arity mismatch");
    std::size_t off = 0;
    for (std::size_t j = 0; j < dims_.size(); ++j) {
        require(index[j] < dims_[j], Errc::ShapeMismatch, "index out of range");
        off = off * dims_[j] + index[j];
    }
    return off;
}

bool DenseTensor::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](Fel x) { return x.v == 0; });
}

bool operator==(const DenseTensor& a, const DenseTensor& b) {
    return a.field_.same_as(b.field_) && a.dims_ == b.dims_ && a.entries_ == b.entries_;
}

Rank1Tensor::Rank1Tensor(Field field, std::vector<std::vector<Fel>> factors)
    : field_(std::move(field)), factors_(std::move(factors)) {
    require(!factors_.empty(), Errc::ShapeMismatch, "rank-1 tensor needs at least one factor");
    for (const auto& v : factors_) {
        require(std::any_of(v.begin(), v.end(), [](Fel x) { return x.v != 0; }), Errc::InvalidArgument,
                "rank-1 factor vectors must be nonzero");
    }
}

Dims Rank1Tensor::dims() const {
    Dims d;
    for (const auto& v : factors_) d.push_back(v.size());
    return d;
}

LowRankTensor::LowRankTensor(Field field, Dims dims) : field_(std::move(field)), dims_(std::move(dims)) {}

void LowRankTensor::add_term(std::vector<std::vector<Fel>> factors) {
    require(factors.size() == dims_.size(), Errc::ShapeMismatch, "term arity mismatch");
    for (std::size_t j = 0; j < factors.size(); ++j) {
        require(factors[j].size() == dims_[j], Errc::ShapeMismatch, "term dims mismatch");
        if (std::all_of(factors[j].begin(), factors[j].end(), [](Fel x) { return x.v == 0; })) return;
    }
    terms_.emplace_back(field_, std::move(factors));
}

void LowRankTensor::add_term(const Rank1Tensor& term) { add_term(term.factors()); }

Fel inner_product(const DenseTensor& a, const DenseTensor& b) {
    const Field& f = wider(a.field(), b.field());
    check_dims(a.dims(), b.dims());
    return dot(f, a.entries(), b.entries());
}

Fel inner_product(const DenseTensor& a, const Rank1Tensor& b) {
    const Field& f = wider(a.field(), b.field());
    check_dims(a.dims(), b.dims());
    std::vector<Fel> cur = a.entries();
    for (std::size_t j = b.order(); j-- > 0;) cur = contract_last(f, cur, b.factors()[j]);
    return cur[0];
}

Fel inner_product(const Rank1Tensor& a, const DenseTensor& b) { return inner_product(b, a); }

Fel inner_product(const Rank1Tensor& a, const Rank1Tensor& b) {
    const Field& f = wider(a.field(), b.field());
    check_dims(a.dims(), b.dims());
    Fel s = f.one();
    for (std::size_t j = 0; j < a.order(); ++j) s = f.mul(s, dot(f, a.factors()[j], b.factors()[j]));
    return s;
}

Fel inner_product(const LowRankTensor& a, const Rank1Tensor& b) {
    const Field& f = wider(a.field(), b.field());
    check_dims(a.dims(), b.dims());
    Fel s = f.zero();
    for (const auto& t : a.terms()) s = f.add(s, inner_product(t, b));
    return s;
}

Fel inner_product(const LowRankTensor& a, const DenseTensor& b) {
    const Field& f = wider(a.field(), b.field());
    check_dims(a.dims(), b.dims());
    Fel s = f.zero();
    for (const auto& t : a.terms()) s = f.add(s, inner_product(b, t));
    return s;
}

Fel eval_fT(const DenseTensor& t, const std::vector<std::vector<Fel>>& points) {
    require(points.size() == t.order(), Errc::ShapeMismatch, "point arity mismatch");
    std::vector<Fel> cur = t.entries();
    for (std::size_t j = t.order(); j-- > 0;) {
        require(points[j].size() == t.dims()[j], Errc::ShapeMismatch, "point length mismatch");
        cur = contract_last(t.field(), cur, points[j]);
    }
    return cur[0];
}

Fel eval_fhat(const DenseTensor& t, const std::vector<Fel>& xs) {
    require(xs.size() == t.order(), Errc::ShapeMismatch, "point arity mismatch");
    const Field& f = t.field();
    std::vector<Fel> cur = t.entries();
    for (std::size_t j = t.order(); j-- > 0;) {
        const std::size_t n = t.dims()[j];
        std::vector<Fel> next(cur.size() / n);
        for (std::size_t p = 0; p < next.size(); ++p) {
            Fel acc = f.zero();
            for (std::size_t i = n; i-- > 0;) acc = f.add(f.mul(acc, xs[j]), cur[p * n + i]);
            next[p] = acc;
        }
        cur = std::move(next);
    }
    return cur[0];
}

DenseTensor expand(const Rank1Tensor& t) {
    const Field& f = t.field();
    std::vector<Fel> cur{f.one()};
    for (const auto& v : t.factors()) {
        std::vector<Fel> next(cur.size() * v.size());
        for (std::size_t p = 0; p < cur.size(); ++p)
            for (std::size_t i = 0; i < v.size(); ++i) next[p * v.size() + i] = f.mul(cur[p], v[i]);
        cur = std::move(next);
    }
    return DenseTensor(f, t.dims(), std::move(cur));
}

DenseTensor expand(const LowRankTensor& t) {
    DenseTensor out(t.field(), t.dims());
    const Field& f = t.field();
    for (const auto& term : t.terms()) {
        DenseTensor e = expand(term);
        for (std::size_t i = 0; i < out.size(); ++i) out.entries()[i] = f.add(out.entries()[i], e.entries()[i]);
    }
    return out;
}

std::size_t matrix_rank(const DenseTensor& m) { return rank(m.field(), m.to_matrix()); }

std::size_t max_flattening_rank(const DenseTensor& t) {
    if (t.order() == 1) return t.is_zero() ? 0 : 1;
    std::size_t best = 0;
    std::size_t rows = 1;
    for (std::size_t s = 1; s < t.order(); ++s) {
        rows *= t.dims()[s - 1];
        Matrix m(rows, t.size() / rows);
        m.data = t.entries();
        best = std::max(best, rank(t.field(), m));
    }
    return best;
}

std::size_t diagonal_length(std::size_t n, std::size_t m, std::size_t k) {
    require(n > 0 && m > 0 && k + 1 < n + m, Errc::DiagonalOutOfRange,
            "diagonal " + std::to_string(k) + " outside a " + std::to_string(n) + "x" + std::to_string(m) + " matrix");
    return std::min({k + 1, n, m, n + m - k - 1});
}

std::size_t diagonal_first_row(std::size_t n, std::size_t m, std::size_t k) {
    diagonal_length(n, m, k);
    return k >= m ? k - (m - 1) : 0;
}

std::vector<Fel> diagonal(const DenseTensor& m, std::size_t k) {
    require(m.order() == 2, Errc::ShapeMismatch, "diagonal of a non-matrix");
    const std::size_t n = m.dims()[0], cols = m.dims()[1];
    const std::size_t len = diagonal_length(n, cols, k);
    const std::size_t i0 = diagonal_first_row(n, cols, k);
    std::vector<Fel> out(len);
    for (std::size_t t = 0; t < len; ++t) out[t] = m(i0 + t, k - i0 - t);
    return out;
}

void set_diagonal(DenseTensor& m, std::size_t k, const std::vector<Fel>& values) {
    require(m.order() == 2, Errc::ShapeMismatch, "diagonal of a non-matrix");
    const std::size_t n = m.dims()[0], cols = m.dims()[1];
    const std::size_t len = diagonal_length(n, cols, k);
    require(values.size() == len, Errc::ShapeMismatch, "diagonal length mismatch");
    const std::size_t i0 = diagonal_first_row(n, cols, k);
    for (std::size_t t = 0; t < len; ++t) m(i0 + t, k - i0 - t) = values[t];
}

namespace {

std::vector<std::size_t> strides_of(const Dims& dims) {
    std::vector<std::size_t> s(dims.size(), 1);
    for (std::size_t j = dims.size(); j-- > 1;) s[j - 1] = s[j] * dims[j];
    return s;
}

// Calls fn(flat_offset, multi_index) for every entry in row-major order.
template <class Fn>
void for_each_index(const Dims& dims, Fn&& fn) {
    std::vector<std::size_t> idx(dims.size(), 0);
    const std::size_t total = volume(dims);
    for (std::size_t off = 0; off < total; ++off) {
        fn(off, idx);
        for (std::size_t j = dims.size(); j-- > 0;) {
            if (++idx[j] < dims[j]) break;
            idx[j] = 0;
        }
    }
}

}  // namespace

DenseTensor merge_variables(const DenseTensor& f, std::size_t axis_x, std::size_t axis_y, std::uint64_t stride) {
    const Dims& d = f.dims();
    require(axis_x < d.size() && axis_y < d.size() && axis_x != axis_y, Errc::InvalidArgument, "bad merge axes");
    require(stride >= d[axis_x], Errc::StrideTooSmall,
            "stride " + std::to_string(stride) + " below axis length " + std::to_string(d[axis_x]));
    Dims out_dims;
    for (std::size_t j = 0; j < d.size(); ++j) {
        if (j == axis_y) continue;
        out_dims.push_back(j == axis_x ? (d[axis_x] - 1) + stride * (d[axis_y] - 1) + 1 : d[j]);
    }
    DenseTensor out(f.field(), out_dims);
    const auto out_strides = strides_of(out_dims);
    for_each_index(d, [&](std::size_t off, const std::vector<std::size_t>& idx) {
        const Fel c = f.entries()[off];
        if (c.v == 0) return;
        std::size_t o = 0;
        std::size_t t = 0;
        for (std::size_t j = 0; j < d.size(); ++j) {
            if (j == axis_y) continue;
            const std::size_t e = j == axis_x ? idx[axis_x] + stride * idx[axis_y] : idx[j];
            o += e * out_strides[t++];
        }
        out.entries()[o] = f.field().add(out.entries()[o], c);
    });
    return out;
}

DenseTensor split_variables(const DenseTensor& g, std::size_t axis, std::uint64_t stride, std::size_t n_low,
                            std::size_t n_high) {
    const Dims& d = g.dims();
    require(axis < d.size(), Errc::InvalidArgument, "bad split axis");
    require(stride >= n_low, Errc::StrideTooSmall, "stride below low part length");
    Dims out_dims;
    for (std::size_t j = 0; j < d.size(); ++j) {
        if (j == axis) {
            out_dims.push_back(n_low);
            out_dims.push_back(n_high);
        } else {
            out_dims.push_back(d[j]);
        }
    }
    DenseTensor out(g.field(), out_dims);
    const auto out_strides = strides_of(out_dims);
    for_each_index(d, [&](std::size_t off, const std::vector<std::size_t>& idx) {
        const Fel c = g.entries()[off];
        if (c.v == 0) return;
        const std::size_t lo = idx[axis] % stride, hi = idx[axis] / stride;
        require(lo < n_low && hi < n_high, Errc::NotInImage,
                "coefficient at exponent " + std::to_string(idx[axis]) + " has no preimage");
        std::size_t o = 0;
        std::size_t t = 0;
        for (std::size_t j = 0; j < d.size(); ++j) {
            if (j == axis) {
                o += lo * out_strides[t++];
                o += hi * out_strides[t++];
            } else {
                o += idx[j] * out_strides[t++];
            }
        }
        out.entries()[o] = c;
    });
    return out;
}

DenseTensor permute_axes(const DenseTensor& t, const std::vector<std::size_t>& perm) {
    const Dims& d = t.dims();
    require(perm.size() == d.size(), Errc::InvalidArgument, "permutation arity mismatch");
    std::vector<bool> seen(d.size(), false);
    Dims out_dims(d.size());
    for (std::size_t j = 0; j < perm.size(); ++j) {
        require(perm[j] < d.size() && !seen[perm[j]], Errc::InvalidArgument, "not a permutation");
        seen[perm[j]] = true;
        out_dims[j] = d[perm[j]];
    }
    DenseTensor out(t.field(), out_dims);
    const auto in_strides = strides_of(d);
    for_each_index(out_dims, [&](std::size_t off, const std::vector<std::size_t>& idx) {
        std::size_t src = 0;
        for (std::size_t j = 0; j < idx.size(); ++j) src += idx[j] * in_strides[perm[j]];
        out.entries()[off] = t.entries()[src];
    });
    return out;
}

std::size_t count_nonzero(const DenseTensor& t) {
    return static_cast<std::size_t>(
        std::count_if(t.entries().begin(), t.entries().end(), [](Fel x) { return x.v != 0; }));
}

}  // namespace lowrank

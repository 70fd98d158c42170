#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lowrank/field.hpp"

namespace lowrank {

using Dims = std::vector<std::size_t>;

std::size_t volume(const Dims& dims);

// Row-major dense tensor; also the coefficient array of a polynomial with one axis per variable.
class DenseTensor {
public:
    DenseTensor(Field field, Dims dims);
    DenseTensor(Field field, Dims dims, std::vector<Fel> entries);

    static DenseTensor from_matrix(Field field, const Matrix& m);
    Matrix to_matrix() const;

    const Field& field() const { return field_; }
    const Dims& dims() const { return dims_; }
    std::size_t order() const { return dims_.size(); }
    std::size_t size() const { return entries_.size(); }
    const std::vector<Fel>& entries() const { return entries_; }
    std::vector<Fel>& entries() { return entries_; }

    std::size_t offset(std::span<const std::size_t> index) const;
    Fel at(std::span<const std::size_t> index) const { return entries_[offset(index)]; }
    Fel& at(std::span<const std::size_t> index) { return entries_[offset(index)]; }
    Fel operator()(std::size_t i, std::size_t j) const { return entries_[i * dims_[1] + j]; }
    Fel& operator()(std::size_t i, std::size_t j) { return entries_[i * dims_[1] + j]; }

    bool is_zero() const;
    friend bool operator==(const DenseTensor& a, const DenseTensor& b);

private:
    Field field_;
    Dims dims_;
    std::vector<Fel> entries_;
};

// Outer product of nonzero factor vectors.
class Rank1Tensor {
public:
    Rank1Tensor(Field field, std::vector<std::vector<Fel>> factors);

    const Field& field() const { return field_; }
    const std::vector<std::vector<Fel>>& factors() const { return factors_; }
    Dims dims() const;
    std::size_t order() const { return factors_.size(); }

private:
    Field field_;
    std::vector<std::vector<Fel>> factors_;
};

class LowRankTensor {
public:
    LowRankTensor(Field field, Dims dims);

    // Terms with an all-zero factor contribute nothing and are dropped.
    void add_term(std::vector<std::vector<Fel>> factors);
    void add_term(const Rank1Tensor& term);

    const Field& field() const { return field_; }
    const Dims& dims() const { return dims_; }
    const std::vector<Rank1Tensor>& terms() const { return terms_; }

private:
    Field field_;
    Dims dims_;
    std::vector<Rank1Tensor> terms_;
};

// Inner products accept a prime-field operand against an extension of it; the result lives in the larger field.
Fel inner_product(const DenseTensor& a, const DenseTensor& b);
Fel inner_product(const DenseTensor& a, const Rank1Tensor& b);
Fel inner_product(const Rank1Tensor& a, const DenseTensor& b);
Fel inner_product(const Rank1Tensor& a, const Rank1Tensor& b);
Fel inner_product(const LowRankTensor& a, const Rank1Tensor& b);
Fel inner_product(const LowRankTensor& a, const DenseTensor& b);

// f_T at the point (a_1, ..., a_d).
Fel eval_fT(const DenseTensor& t, const std::vector<std::vector<Fel>>& points);
// f_T at the moment vectors (1, x_j, x_j^2, ...).
Fel eval_fhat(const DenseTensor& t, const std::vector<Fel>& xs);

DenseTensor expand(const LowRankTensor& t);
DenseTensor expand(const Rank1Tensor& t);
std::size_t matrix_rank(const DenseTensor& m);
// Largest rank among the flattenings that group a prefix of axes against the rest.
std::size_t max_flattening_rank(const DenseTensor& t);

// Anti-diagonal {M_{i,j} : i + j = k} ordered by increasing i.
std::size_t diagonal_length(std::size_t n, std::size_t m, std::size_t k);
std::size_t diagonal_first_row(std::size_t n, std::size_t m, std::size_t k);
std::vector<Fel> diagonal(const DenseTensor& m, std::size_t k);
void set_diagonal(DenseTensor& m, std::size_t k, const std::vector<Fel>& values);

// Substitutes y -> x^stride for the pair (axis_x, axis_y); axis_y disappears.
DenseTensor merge_variables(const DenseTensor& f, std::size_t axis_x, std::size_t axis_y, std::uint64_t stride);
// Inverse of merge: exponent e splits into (e mod stride) on `axis` and (e div stride) on a new axis right after it.
DenseTensor split_variables(const DenseTensor& g, std::size_t axis, std::uint64_t stride, std::size_t n_low,
                            std::size_t n_high);
// Result axis t is input axis perm[t].
DenseTensor permute_axes(const DenseTensor& t, const std::vector<std::size_t>& perm);
std::size_t count_nonzero(const DenseTensor& t);

}  // namespace lowrank

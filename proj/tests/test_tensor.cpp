#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "lowrank/linalg.hpp"
#include "lowrank/tensor.hpp"
#include "support.hpp"

using namespace lowrank;
using namespace testsupport;

namespace {

std::vector<Fel> fels(std::initializer_list<std::uint64_t> xs) {
    std::vector<Fel> v;
    for (auto x : xs) v.push_back(Fel{x});
    return v;
}

DenseTensor identity_tensor(const Field& f, std::size_t n) { return DenseTensor::from_matrix(f, identity(f, n)); }

// Brute-force expansion of sum_I T(I) prod_j a_j[I_j].
Fel brute_fT(const DenseTensor& t, const std::vector<std::vector<Fel>>& pts) {
    const Field& f = t.field();
    Fel acc = f.zero();
    std::vector<std::size_t> idx(t.order(), 0);
    for (std::size_t off = 0; off < t.size(); ++off) {
        Fel term = t.entries()[off];
        for (std::size_t j = 0; j < t.order(); ++j) term = f.mul(term, pts[j][idx[j]]);
        acc = f.add(acc, term);
        for (std::size_t j = t.order(); j-- > 0;) {
            if (++idx[j] < t.dims()[j]) break;
            idx[j] = 0;
        }
    }
    return acc;
}

}  // namespace

TEST_SUITE("tensorcore") {

TEST_CASE("inner product examples") {
    const Field f5 = Field::prime(5);
    CHECK(inner_product(identity_tensor(f5, 2), identity_tensor(f5, 2)) == Fel{2});
    CHECK(inner_product(DenseTensor(f5, {2, 2}), identity_tensor(f5, 2)) == Fel{0});
    const Field f7 = Field::prime(7);
    const Rank1Tensor uv(f7, {fels({1, 2}), fels({3, 1})});
    const Rank1Tensor ab(f7, {fels({1, 1}), fels({1, 4})});
    CHECK(inner_product(uv, ab) == Fel{0});
    CHECK(inner_product(expand(uv), expand(ab)) == Fel{0});
    CHECK_THROWS_AS(Rank1Tensor(f7, {fels({0, 0}), fels({1, 1})}), Error);
}

TEST_CASE("rank-1 shortcut equals dense product exhaustively over GF(3), 2x2") {
    const Field f = Field::prime(3);
    std::vector<std::vector<Fel>> vecs;
    for (std::uint64_t a = 0; a < 3; ++a)
        for (std::uint64_t b = 0; b < 3; ++b)
            if (a || b) vecs.push_back(fels({a, b}));
    for (const auto& u : vecs)
        for (const auto& v : vecs)
            for (const auto& a : vecs)
                for (const auto& b : vecs) {
                    const Rank1Tensor x(f, {u, v}), y(f, {a, b});
                    const Fel dense = inner_product(expand(x), expand(y));
                    REQUIRE(inner_product(x, y) == dense);
                    REQUIRE(inner_product(x, expand(y)) == dense);
                    REQUIRE(inner_product(expand(x), y) == dense);
                }
}

TEST_CASE("low-rank inner products agree with expansion") {
    std::mt19937_64 rng(11);
    const Field f = Field::prime(13);
    for (int t = 0; t < 200; ++t) {
        const Dims dims{2 + rng() % 3, 2 + rng() % 3, 1 + rng() % 3};
        const LowRankTensor a = random_low_rank(f, dims, 1 + rng() % 3, rng);
        const LowRankTensor b = random_low_rank(f, dims, 1, rng);
        REQUIRE(inner_product(a, b.terms()[0]) == inner_product(expand(a), expand(b)));
        const DenseTensor c = random_tensor(f, dims, rng);
        REQUIRE(inner_product(a, c) == inner_product(expand(a), c));
    }
}

TEST_CASE("prime-field tensors pair with extension tensors") {
    const Field base = Field::prime(3);
    const Field big = Field::extension(base, 2);
    DenseTensor a(base, {2}, fels({1, 2}));
    DenseTensor b(big, {2}, fels({4, 5}));
    // 1*x + 2*(x+2) = 3x + 4 = 1 in coefficients (1, 0).
    CHECK(inner_product(a, b) == big.add(Fel{4}, big.mul(Fel{2}, Fel{5})));
}

TEST_CASE("polynomial evaluation") {
    const Field f5 = Field::prime(5);
    CHECK(eval_fhat(identity_tensor(f5, 2), fels({2, 3})) == Fel{2});
    CHECK(eval_fhat(DenseTensor(f5, {3, 3}), fels({2, 3})) == Fel{0});
    DenseTensor e00(f5, {2, 2});
    e00(0, 0) = Fel{1};
    CHECK(eval_fT(e00, {fels({1, 1}), fels({1, 1})}) == Fel{1});
    std::mt19937_64 rng(12);
    const Field f = Field::extension(Field::prime(2), 5);
    for (int t = 0; t < 200; ++t) {
        const Dims dims{1 + rng() % 4, 1 + rng() % 4, 1 + rng() % 4};
        const DenseTensor tt = random_tensor(f, dims, rng);
        std::vector<std::vector<Fel>> pts;
        std::vector<Fel> xs;
        std::vector<std::vector<Fel>> moments;
        for (std::size_t n : dims) {
            pts.push_back(random_vector(f, n, rng));
            xs.push_back(random_element(f, rng));
            std::vector<Fel> mv;
            for (std::size_t i = 0; i < n; ++i) mv.push_back(f.pow(xs.back(), i));
            moments.push_back(mv);
        }
        REQUIRE(eval_fT(tt, pts) == brute_fT(tt, pts));
        REQUIRE(eval_fhat(tt, xs) == brute_fT(tt, moments));
        std::vector<Fel> zeros(dims.size(), f.zero());
        REQUIRE(eval_fhat(tt, zeros) == tt.entries()[0]);
    }
}

TEST_CASE("expand and rank") {
    const Field f = Field::prime(7);
    CHECK(expand(LowRankTensor(f, {3, 4})).is_zero());
    std::mt19937_64 rng(13);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + rng() % 6, m = 1 + rng() % 6, r = rng() % 4;
        const DenseTensor mat = random_rank_matrix(f, n, m, r, rng);
        REQUIRE(matrix_rank(mat) <= r);
        REQUIRE(matrix_rank(mat) == rank(f, mat.to_matrix()));
    }
    LowRankTensor zero_term(f, {2, 2});
    zero_term.add_term({fels({0, 0}), fels({1, 1})});
    CHECK(zero_term.terms().empty());
}

TEST_CASE("flattening ranks bound tensor rank") {
    std::mt19937_64 rng(14);
    const Field f = Field::prime(11);
    for (int t = 0; t < 100; ++t) {
        const std::size_t r = rng() % 4;
        const DenseTensor x = expand(random_low_rank(f, {3, 3, 3, 2}, r, rng));
        REQUIRE(max_flattening_rank(x) <= r);
    }
    // Unit tensor e0(x)e0(x)e0 + e1(x)e1(x)e1 has flattening rank 2.
    DenseTensor w(f, {2, 2, 2});
    w.at(std::vector<std::size_t>{0, 0, 0}) = Fel{1};
    w.at(std::vector<std::size_t>{1, 1, 1}) = Fel{1};
    CHECK(max_flattening_rank(w) == 2);
}

TEST_CASE("diagonals") {
    CHECK(diagonal_length(3, 3, 2) == 3);
    CHECK(diagonal_length(3, 4, 4) == 2);
    CHECK(diagonal_length(4, 2, 2) == 2);
    const Field f = Field::prime(101);
    DenseTensor m(f, {3, 4});
    for (std::size_t i = 0; i < 12; ++i) m.entries()[i] = Fel{i + 1};
    CHECK(diagonal(m, 0) == fels({1}));
    CHECK(diagonal(m, 4) == fels({8, 11}));
    CHECK_THROWS_AS(diagonal(m, 6), Error);
    for (std::size_t n = 1; n <= 6; ++n) {
        for (std::size_t mm = 1; mm <= 6; ++mm) {
            DenseTensor x(f, {n, mm});
            for (std::size_t i = 0; i < n * mm; ++i) x.entries()[i] = Fel{i};
            std::vector<Fel> all;
            DenseTensor rebuilt(f, {n, mm});
            for (std::size_t k = 0; k + 1 < n + mm; ++k) {
                const auto d = diagonal(x, k);
                REQUIRE(d.size() == diagonal_length(n, mm, k));
                for (std::size_t t = 0; t < d.size(); ++t) {
                    const std::size_t i = diagonal_first_row(n, mm, k) + t;
                    REQUIRE(d[t] == x(i, k - i));
                }
                all.insert(all.end(), d.begin(), d.end());
                set_diagonal(rebuilt, k, d);
            }
            std::sort(all.begin(), all.end());
            REQUIRE(all == x.entries());
            REQUIRE(rebuilt == x);
        }
    }
}

TEST_CASE("merge and split") {
    const Field f = Field::prime(7);
    DenseTensor c(f, {1, 1}, fels({5}));
    const DenseTensor cm = merge_variables(c, 0, 1, 1);
    CHECK(cm.dims() == Dims{1});
    CHECK(cm.entries() == fels({5}));
    // x + y with n = 2 and stride 2 becomes x + x^2.
    DenseTensor xy(f, {2, 2}, fels({0, 1, 1, 0}));
    const DenseTensor merged = merge_variables(xy, 0, 1, 2);
    CHECK(merged.dims() == Dims{4});
    CHECK(merged.entries() == fels({0, 1, 1, 0}));
    DenseTensor x_plus_y_as_rows(f, {2, 2}, fels({0, 1, 1, 0}));
    CHECK(split_variables(merged, 0, 2, 2, 2) == x_plus_y_as_rows);
    CHECK_THROWS_AS(merge_variables(xy, 0, 1, 1), Error);

    std::mt19937_64 rng(15);
    for (int t = 0; t < 200; ++t) {
        const Dims dims{1 + rng() % 3, 1 + rng() % 3, 1 + rng() % 3};
        DenseTensor x = random_tensor(f, dims, rng);
        for (auto& e : x.entries())
            if (rng() % 3 == 0) e = Fel{0};
        const std::uint64_t stride = dims[1] + rng() % 3;
        const DenseTensor mg = merge_variables(x, 1, 2, stride);
        REQUIRE(count_nonzero(mg) == count_nonzero(x));
        REQUIRE(split_variables(mg, 1, stride, dims[1], dims[2]) == x);
        std::vector<std::size_t> perm{0, 1, 2};
        std::shuffle(perm.begin(), perm.end(), rng);
        const DenseTensor px = permute_axes(x, perm);
        REQUIRE(count_nonzero(px) == count_nonzero(x));
        for (std::size_t a = 0; a < 3; ++a) REQUIRE(px.dims()[a] == dims[perm[a]]);
        std::vector<std::size_t> inv(3);
        for (std::size_t a = 0; a < 3; ++a) inv[perm[a]] = a;
        REQUIRE(permute_axes(px, inv) == x);
    }
    // x^4 would need a high exponent of 2 with only two high slots.
    DenseTensor wide(f, {5}, fels({0, 0, 0, 0, 1}));
    CHECK_THROWS_AS(split_variables(wide, 0, 2, 2, 2), Error);
}

}  // TEST_SUITE

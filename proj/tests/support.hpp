#pragma once

#include <random>
#include <vector>

#include "lowrank/field.hpp"
#include "lowrank/tensor.hpp"

namespace testsupport {

using namespace lowrank;

inline Fel random_element(const Field& f, std::mt19937_64& rng) {
    return Fel{std::uniform_int_distribution<std::uint64_t>(0, f.size() - 1)(rng)};
}

inline Fel random_nonzero(const Field& f, std::mt19937_64& rng) {
    return Fel{std::uniform_int_distribution<std::uint64_t>(1, f.size() - 1)(rng)};
}

inline std::vector<Fel> random_vector(const Field& f, std::size_t n, std::mt19937_64& rng) {
    std::vector<Fel> v(n);
    for (auto& x : v) x = random_element(f, rng);
    return v;
}

inline std::vector<Fel> random_nonzero_vector(const Field& f, std::size_t n, std::mt19937_64& rng) {
    while (true) {
        auto v = random_vector(f, n, rng);
        for (Fel x : v)
            if (x.v != 0) return v;
    }
}

inline Matrix random_matrix(const Field& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    Matrix m(rows, cols);
    for (auto& x : m.data) x = random_element(f, rng);
    return m;
}

inline DenseTensor random_tensor(const Field& f, const Dims& dims, std::mt19937_64& rng) {
    return DenseTensor(f, dims, random_vector(f, volume(dims), rng));
}

// Sum of r random outer products, so rank <= r.
inline LowRankTensor random_low_rank(const Field& f, const Dims& dims, std::size_t r, std::mt19937_64& rng) {
    LowRankTensor t(f, dims);
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<std::vector<Fel>> factors;
        for (std::size_t n : dims) factors.push_back(random_nonzero_vector(f, n, rng));
        t.add_term(std::move(factors));
    }
    return t;
}

inline DenseTensor random_rank_matrix(const Field& f, std::size_t n, std::size_t m, std::size_t r,
                                      std::mt19937_64& rng) {
    return expand(random_low_rank(f, {n, m}, r, rng));
}

}  // namespace testsupport

#pragma once

#include <cstddef>
#include <cstdint>
#include <compare>
#include <vector>

namespace lowrank {

// Field element. Extension elements pack their coefficients as sum c_i p^i.
struct Fel {
    std::uint64_t v = 0;
    friend constexpr bool operator==(Fel, Fel) = default;
    friend constexpr auto operator<=>(Fel, Fel) = default;
};

// Row-major storage; arithmetic lives in linalg.hpp and takes a Field.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Fel> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    Fel& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    Fel operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    Fel* row(std::size_t i) { return data.data() + i * cols; }
    const Fel* row(std::size_t i) const { return data.data() + i * cols; }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

}  // namespace lowrank

#pragma once

#include <vector>

#include "lowrank/field.hpp"

namespace lowrank {

struct DualRS {
    Field field;
    std::vector<Fel> points;
    std::size_t s = 0;
    Matrix v;  // v(i, j) = points[j]^i, 2s rows
};

// Throws DuplicatePoints.
DualRS dual_rs(const Field& field, std::vector<Fel> points, std::size_t s);
// Points g^0, ..., g^{n-1}.
DualRS dual_rs(const Field& field, Fel g, std::size_t n, std::size_t s);
std::vector<Fel> syndrome(const DualRS& code, const std::vector<Fel>& x);

struct PronyTrace {
    std::size_t minor_size = 0;      // leading identity block of the reduced locator system
    std::size_t system_rank = 0;     // rank of the whole locator system
    std::vector<Fel> locator;        // coefficients c_0..c_R, lowest first
    std::vector<std::size_t> roots;  // indices k with locator(points[k]) = 0
};

// Recovers x from y = V x given advice S, when x has at most s - |S|/2 nonzeros outside S.
// Throws AdviceTooLarge or InconsistentSyndrome.
std::vector<Fel> pronys_method(const Field& field, std::size_t n, std::size_t s, std::vector<std::size_t> advice,
                               const std::vector<Fel>& y, const std::vector<Fel>& points,
                               PronyTrace* trace = nullptr);

}  // namespace lowrank

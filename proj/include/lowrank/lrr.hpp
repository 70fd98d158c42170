#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "lowrank/hitting.hpp"
#include "lowrank/tensor.hpp"

namespace lowrank {

// Row operation: row `target` += coeff * row `source`.
struct RowOp {
    std::size_t target = 0;
    std::size_t source = 0;
    Fel coeff;
};

// Leading nonzero entry of each row within the region i + j < k.
std::vector<std::pair<std::size_t, std::size_t>> lne_scan(const DenseTensor& m, std::size_t k);
// (<k)-upper-echelon: for each leading entry (i, j), M(i', j) = 0 for i < i' < k - j.
bool is_upper_echelon(const DenseTensor& m, std::size_t k);
// Row operations turning a (<k)-echelon P into a (<=k)-echelon one. Throws NotEchelon.
std::vector<RowOp> make_upper_echelon(const DenseTensor& p, std::size_t k);
Matrix row_ops_matrix(const Field& f, std::size_t n, const std::vector<RowOp>& ops);

// Measurements supported on single anti-diagonals. weights[k](t, s) is the coefficient of
// slot s of diagonal k (ordered by increasing row) in the t-th measurement of that diagonal.
struct DiagonalMeasurements {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<Matrix> weights;
    std::vector<std::vector<Fel>> syndromes;
};

// Returns the k-diagonal of the corrected matrix from its corrected syndromes and advice slots.
using DiagonalOracle = std::function<std::vector<Fel>(std::size_t k, const Matrix& weights,
                                                      const std::vector<Fel>& corrected,
                                                      const std::vector<std::size_t>& advice)>;

struct DiagonalEvent {
    std::size_t k;
    std::size_t leading_entries;  // leading nonzero entries of the reduced matrix below diagonal k
    const std::vector<std::size_t>& advice;
    const std::vector<Fel>& corrected_diagonal;
};

struct IterationState {
    std::size_t k;
    const Matrix& l;
    const DenseTensor& recovered;
    const DenseTensor& reduced;
    const std::vector<long>& lne_col;       // per row, -1 if none yet
    const std::vector<std::size_t>& lne_rows_before;
};

struct RecoveryObserver {
    std::function<void(const DiagonalEvent&)> on_diagonal;
    std::function<void(const IterationState&)> after_iteration;
};

DenseTensor low_rank_recovery(const Field& field, std::size_t r, const DiagonalMeasurements& meas,
                              const DiagonalOracle& oracle, const RecoveryObserver* observer = nullptr);

// Number of Vandermonde rows kept on diagonal k of the reduced family with parameter R.
std::size_t reduced_rows(std::size_t big_r, std::size_t n, std::size_t m, std::size_t k);
std::size_t reduced_family_size(std::size_t big_r, std::size_t n, std::size_t m);

// Syndromes <M, D'_{R}> in family order (k ascending, then l ascending) using generator g.
std::vector<Fel> measure_diagonal_family(const DenseTensor& m, Fel g, std::size_t big_r);
DiagonalMeasurements diagonal_family(const Field& field, Fel g, std::size_t n, std::size_t m, std::size_t big_r,
                                     const std::vector<Fel>& syndromes);
// Oracle for diagonal-family weights: full solve when the diagonal is short, else Prony with advice.
DiagonalOracle diagonal_oracle(const Field& field, Fel g, std::size_t n, std::size_t m);
DenseTensor recover_diagonal_family(const Field& field, Fel g, std::size_t n, std::size_t m, std::size_t r,
                                    std::size_t big_r, const std::vector<Fel>& syndromes,
                                    const RecoveryObserver* observer = nullptr);

// Rank-r recovery through D'_{2r}.
std::vector<Fel> measure_D(const DenseTensor& m, std::size_t r);
DenseTensor recover_from_D(const Field& field, std::size_t n, std::size_t m, std::size_t r,
                           const std::vector<Fel>& syndromes, const RecoveryObserver* observer = nullptr);
// <M, B'_{2r}> in B' family order to <M, D'_{2r}> in D' order. Throws InconsistentEvaluations.
std::vector<Fel> convert_B_to_D(const Field& field, std::size_t n, std::size_t m, std::size_t r,
                                const std::vector<Fel>& syndromes);

// Rank-r tensor recovery through the tensor family with parameter 2r.
std::vector<Fel> tensor_measure(const DenseTensor& t, std::size_t r);
DenseTensor tensor_recover(const Field& field, std::size_t d, std::size_t n, std::size_t r,
                           const std::vector<Fel>& syndromes);

}  // namespace lowrank

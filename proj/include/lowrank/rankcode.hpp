#pragma once

#include <optional>
#include <vector>

#include "lowrank/hitting.hpp"

namespace lowrank {

// Measurements that determine every tensor of rank <= r: Dprime, Bprime, or TensorB with
// parameter 2r, optionally built over GF(p^ext) and simulated back to the base field.
struct RecoveryScheme {
    Field field;
    Dims dims;
    std::size_t r = 0;
    Family family = Family::Dprime;
    Simulation sim = Simulation::None;
    unsigned ext = 1;
    Field work_field;
};

// ext = 0 picks the smallest workable degree when simulating.
RecoveryScheme make_scheme(const Field& field, const Dims& dims, std::size_t r, Family family,
                           Simulation sim = Simulation::None, unsigned ext = 0);
MeasurementSet scheme_measurements(const RecoveryScheme& scheme);
// Syndromes in the order of scheme_measurements; avoids materializing dense measurements when possible.
std::vector<Fel> scheme_measure(const RecoveryScheme& scheme, const DenseTensor& t);
// Throws promise violations when no tensor of rank <= r explains the syndromes.
DenseTensor scheme_recover(const RecoveryScheme& scheme, const std::vector<Fel>& syndromes);

struct RankMetricCode {
    Field field;
    Dims dims;
    std::size_t r = 0;
    Family family = Family::Dprime;
    Simulation sim = Simulation::None;
    unsigned ext = 1;  // extension degree the parity family was built over
    Field work_field;  // GF(p^ext) when simulating, else `field`
    MeasurementSet parity;
    Matrix parity_matrix;                      // |H| x prod(dims)
    Matrix basis;                              // reduced nullspace basis, one codeword per row
    std::vector<std::size_t> message_positions;  // free columns, in index order

    std::size_t dimension() const { return basis.rows; }
    std::size_t length() const { return volume(dims); }
};

// Parity checks D'_{2r}, B'_{2r}, or the tensor family with 2r. With sim != None the family is
// built over GF(p^ext) (ext = 0 picks the smallest workable degree) and simulated back.
RankMetricCode build_code(const Field& field, const Dims& dims, std::size_t r, Family family,
                          Simulation sim = Simulation::None, unsigned ext = 0);
// Code with an arbitrary parity family; decoding is unavailable for it.
RankMetricCode code_from_parity(MeasurementSet parity, std::size_t r);

DenseTensor encode(const RankMetricCode& code, const std::vector<Fel>& message);
std::vector<Fel> message_of(const RankMetricCode& code, const DenseTensor& codeword);
std::vector<Fel> code_syndrome(const RankMetricCode& code, const DenseTensor& word);

struct DecodeResult {
    DenseTensor codeword;
    DenseTensor error;
};

// Throws DecodeFailure when the recovered error fails re-verification.
DecodeResult decode(const RankMetricCode& code, const DenseTensor& received);

struct DistanceReport {
    std::optional<std::size_t> distance;  // empty for the zero code
    bool lower_bound = false;             // true when flattening ranks stand in for tensor rank
    std::uint64_t checked = 0;
};

// Enumerates one codeword per nonzero scalar class. Throws TooLarge past `cap` codewords.
DistanceReport min_distance_brute(const RankMetricCode& code, std::uint64_t cap = 1u << 22);

}  // namespace lowrank

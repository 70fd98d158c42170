#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lowrank/tensor.hpp"

namespace lowrank {

enum class Family { B, D, Dprime, Bprime, TensorB, SimImproper, SimProper, Naive };

std::string family_name(Family f);
Family parse_family(const std::string& name);

struct MeasurementMeta {
    std::size_t k = 0;
    std::vector<std::size_t> l;
};

using MeasurementTensor = std::variant<Rank1Tensor, DenseTensor>;

struct MeasurementSet {
    Field field;
    Dims dims;
    Family family;
    std::vector<MeasurementTensor> items;
    std::vector<MeasurementMeta> meta;

    std::size_t size() const { return items.size(); }
    DenseTensor dense(std::size_t i) const;
    bool is_rank1(std::size_t i) const { return std::holds_alternative<Rank1Tensor>(items[i]); }
    // |H| x prod(dims) matrix whose rows are the flattened measurements.
    Matrix stacked() const;
};

// Closed-form family sizes.
std::size_t size_B(std::size_t r, std::size_t n, std::size_t m);
std::size_t size_D(std::size_t r, std::size_t n, std::size_t m);
std::size_t size_D_prime(std::size_t r, std::size_t n, std::size_t m);
std::size_t size_B_prime(std::size_t r, std::size_t n, std::size_t m);
std::size_t size_tensor(std::size_t d, std::size_t n, std::size_t r);
unsigned ceil_log2(std::size_t d);

// Generator used by every family over `field`: the recorded one if its order suffices,
// else the first element of order >= min_order. Throws FieldTooSmall.
Fel family_generator(const Field& field, const BigInt& min_order);
// First `count` nonzero elements in canonical order. Throws FieldTooSmall.
std::vector<Fel> family_points(const Field& field, std::size_t count);

// r x n matrix with entries (g^i alpha)^j.
Matrix rank_preserver(const Field& field, Fel g, std::size_t r, std::size_t n, Fel alpha);

MeasurementSet hitting_set_B(const Field& field, std::size_t r, std::size_t n, std::size_t m);
MeasurementSet hitting_set_D(const Field& field, std::size_t r, std::size_t n, std::size_t m);
MeasurementSet hitting_set_D_prime(const Field& field, std::size_t r, std::size_t n, std::size_t m);
MeasurementSet hitting_set_B_prime(const Field& field, std::size_t r, std::size_t n, std::size_t m);

// Sum over the set bits j-1 of k of ls[j-1] * (n 2^b)^{floor(k / 2^j)}.
BigInt exponent_map(std::uint64_t n, unsigned b, std::uint64_t k, const std::vector<std::uint64_t>& ls);
MeasurementSet hitting_set_tensor(const Field& field, std::size_t d, std::size_t n, std::size_t r);

// Coordinate projections of every measurement onto the power basis of `field` over its prime field.
MeasurementSet simulate_improper(const MeasurementSet& h);
// Rank-1 lift through multiplication matrices; throws NotRank1.
MeasurementSet simulate_proper(const MeasurementSet& h);

enum class Simulation { None, Improper, Proper };
std::string simulation_name(Simulation s);
Simulation parse_simulation(const std::string& name);

// Smallest extension degree over the prime field `base` that makes `family` constructible.
unsigned minimal_extension_degree(const Field& base, Family family, const Dims& dims, std::size_t r);
// Builds `family` over GF(p^ext) and simulates it back to `base`. ext = 0 picks the minimal degree.
MeasurementSet small_field_hitting_set(const Field& base, Family family, const Dims& dims, std::size_t r,
                                       Simulation sim, unsigned ext = 0);
// Dispatches on family for matrix (d = 2) and tensor shapes over `field` itself.
MeasurementSet hitting_set(const Field& field, Family family, const Dims& dims, std::size_t r);

struct PitResult {
    bool nonzero = false;
    std::optional<std::size_t> witness;
};

PitResult pit_test(const DenseTensor& t, const MeasurementSet& h);
PitResult pit_test(const LowRankTensor& t, const MeasurementSet& h);
std::vector<Fel> measure(const DenseTensor& t, const MeasurementSet& h);
std::vector<Fel> measure(const LowRankTensor& t, const MeasurementSet& h);

MeasurementSet naive_set(const Field& field, const Dims& dims);
// Nonzero tensor orthogonal to every measurement; free variables set to (1, 0, ...). Throws NoNullspace.
DenseTensor hard_tensor(const MeasurementSet& h);

}  // namespace lowrank

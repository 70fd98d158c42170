#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lowrank/hitting.hpp"

namespace lowrank {

std::string format_dims(const Dims& dims);
Dims parse_dims(const std::string& text);

// Field header line, `tensor dims=...`, then entries row-major, one last-axis row per line.
void write_tensor(std::ostream& os, const DenseTensor& t);
// Accepts dense and low-rank files; low-rank ones are expanded.
DenseTensor read_tensor(std::istream& is);

void write_lowrank(std::ostream& os, const LowRankTensor& t);
LowRankTensor read_lowrank(std::istream& is);

void write_measurements(std::ostream& os, const MeasurementSet& h);
MeasurementSet read_measurements(std::istream& is);

struct SyndromeFile {
    Field field;
    Family family;
    std::size_t r = 0;
    Dims dims;
    Simulation sim = Simulation::None;
    unsigned ext = 1;
    std::vector<Fel> values;
};

void write_syndromes(std::ostream& os, const SyndromeFile& s);
SyndromeFile read_syndromes(std::istream& is);

}  // namespace lowrank

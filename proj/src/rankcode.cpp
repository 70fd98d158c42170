#include "lowrank/rankcode.hpp"

#include "lowrank/linalg.hpp"
#include "lowrank/lrr.hpp"

namespace lowrank {

namespace {

void finish(RankMetricCode& code) {
    code.parity_matrix = code.parity.stacked();
    code.basis = nullspace(code.field, code.parity_matrix);
    code.message_positions.clear();
    const Echelon e = rref(code.field, code.parity_matrix);
    std::vector<bool> pivot(code.length(), false);
    for (std::size_t c : e.pivots) pivot[c] = true;
    for (std::size_t c = 0; c < code.length(); ++c)
        if (!pivot[c]) code.message_positions.push_back(c);
}

}  // namespace

RecoveryScheme make_scheme(const Field& field, const Dims& dims, std::size_t r, Family family, Simulation sim,
                           unsigned ext) {
    require(r >= 1, Errc::InvalidArgument, "rank bound must be >= 1");
    require(family == Family::Dprime || family == Family::Bprime || family == Family::TensorB,
            Errc::InvalidArgument, "recovery uses Dprime, Bprime, or TensorB");
    if (family != Family::TensorB) {
        require(dims.size() == 2, Errc::ShapeMismatch, "matrix family needs two axes");
        require(2 * r <= std::min(dims[0], dims[1]), Errc::InvalidArgument,
                "need 2r <= min(n, m) for matrix recovery");
    }
    require(!(sim == Simulation::Proper && family == Family::Dprime), Errc::NotRank1,
            "proper simulation needs a rank-1 family");
    RecoveryScheme s{field, dims, r, family, sim, 1, field};
    if (sim != Simulation::None) {
        require(field.is_prime_field(), Errc::InvalidArgument, "simulation needs a prime base field");
        s.ext = ext ? ext : minimal_extension_degree(field, family, dims, 2 * r);
        s.work_field = s.ext == 1 ? field : Field::extension(field, s.ext);
    }
    return s;
}

MeasurementSet scheme_measurements(const RecoveryScheme& s) {
    const MeasurementSet h = hitting_set(s.work_field, s.family, s.dims, 2 * s.r);
    switch (s.sim) {
        case Simulation::None: return h;
        case Simulation::Improper: return simulate_improper(h);
        case Simulation::Proper: return simulate_proper(h);
    }
    return h;
}

std::vector<Fel> scheme_measure(const RecoveryScheme& s, const DenseTensor& t) {
    require(t.dims() == s.dims, Errc::ShapeMismatch, "tensor shape does not match the scheme");
    require(t.field().same_as(s.field), Errc::FieldMismatch, "tensor field does not match the scheme");
    if (s.sim == Simulation::None && s.family == Family::Dprime) return measure_D(t, s.r);
    if (s.sim == Simulation::None && s.family == Family::TensorB) return tensor_measure(t, s.r);
    return measure(t, scheme_measurements(s));
}

RankMetricCode build_code(const Field& field, const Dims& dims, std::size_t r, Family family, Simulation sim,
                          unsigned ext) {
    require(r >= 1, Errc::InvalidArgument, "codes need r >= 1");
    const RecoveryScheme s = make_scheme(field, dims, r, family, sim, ext);
    RankMetricCode code{field, dims, r, family, sim, s.ext, s.work_field, scheme_measurements(s), {}, {}, {}};
    finish(code);
    return code;
}

RankMetricCode code_from_parity(MeasurementSet parity, std::size_t r) {
    const Field f = parity.field;
    RankMetricCode code{f, parity.dims, r, parity.family, Simulation::None, 1, f, std::move(parity), {}, {}, {}};
    finish(code);
    return code;
}

DenseTensor encode(const RankMetricCode& code, const std::vector<Fel>& message) {
    require(message.size() == code.dimension(), Errc::LengthMismatch,
            "message length " + std::to_string(message.size()) + " != code dimension " +
                std::to_string(code.dimension()));
    const Field& f = code.field;
    std::vector<Fel> word(code.length(), f.zero());
    for (std::size_t t = 0; t < message.size(); ++t) {
        if (message[t].v == 0) continue;
        for (std::size_t c = 0; c < word.size(); ++c) word[c] = f.add(word[c], f.mul(message[t], code.basis(t, c)));
    }
    return DenseTensor(f, code.dims, std::move(word));
}

std::vector<Fel> message_of(const RankMetricCode& code, const DenseTensor& codeword) {
    require(codeword.dims() == code.dims, Errc::LengthMismatch, "word shape does not match the code");
    std::vector<Fel> msg;
    for (std::size_t c : code.message_positions) msg.push_back(codeword.entries()[c]);
    return msg;
}

std::vector<Fel> code_syndrome(const RankMetricCode& code, const DenseTensor& word) {
    require(word.dims() == code.dims, Errc::LengthMismatch, "word shape does not match the code");
    return apply(code.field, code.parity_matrix, word.entries());
}

namespace {

DenseTensor recover_over(const RecoveryScheme& s, const Field& big, const std::vector<Fel>& syn) {
    switch (s.family) {
        case Family::Dprime:
            return recover_from_D(big, s.dims[0], s.dims[1], s.r, syn);
        case Family::Bprime:
            return recover_from_D(big, s.dims[0], s.dims[1], s.r, convert_B_to_D(big, s.dims[0], s.dims[1], s.r, syn));
        case Family::TensorB:
            return tensor_recover(big, s.dims.size(), s.dims[0], s.r, syn);
        default:
            fail(Errc::InvalidArgument, "no recovery for family " + family_name(s.family));
    }
}

RecoveryScheme scheme_of(const RankMetricCode& code) {
    return {code.field, code.dims, code.r, code.family, code.sim, code.ext, code.work_field};
}

// Rebuilds the syndromes of the unsimulated family over the extension.
std::vector<Fel> lift_syndromes(const RecoveryScheme& code, const Field& big, const std::vector<Fel>& syn) {
    const unsigned k = big.degree();
    std::size_t group = k;
    if (code.sim == Simulation::Proper) {
        group = 1;
        for (std::size_t j = 0; j < code.dims.size(); ++j) group *= k;
    }
    require(syn.size() % group == 0, Errc::LengthMismatch, "syndrome count does not match the simulation");
    const std::size_t inner = group / k;
    std::vector<Fel> out;
    std::vector<std::uint64_t> coeffs(k);
    const Field& f = code.field;
    for (std::size_t base = 0; base < syn.size(); base += group) {
        for (unsigned l = 0; l < k; ++l) {
            Fel acc = f.zero();
            for (std::size_t t = 0; t < inner; ++t) acc = f.add(acc, syn[base + l * inner + t]);
            coeffs[l] = acc.v;
        }
        out.push_back(big.from_coeffs(coeffs));
    }
    return out;
}

}  // namespace

DenseTensor scheme_recover(const RecoveryScheme& s, const std::vector<Fel>& syn) {
    if (s.sim == Simulation::None) return recover_over(s, s.field, syn);
    const DenseTensor lifted = recover_over(s, s.work_field, lift_syndromes(s, s.work_field, syn));
    DenseTensor out(s.field, s.dims);
    for (std::size_t i = 0; i < lifted.size(); ++i) {
        const Fel x = lifted.entries()[i];
        require(x.v < s.field.size(), Errc::InconsistentSyndrome, "recovered tensor leaves the base field");
        out.entries()[i] = x;
    }
    return out;
}

DecodeResult decode(const RankMetricCode& code, const DenseTensor& received) {
    const Field& f = code.field;
    const std::vector<Fel> syn = code_syndrome(code, received);
    DenseTensor error(f, code.dims);
    try {
        error = scheme_recover(scheme_of(code), syn);
    } catch (const Error& e) {
        if (is_promise_violation(e.code()) || e.code() == Errc::NotInImage) fail(Errc::DecodeFailure, e.what());
        throw;
    }
    require(apply(f, code.parity_matrix, error.entries()) == syn, Errc::DecodeFailure,
            "recovered error does not reproduce the syndrome");
    const std::size_t err_rank = code.dims.size() == 2 ? matrix_rank(error) : max_flattening_rank(error);
    require(err_rank <= code.r, Errc::DecodeFailure,
            "recovered error has rank " + std::to_string(err_rank) + " > " + std::to_string(code.r));
    DenseTensor word(f, code.dims);
    for (std::size_t i = 0; i < word.size(); ++i)
        word.entries()[i] = f.sub(received.entries()[i], error.entries()[i]);
    return {std::move(word), std::move(error)};
}

DistanceReport min_distance_brute(const RankMetricCode& code, std::uint64_t cap) {
    DistanceReport rep;
    rep.lower_bound = code.dims.size() > 2;
    const std::size_t dim = code.dimension();
    if (dim == 0) return rep;
    const std::uint64_t q = code.field.size();
    BigInt total = (boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(dim)) - 1) / (q - 1);
    require(total <= cap, Errc::TooLarge, "enumeration of " + total.str() + " codewords exceeds cap");
    std::vector<Fel> msg(dim);
    for (std::size_t lead = 0; lead < dim; ++lead) {
        std::fill(msg.begin(), msg.end(), code.field.zero());
        msg[lead] = code.field.one();
        const std::size_t tail = dim - 1 - lead;
        std::uint64_t combos = 1;
        for (std::size_t i = 0; i < tail; ++i) combos *= q;
        for (std::uint64_t c = 0; c < combos; ++c) {
            std::uint64_t rest = c;
            for (std::size_t i = dim; i-- > lead + 1;) {
                msg[i] = code.field.element(rest % q);
                rest /= q;
            }
            const DenseTensor word = encode(code, msg);
            const std::size_t rk = code.dims.size() == 2 ? matrix_rank(word) : max_flattening_rank(word);
            ++rep.checked;
            if (!rep.distance || rk < *rep.distance) rep.distance = rk;
        }
    }
    return rep;
}

}  // namespace lowrank

#include "doctest.h"
#include "lowrank/linalg.hpp"
#include "lowrank/rankcode.hpp"
#include "support.hpp"

using namespace lowrank;
using namespace testsupport;

namespace {

bool zero_vector(const std::vector<Fel>& v) {
    return std::all_of(v.begin(), v.end(), [](Fel x) { return x.v == 0; });
}

DenseTensor plus(const DenseTensor& a, const DenseTensor& b) {
    DenseTensor out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.entries()[i] = a.field().add(a.entries()[i], b.entries()[i]);
    return out;
}

}  // namespace

TEST_SUITE("rankcode") {

TEST_CASE("dimensions") {
    CHECK(build_code(Field::prime(13), {4, 4}, 1, Family::Dprime).dimension() == 4);
    CHECK(build_code(Field::prime(7), {3, 3}, 1, Family::Dprime).dimension() == 1);
    CHECK(build_code(Field::prime(13), {4, 4}, 1, Family::Bprime).dimension() == 4);
    for (std::size_t n : {4u, 6u, 8u})
        for (std::size_t r = 1; 2 * r <= n; ++r) {
            const auto code = build_code(Field::prime(1000003), {n, n}, r, Family::Dprime);
            REQUIRE(code.dimension() == n * n - 2 * (2 * n - 2 * r) * r);
            REQUIRE(code.dimension() + rank(code.field, code.parity_matrix) == n * n);
        }
    try {
        build_code(Field::prime(7), {3, 3}, 0, Family::Dprime);
        FAIL("r = 0 accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidArgument);
    }
    CHECK_THROWS_AS(build_code(Field::prime(7), {3, 3}, 1, Family::B), Error);
}

TEST_CASE("simulated parity counts scale with the extension degree") {
    const Field gf2 = Field::prime(2);
    for (unsigned ext : {3u, 4u}) {
        const auto code = build_code(gf2, {4, 4}, 1, Family::Dprime, Simulation::Improper, ext);
        CHECK(code.parity.size() == 2 * (4 + 4 - 2) * 1 * ext);
        CHECK(code.ext == ext);
    }
    const auto proper = build_code(gf2, {4, 4}, 1, Family::Bprime, Simulation::Proper, 3);
    CHECK(proper.parity.size() == 2 * (4 + 4 - 2) * 1 * 9);
}

TEST_CASE("encoding is systematic and lands in the code") {
    std::mt19937_64 rng(51);
    const auto code = build_code(Field::prime(13), {5, 5}, 1, Family::Dprime);
    const Field& f = code.field;
    CHECK(encode(code, std::vector<Fel>(code.dimension(), f.zero())).is_zero());
    for (std::size_t i = 0; i < code.dimension(); ++i) {
        std::vector<Fel> unit(code.dimension(), f.zero());
        unit[i] = f.one();
        REQUIRE(encode(code, unit).entries() == std::vector<Fel>(code.basis.row(i), code.basis.row(i) + code.length()));
    }
    for (int t = 0; t < 300; ++t) {
        const auto msg = random_vector(f, code.dimension(), rng);
        const DenseTensor word = encode(code, msg);
        REQUIRE(zero_vector(code_syndrome(code, word)));
        REQUIRE(zero_vector(measure(word, code.parity)));
        REQUIRE(message_of(code, word) == msg);
    }
    CHECK_THROWS_AS(encode(code, std::vector<Fel>(code.dimension() + 1, f.zero())), Error);
}

TEST_CASE("syndrome depends only on the error") {
    std::mt19937_64 rng(52);
    const auto code = build_code(Field::prime(7), {3, 3}, 1, Family::Dprime);
    const Field& f = code.field;
    for (std::uint64_t a = 0; a < 7; ++a) {
        const DenseTensor word = encode(code, {Fel{a}});
        for (int t = 0; t < 50; ++t) {
            const DenseTensor e = random_tensor(f, {3, 3}, rng);
            REQUIRE(code_syndrome(code, plus(word, e)) == code_syndrome(code, e));
        }
    }
}

TEST_CASE("decoding planted errors") {
    std::mt19937_64 rng(53);
    for (Family fam : {Family::Dprime, Family::Bprime}) {
        for (std::size_t r : {1u, 2u}) {
            const auto code = build_code(Field::prime(13), {6, 6}, r, fam);
            const Field& f = code.field;
            for (int t = 0; t < 100; ++t) {
                const DenseTensor word = encode(code, random_vector(f, code.dimension(), rng));
                const DenseTensor err = random_rank_matrix(f, 6, 6, 1 + rng() % r, rng);
                const DecodeResult res = decode(code, plus(word, err));
                REQUIRE(res.codeword == word);
                REQUIRE(res.error == err);
            }
            const DenseTensor word = encode(code, random_vector(f, code.dimension(), rng));
            const DecodeResult clean = decode(code, word);
            CHECK(clean.codeword == word);
            CHECK(clean.error.is_zero());
        }
    }
}

TEST_CASE("decoding a simulated small-field code") {
    std::mt19937_64 rng(54);
    for (Simulation sim : {Simulation::Improper, Simulation::Proper}) {
        const auto code = build_code(Field::prime(2), {5, 5}, 1, Family::Bprime, sim);
        const Field& f = code.field;
        for (int t = 0; t < 100; ++t) {
            const DenseTensor word = encode(code, random_vector(f, code.dimension(), rng));
            const DenseTensor err = random_rank_matrix(f, 5, 5, 1, rng);
            const DecodeResult res = decode(code, plus(word, err));
            REQUIRE(res.codeword == word);
            REQUIRE(res.error == err);
        }
    }
}

TEST_CASE("decoding a tensor code") {
    std::mt19937_64 rng(55);
    const auto code = build_code(Field::prime(1000003), {3, 3, 3}, 1, Family::TensorB);
    const Field& f = code.field;
    for (int t = 0; t < 20; ++t) {
        const DenseTensor word = encode(code, random_vector(f, code.dimension(), rng));
        const DenseTensor err = expand(random_low_rank(f, {3, 3, 3}, 1, rng));
        const DecodeResult res = decode(code, plus(word, err));
        REQUIRE(res.codeword == word);
        REQUIRE(res.error == err);
    }
}

TEST_CASE("errors beyond the radius are never silently accepted") {
    std::mt19937_64 rng(56);
    const auto code = build_code(Field::prime(5), {3, 3}, 1, Family::Dprime);
    const Field& f = code.field;
    std::size_t failures = 0;
    for (int t = 0; t < 3000; ++t) {
        const DenseTensor word = encode(code, random_vector(f, code.dimension(), rng));
        const DenseTensor err = random_rank_matrix(f, 3, 3, 2 + rng() % 2, rng);
        const DenseTensor received = plus(word, err);
        try {
            const DecodeResult res = decode(code, received);
            // An accepted answer must be a codeword within the radius of what was received.
            REQUIRE(zero_vector(code_syndrome(code, res.codeword)));
            REQUIRE(matrix_rank(res.error) <= code.r);
            REQUIRE(plus(res.codeword, res.error) == received);
        } catch (const Error& e) {
            REQUIRE(e.code() == Errc::DecodeFailure);
            ++failures;
        }
    }
    CHECK(failures > 0);
}

TEST_CASE("recovery schemes measure in family order and recover") {
    std::mt19937_64 rng(57);
    struct Case {
        Field field;
        Dims dims;
        std::size_t r;
        Family family;
        Simulation sim;
    };
    const Field gf2 = Field::prime(2), big = Field::prime(1000003), f17 = Field::prime(17);
    for (const Case& c : {Case{f17, {6, 7}, 2, Family::Dprime, Simulation::None},
                          Case{f17, {6, 7}, 2, Family::Bprime, Simulation::None},
                          Case{big, {3, 3, 3}, 1, Family::TensorB, Simulation::None},
                          Case{gf2, {4, 5}, 1, Family::Dprime, Simulation::Improper},
                          Case{gf2, {4, 5}, 1, Family::Bprime, Simulation::Proper},
                          Case{gf2, {4, 4}, 2, Family::Bprime, Simulation::Proper}}) {
        const RecoveryScheme s = make_scheme(c.field, c.dims, c.r, c.family, c.sim);
        const MeasurementSet h = scheme_measurements(s);
        for (int t = 0; t < 10; ++t) {
            const DenseTensor x = expand(random_low_rank(c.field, c.dims, c.r, rng));
            const auto syn = scheme_measure(s, x);
            REQUIRE(syn == measure(x, h));
            REQUIRE(scheme_recover(s, syn) == x);
        }
    }
    CHECK_THROWS_AS(make_scheme(f17, {3, 3}, 2, Family::Dprime), Error);
    CHECK_THROWS_AS(make_scheme(f17, {3, 3}, 1, Family::D), Error);
    CHECK_THROWS_AS(make_scheme(gf2, {4, 4}, 1, Family::Dprime, Simulation::Proper), Error);
}

TEST_CASE("brute-force distance") {
    const auto code = build_code(Field::prime(7), {3, 3}, 1, Family::Dprime);
    const DistanceReport rep = min_distance_brute(code);
    CHECK(rep.checked == 1);
    REQUIRE(rep.distance.has_value());
    CHECK(*rep.distance == 3);
    // Every scalar multiple has the same rank as its representative.
    for (std::uint64_t a = 1; a < 7; ++a) CHECK(matrix_rank(encode(code, {Fel{a}})) == 3);

    const auto small = build_code(Field::prime(5), {4, 4}, 1, Family::Dprime);
    const DistanceReport r2 = min_distance_brute(small);
    CHECK(r2.checked == (625 - 1) / 4);
    CHECK(*r2.distance >= 3);

    const Field f = Field::prime(3);
    const auto full = code_from_parity(MeasurementSet{f, {2, 2}, Family::Naive, {}, {}}, 1);
    CHECK(full.dimension() == 4);
    CHECK(min_distance_brute(full).distance == std::size_t{1});
    const auto none = code_from_parity(naive_set(f, {2, 2}), 1);
    CHECK(none.dimension() == 0);
    CHECK_FALSE(min_distance_brute(none).distance.has_value());
    CHECK_THROWS_AS(min_distance_brute(small, 10), Error);
    const auto cube = code_from_parity(MeasurementSet{f, {2, 2, 2}, Family::Naive, {}, {}}, 1);
    const DistanceReport r3 = min_distance_brute(cube);
    CHECK(r3.lower_bound);
    CHECK(r3.checked == (6561 - 1) / 2);
    CHECK(r3.distance == std::size_t{1});
}

}  // TEST_SUITE

#include <set>

#include "doctest.h"
#include "lowrank/field.hpp"
#include "lowrank/linalg.hpp"
#include "support.hpp"

using namespace lowrank;
using testsupport::random_element;
using testsupport::random_matrix;
using testsupport::random_nonzero;

namespace {

using Poly = std::vector<std::uint64_t>;

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return r;
}

std::vector<Poly> monic_of_degree(std::uint64_t p, unsigned k) {
    std::vector<Poly> out;
    std::uint64_t count = 1;
    for (unsigned i = 0; i < k; ++i) count *= p;
    for (std::uint64_t t = 0; t < count; ++t) {
        Poly f(k + 1, 0);
        f[k] = 1;
        std::uint64_t rest = t;
        for (unsigned i = 0; i < k; ++i) {
            f[i] = rest % p;
            rest /= p;
        }
        out.push_back(f);
    }
    return out;
}

// Least irreducible monic polynomial of degree k, tuples compared from c0 upward,
// by striking out every product of two lower-degree monic polynomials.
Poly brute_least_irreducible(std::uint64_t p, unsigned k) {
    std::set<Poly> reducible;
    for (unsigned a = 1; a < k; ++a)
        for (const auto& f : monic_of_degree(p, a))
            for (const auto& g : monic_of_degree(p, k - a)) reducible.insert(poly_mul(f, g, p));
    auto all = monic_of_degree(p, k);
    std::sort(all.begin(), all.end());  // lexicographic on (c0, c1, ...)
    for (const auto& f : all)
        if (!reducible.count(f)) return f;
    return {};
}

std::uint64_t brute_order(const Field& f, Fel a) {
    Fel x = a;
    std::uint64_t t = 1;
    while (x != f.one()) {
        x = f.mul(x, a);
        ++t;
    }
    return t;
}

// Multiplication by schoolbook polynomial arithmetic modulo the field modulus.
Fel reference_mul(const Field& f, Fel a, Fel b) {
    const auto p = f.characteristic();
    const auto k = f.degree();
    auto x = f.coeffs(a), y = f.coeffs(b);
    Poly r = poly_mul(x, y, p);
    const auto& mod = f.modulus();
    for (std::size_t t = r.size(); t-- > k;) {
        const auto c = r[t];
        for (unsigned i = 0; i <= k; ++i) r[t - k + i] = (r[t - k + i] + (p - c) * mod[i]) % p;
    }
    r.resize(k);
    return f.from_coeffs(r);
}

Matrix submatrix_cols(const Matrix& a, const std::vector<std::size_t>& cols) {
    Matrix s(a.rows, cols.size());
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = a(i, cols[j]);
    return s;
}

}  // namespace

TEST_SUITE("field") {

TEST_CASE("prime fields reject composite characteristics") {
    CHECK_NOTHROW(Field::prime(2));
    CHECK_NOTHROW(Field::prime(65537));
    CHECK_NOTHROW(Field::prime(2305843009213693951ull));
    for (std::uint64_t c : {0ull, 1ull, 4ull, 9ull, 91ull, 65535ull, 4294967297ull}) {
        try {
            Field::prime(c);
            FAIL("accepted composite " << c);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::CompositeCharacteristic);
        }
    }
}

TEST_CASE("primality agrees with trial division below 10^5") {
    for (std::uint64_t n = 0; n < 100000; ++n) {
        bool prime = n >= 2;
        for (std::uint64_t d = 2; d * d <= n && prime; ++d) prime = n % d != 0;
        REQUIRE(is_prime(n) == prime);
    }
}

TEST_CASE("extension moduli") {
    CHECK(Field::extension(Field::prime(2), 2).modulus() == Poly{1, 1, 1});
    CHECK(Field::extension(Field::prime(3), 2).modulus() == Poly{1, 0, 1});
    CHECK_THROWS_AS(Field::extension(Field::prime(2), 1), Error);
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
        for (unsigned k = 2; k <= (p == 2 ? 6u : p == 3 ? 4u : 3u); ++k) {
            CAPTURE(p);
            CAPTURE(k);
            CHECK(Field::extension(Field::prime(p), k).modulus() == brute_least_irreducible(p, k));
        }
    }
}

TEST_CASE("extension multiplication matches polynomial arithmetic") {
    std::mt19937_64 rng(1);
    for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 8}, {3, 5}, {13, 2}, {2, 24}, {13, 14}, {7, 9}}) {
        const Field f = Field::extension(Field::prime(p), k);
        for (int t = 0; t < 2000; ++t) {
            const Fel a = random_element(f, rng), b = random_element(f, rng);
            REQUIRE(f.mul(a, b) == reference_mul(f, a, b));
        }
    }
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(2);
    std::vector<Field> fields{Field::prime(2),        Field::prime(13),
                              Field::prime(65537),    Field::prime(2305843009213693951ull),
                              Field::extension(Field::prime(2), 8), Field::extension(Field::prime(3), 5),
                              Field::extension(Field::prime(13), 2), Field::extension(Field::prime(2), 30),
                              Field::extension(Field::prime(13), 14)};
    for (const Field& f : fields) {
        CAPTURE(f.header());
        for (int t = 0; t < 10000; ++t) {
            const Fel a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
            REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
            REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            REQUIRE(f.mul(a, b) == f.mul(b, a));
            REQUIRE(f.add(a, f.neg(a)) == f.zero());
            REQUIRE(f.sub(a, b) == f.add(a, f.neg(b)));
            if (a.v != 0) REQUIRE(f.mul(a, f.inv(a)) == f.one());
        }
    }
}

TEST_CASE("pow agrees with repeated multiplication and big exponents reduce") {
    std::mt19937_64 rng(3);
    const Field f = Field::extension(Field::prime(3), 4);
    for (int t = 0; t < 200; ++t) {
        const Fel a = random_element(f, rng);
        Fel x = f.one();
        for (std::uint64_t e = 0; e < 200; ++e) {
            REQUIRE(f.pow(a, e) == x);
            x = f.mul(x, a);
        }
        const BigInt big = BigInt(1) << 200;
        const std::uint64_t reduced = (big % (f.size() - 1)).convert_to<std::uint64_t>();
        if (a.v != 0) REQUIRE(f.pow(a, big) == f.pow(a, reduced));
    }
}

TEST_CASE("find_element_of_order") {
    CHECK(Field::prime(5).find_element_of_order(4) == Fel{2});
    CHECK(Field::prime(7).find_element_of_order(6) == Fel{3});
    CHECK(Field::prime(13).find_element_of_order(1) == Fel{1});
    CHECK(Field::extension(Field::prime(2), 4).find_element_of_order(1) == Fel{1});
    for (const Field& f : {Field::prime(31), Field::extension(Field::prime(2), 6), Field::extension(Field::prime(3), 3)}) {
        for (std::uint64_t want = 1; want < f.size(); ++want) {
            const Fel g = f.find_element_of_order(want);
            REQUIRE(g == f.find_element_of_order(want));
            REQUIRE(brute_order(f, g) >= want);
            // Nothing earlier in the enumeration qualifies.
            for (std::uint64_t v = 1; v < g.v; ++v) REQUIRE(brute_order(f, Fel{v}) < want);
        }
        try {
            f.find_element_of_order(f.size());
            FAIL("expected OrderUnreachable");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::OrderUnreachable);
        }
    }
}

TEST_CASE("multiplicative order matches brute force") {
    for (const Field& f : {Field::prime(97), Field::extension(Field::prime(5), 2), Field::extension(Field::prime(2), 7)}) {
        for (std::uint64_t v = 1; v < f.size(); ++v) REQUIRE(f.multiplicative_order(Fel{v}) == brute_order(f, Fel{v}));
    }
}

TEST_CASE("generator recording") {
    const Field f = Field::prime(13).with_generator(6);
    REQUIRE(f.generator().has_value());
    CHECK(f.generator_order() >= 6);
    CHECK(f.generator_for(BigInt(6)) == *f.generator());
    CHECK(f.generator_for(BigInt(12)) == Field::prime(13).find_element_of_order(12));
}

TEST_CASE("embed_as_matrix") {
    const Field gf4 = Field::extension(Field::prime(2), 2);
    Matrix expect(2, 2);
    expect.data = {Fel{0}, Fel{1}, Fel{1}, Fel{1}};
    CHECK(gf4.embed_as_matrix(Fel{2}) == expect);
    CHECK(gf4.embed_as_matrix(gf4.zero()) == Matrix(2, 2));
    const Field base2 = Field::prime(2);
    CHECK(gf4.embed_as_matrix(gf4.one()) == identity(base2, 2));
    for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}, {2, 5}, {7, 2}, {2, 6}}) {
        const Field f = Field::extension(Field::prime(p), k);
        const Field base = Field::prime(p);
        std::vector<Matrix> mats;
        for (std::uint64_t v = 0; v < f.size(); ++v) mats.push_back(f.embed_as_matrix(Fel{v}));
        for (std::uint64_t a = 0; a < f.size(); ++a) {
            // The first column is the element itself.
            for (unsigned i = 0; i < k; ++i) REQUIRE(mats[a](i, 0).v == f.coeff(Fel{a}, i));
            for (std::uint64_t b = 0; b < f.size(); ++b) {
                REQUIRE(mats[f.mul(Fel{a}, Fel{b}).v] == multiply(base, mats[a], mats[b]));
                REQUIRE(mats[f.add(Fel{a}, Fel{b}).v] == add(base, mats[a], mats[b]));
            }
        }
    }
}

TEST_CASE("header and element serialization round-trip") {
    for (const Field& f : {Field::prime(7), Field::extension(Field::prime(2), 5), Field::extension(Field::prime(13), 3)}) {
        const Field back = Field::parse_header(f.header());
        CHECK(back.same_as(f));
        for (std::uint64_t v = 0; v < std::min<std::uint64_t>(f.size(), 500); ++v) CHECK(f.parse(f.format(Fel{v})) == Fel{v});
    }
    CHECK(Field::prime(7).header() == "field p=7 k=1");
    CHECK(Field::extension(Field::prime(2), 2).header() == "field p=2 k=2 mod=1,1,1");
    CHECK(Field::extension(Field::prime(3), 2).format(Fel{5}) == "2,1");
    CHECK_THROWS_AS(Field::parse_header("field p=8 k=1"), Error);
    CHECK_THROWS_AS(Field::parse_header("field p=2 k=2 mod=1,0,1"), Error);
    CHECK_THROWS_AS(Field::parse_header("fields p=2"), Error);
}

}  // TEST_SUITE

TEST_SUITE("linalg") {

TEST_CASE("Cauchy-Binet identity for det(AB)") {
    std::mt19937_64 rng(5);
    const Field f = Field::prime(101);
    for (int t = 0; t < 200; ++t) {
        const std::size_t m = 1 + rng() % 5;
        const std::size_t n = 1 + rng() % m;
        const Matrix a = random_matrix(f, n, m, rng), b = random_matrix(f, m, n, rng);
        Fel sum = f.zero();
        std::vector<std::size_t> pick(n);
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcount(mask)) != n) continue;
            std::size_t c = 0;
            for (std::size_t j = 0; j < m; ++j)
                if (mask >> j & 1) pick[c++] = j;
            const Fel da = determinant(f, submatrix_cols(a, pick));
            const Fel db = determinant(f, transpose(submatrix_cols(transpose(b), pick)));
            sum = f.add(sum, f.mul(da, db));
        }
        REQUIRE(determinant(f, multiply(f, a, b)) == sum);
    }
}

TEST_CASE("rank, nullspace, and solve are consistent") {
    std::mt19937_64 rng(6);
    for (const Field& f : {Field::prime(2), Field::prime(13), Field::extension(Field::prime(2), 4)}) {
        for (int t = 0; t < 300; ++t) {
            const std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7, inner = 1 + rng() % 4;
            const Matrix a = multiply(f, random_matrix(f, rows, inner, rng), random_matrix(f, inner, cols, rng));
            const std::size_t rk = rank(f, a);
            REQUIRE(rk <= std::min({rows, cols, inner}));
            const Matrix ns = nullspace(f, a);
            REQUIRE(ns.rows + rk == cols);
            REQUIRE(rank(f, ns) == ns.rows);
            for (std::size_t i = 0; i < ns.rows; ++i) {
                std::vector<Fel> v(ns.row(i), ns.row(i) + cols);
                for (Fel x : apply(f, a, v)) REQUIRE(x.v == 0);
            }
            const auto x = testsupport::random_vector(f, cols, rng);
            const auto b = apply(f, a, x);
            const auto sol = solve(f, a, b);
            REQUIRE(sol.has_value());
            REQUIRE(apply(f, a, *sol) == b);
            REQUIRE(rank(f, transpose(a)) == rk);
        }
    }
}

TEST_CASE("solve reports inconsistency") {
    const Field f = Field::prime(7);
    Matrix a(2, 1);
    a.data = {Fel{1}, Fel{1}};
    CHECK_FALSE(solve(f, a, {Fel{1}, Fel{2}}).has_value());
    CHECK(solve(f, a, {Fel{3}, Fel{3}}).value() == std::vector<Fel>{Fel{3}});
}

TEST_CASE("interpolation inverts evaluation") {
    std::mt19937_64 rng(7);
    const Field f = Field::extension(Field::prime(3), 3);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + rng() % 20;
        const auto coeffs = testsupport::random_vector(f, n, rng);
        std::vector<Fel> pts, vals;
        for (std::size_t i = 0; i < n; ++i) {
            pts.push_back(Fel{i + 1});
            vals.push_back(evaluate(f, coeffs, pts.back()));
        }
        REQUIRE(interpolate(f, pts, vals) == coeffs);
    }
    CHECK_THROWS_AS(interpolate(f, {Fel{1}, Fel{1}}, {Fel{0}, Fel{1}}), Error);
}

}  // TEST_SUITE

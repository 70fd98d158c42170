#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lowrank/errors.hpp"
#include "lowrank/matrix.hpp"

namespace lowrank {

using BigInt = boost::multiprecision::cpp_int;

bool is_prime(std::uint64_t n);

// Immutable handle to GF(p) or GF(p^k); cheap to copy.
class Field {
public:
    // Throws CompositeCharacteristic unless p is prime.
    static Field prime(std::uint64_t p);
    // Uses the least monic irreducible of degree k, coefficients compared from c0 upward.
    static Field extension(const Field& base, unsigned k);
    static Field with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus);

    std::uint64_t characteristic() const;
    unsigned degree() const;
    std::uint64_t size() const;
    // Monic modulus c0..ck; empty for prime fields.
    const std::vector<std::uint64_t>& modulus() const;
    bool is_prime_field() const { return degree() == 1; }
    bool same_as(const Field& other) const;

    Fel zero() const { return Fel{0}; }
    Fel one() const { return Fel{1}; }
    Fel from_int(std::int64_t x) const;
    bool contains(Fel a) const { return a.v < size(); }

    Fel add(Fel a, Fel b) const;
    Fel sub(Fel a, Fel b) const;
    Fel neg(Fel a) const;
    Fel mul(Fel a, Fel b) const;
    Fel inv(Fel a) const;
    Fel div(Fel a, Fel b) const { return mul(a, inv(b)); }
    Fel pow(Fel a, std::uint64_t e) const;
    Fel pow(Fel a, const BigInt& e) const;

    // Canonical enumeration: index i maps to the element with packed code i, so 0, 1, ... come first.
    Fel element(std::uint64_t index) const;
    std::uint64_t index_of(Fel a) const { return a.v; }
    std::vector<std::uint64_t> coeffs(Fel a) const;
    Fel from_coeffs(std::span<const std::uint64_t> c) const;
    std::uint64_t coeff(Fel a, unsigned i) const;

    std::uint64_t multiplicative_order(Fel a) const;
    // First nonzero element of order >= min_order. Throws OrderUnreachable.
    Fel find_element_of_order(std::uint64_t min_order) const;
    Fel find_element_of_order(const BigInt& min_order) const;

    // Returns a copy that records g and the order bound it was chosen for.
    Field with_generator(std::uint64_t min_order) const;
    Field with_generator(Fel g) const;
    std::optional<Fel> generator() const;
    std::uint64_t generator_order() const;
    // Recorded generator if its order suffices, else the first element of order >= min_order.
    Fel generator_for(const BigInt& min_order) const;

    // Matrix over GF(p) of x -> a*x in the power basis; column j holds a*x^j.
    Matrix embed_as_matrix(Fel a) const;

    std::string header() const;
    static Field parse_header(const std::string& line);
    std::string format(Fel a) const;
    Fel parse(const std::string& token) const;

    struct Impl;

private:
    explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

}  // namespace lowrank

#include "lowrank/field.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>
#include <numeric>
#include <sstream>

namespace lowrank {

namespace {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::vector<u64> factor_distinct(u64 n) {
    std::vector<u64> out;
    for (u64 f = 2; f <= n / f; f += (f == 2 ? 1 : 2)) {
        if (n % f == 0) {
            out.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Dense polynomials over GF(p), lowest coefficient first.
using Poly = std::vector<u64>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& f, u64 p) {
    trim(a);
    const std::size_t df = f.size() - 1;
    const u64 lead_inv = powmod(f.back(), p - 2, p);
    while (a.size() > df) {
        const u64 c = mulmod(a.back(), lead_inv, p);
        const std::size_t shift = a.size() - 1 - df;
        for (std::size_t i = 0; i <= df; ++i) {
            a[shift + i] = (a[shift + i] + p - mulmod(c, f[i], p)) % p;
        }
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    return poly_mod(std::move(r), f, p);
}

Poly poly_powmod(Poly a, u64 e, const Poly& f, u64 p) {
    Poly r{1};
    a = poly_mod(std::move(a), f, p);
    while (e) {
        if (e & 1) r = poly_mulmod(r, a, f, p);
        a = poly_mulmod(a, a, f, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rabin's test: f | x^{p^k} - x and gcd(x^{p^{k/s}} - x, f) = 1 for each prime s | k.
bool is_irreducible(const Poly& f, u64 p) {
    const unsigned k = static_cast<unsigned>(f.size() - 1);
    if (k == 1) return true;
    auto frobenius_iter = [&](unsigned times) {
        Poly h{0, 1};
        for (unsigned i = 0; i < times; ++i) h = poly_powmod(h, p, f, p);
        return h;
    };
    auto minus_x = [&](Poly h) {
        if (h.size() < 2) h.resize(2, 0);
        h[1] = (h[1] + p - 1) % p;
        trim(h);
        return h;
    };
    if (!minus_x(frobenius_iter(k)).empty()) return false;
    for (u64 s : factor_distinct(k)) {
        Poly h = minus_x(frobenius_iter(k / static_cast<unsigned>(s)));
        Poly g = poly_gcd(f, h, p);
        if (g.size() != 1) return false;
    }
    return true;
}

constexpr u64 kTableLimit = u64{1} << 20;

struct Factors {
    std::once_flag once;
    std::vector<u64> primes;
};

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % small == 0) return n == small;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

struct Field::Impl {
    u64 p = 2;
    unsigned k = 1;
    u64 q = 2;
    std::vector<u64> modulus;
    std::vector<u64> pw;
    std::shared_ptr<const std::vector<std::uint32_t>> exp_table;
    std::shared_ptr<const std::vector<std::uint32_t>> log_table;
    std::shared_ptr<Factors> factors = std::make_shared<Factors>();
    std::optional<Fel> gen;
    u64 gen_order = 0;

    void unpack(u64 v, u64* out) const {
        for (unsigned i = 0; i < k; ++i) {
            out[i] = v % p;
            v /= p;
        }
    }
    u64 pack(const u64* c) const {
        u64 v = 0;
        for (unsigned i = k; i-- > 0;) v = v * p + c[i];
        return v;
    }

    u64 slow_mul(u64 a, u64 b) const {
        u64 x[64], y[64], r[128] = {};
        unpack(a, x);
        unpack(b, y);
        for (unsigned i = 0; i < k; ++i) {
            if (x[i] == 0) continue;
            for (unsigned j = 0; j < k; ++j) r[i + j] = (r[i + j] + mulmod(x[i], y[j], p)) % p;
        }
        for (unsigned t = 2 * k - 1; t-- > k;) {
            const u64 c = r[t];
            if (c == 0) continue;
            r[t] = 0;
            for (unsigned i = 0; i < k; ++i) {
                r[t - k + i] = (r[t - k + i] + p - mulmod(c, modulus[i], p)) % p;
            }
        }
        return pack(r);
    }

    void build_tables() {
        std::vector<std::uint32_t> ex(2 * (q - 1)), lg(q, 0);
        for (u64 cand = 2; cand < q; ++cand) {
            u64 x = 1;
            u64 len = 0;
            bool full = true;
            for (u64 i = 0; i < q - 1; ++i) {
                ex[i] = static_cast<std::uint32_t>(x);
                x = slow_mul(x, cand);
                ++len;
                if (x == 1 && i + 1 < q - 1) {
                    full = false;
                    break;
                }
            }
            if (!full) continue;
            for (u64 i = 0; i < q - 1; ++i) {
                ex[i + q - 1] = ex[i];
                lg[ex[i]] = static_cast<std::uint32_t>(i);
            }
            exp_table = std::make_shared<const std::vector<std::uint32_t>>(std::move(ex));
            log_table = std::make_shared<const std::vector<std::uint32_t>>(std::move(lg));
            return;
        }
    }

    const std::vector<u64>& group_primes() const {
        std::call_once(factors->once, [this] { factors->primes = factor_distinct(q - 1); });
        return factors->primes;
    }
};

namespace {

std::shared_ptr<Field::Impl> make_impl(u64 p, std::vector<u64> modulus) {
    auto impl = std::make_shared<Field::Impl>();
    impl->p = p;
    impl->k = modulus.empty() ? 1u : static_cast<unsigned>(modulus.size() - 1);
    impl->modulus = std::move(modulus);
    impl->pw.assign(impl->k + 1, 1);
    for (unsigned i = 1; i <= impl->k; ++i) {
        require(impl->pw[i - 1] <= (u64{1} << 62) / p, Errc::TooLarge, "field order exceeds 2^62");
        impl->pw[i] = impl->pw[i - 1] * p;
    }
    impl->q = impl->pw[impl->k];
    if (impl->k > 1 && impl->q <= kTableLimit) impl->build_tables();
    return impl;
}

}  // namespace

Field Field::prime(u64 p) {
    require(is_prime(p), Errc::CompositeCharacteristic, std::to_string(p) + " is not prime");
    require(p < (u64{1} << 62), Errc::TooLarge, "characteristic exceeds 2^62");
    return Field(make_impl(p, {}));
}

Field Field::extension(const Field& base, unsigned k) {
    require(base.is_prime_field(), Errc::InvalidArgument, "extensions are built over prime fields");
    require(k >= 2, Errc::InvalidArgument, "extension degree must be >= 2");
    const u64 p = base.characteristic();
    require(k < 63, Errc::TooLarge, "extension degree too large");
    u64 count = 1;
    for (unsigned i = 0; i < k; ++i) {
        require(count <= (u64{1} << 62) / p, Errc::TooLarge, "field order exceeds 2^62");
        count *= p;
    }
    // Tuples (c0..c_{k-1}) in lexicographic order with c0 most significant.
    Poly f(k + 1, 0);
    f[k] = 1;
    // Candidates with c0 = 0 are divisible by x, so start at c0 = 1.
    for (u64 t = count / p; t < count; ++t) {
        u64 rest = t;
        for (unsigned i = k; i-- > 0;) {
            f[i] = rest % p;
            rest /= p;
        }
        if (f[0] == 0) continue;
        if (is_irreducible(f, p)) return Field(make_impl(p, f));
    }
    fail(Errc::InvalidArgument, "no irreducible polynomial found");
}

Field Field::with_modulus(u64 p, std::vector<u64> modulus) {
    require(is_prime(p), Errc::CompositeCharacteristic, std::to_string(p) + " is not prime");
    if (modulus.size() <= 2) {
        require(modulus.empty() || (modulus.size() == 2 && modulus[1] == 1 && modulus[0] < p),
                Errc::InvalidArgument, "degree-1 modulus must be monic");
        return prime(p);
    }
    require(modulus.back() == 1, Errc::InvalidArgument, "modulus must be monic");
    for (u64 c : modulus) require(c < p, Errc::InvalidArgument, "modulus coefficient out of range");
    require(is_irreducible(modulus, p), Errc::InvalidArgument, "modulus is reducible");
    return Field(make_impl(p, std::move(modulus)));
}

u64 Field::characteristic() const { return impl_->p; }
unsigned Field::degree() const { return impl_->k; }
u64 Field::size() const { return impl_->q; }
const std::vector<u64>& Field::modulus() const { return impl_->modulus; }

bool Field::same_as(const Field& other) const {
    return impl_ == other.impl_ || (impl_->p == other.impl_->p && impl_->modulus == other.impl_->modulus);
}

Fel Field::from_int(std::int64_t x) const {
    const auto p = static_cast<std::int64_t>(std::min<u64>(impl_->p, u64{1} << 62));
    std::int64_t r = x % p;
    if (r < 0) r += p;
    return Fel{static_cast<u64>(r)};
}

Fel Field::add(Fel a, Fel b) const {
    const Impl& f = *impl_;
    if (f.k == 1) {
        u64 s = a.v + b.v;
        return Fel{s >= f.p ? s - f.p : s};
    }
    if (f.p == 2) return Fel{a.v ^ b.v};
    u64 r = 0;
    for (unsigned i = f.k; i-- > 0;) {
        const u64 x = a.v / f.pw[i] % f.p;
        const u64 y = b.v / f.pw[i] % f.p;
        u64 s = x + y;
        if (s >= f.p) s -= f.p;
        r = r * f.p + s;
    }
    return Fel{r};
}

Fel Field::neg(Fel a) const {
    const Impl& f = *impl_;
    if (f.k == 1) return Fel{a.v == 0 ? 0 : f.p - a.v};
    if (f.p == 2) return a;
    u64 r = 0;
    for (unsigned i = f.k; i-- > 0;) {
        const u64 x = a.v / f.pw[i] % f.p;
        r = r * f.p + (x == 0 ? 0 : f.p - x);
    }
    return Fel{r};
}

Fel Field::sub(Fel a, Fel b) const { return add(a, neg(b)); }

Fel Field::mul(Fel a, Fel b) const {
    const Impl& f = *impl_;
    if (f.k == 1) {
        if (f.p < (u64{1} << 32)) return Fel{a.v * b.v % f.p};
        return Fel{mulmod(a.v, b.v, f.p)};
    }
    if (a.v == 0 || b.v == 0) return Fel{0};
    if (f.exp_table) {
        const auto& lg = *f.log_table;
        return Fel{(*f.exp_table)[lg[a.v] + lg[b.v]]};
    }
    return Fel{f.slow_mul(a.v, b.v)};
}

Fel Field::inv(Fel a) const {
    const Impl& f = *impl_;
    require(a.v != 0, Errc::InvalidArgument, "inverse of zero");
    if (f.k == 1) {
        // Extended Euclid on integers.
        std::int64_t t = 0, nt = 1;
        u64 r = f.p, nr = a.v;
        while (nr != 0) {
            const u64 qt = r / nr;
            const std::int64_t tmp = t - static_cast<std::int64_t>(qt) * nt;
            t = nt;
            nt = tmp;
            const u64 rr = r - qt * nr;
            r = nr;
            nr = rr;
        }
        return from_int(t);
    }
    if (f.exp_table) {
        const u64 l = (*f.log_table)[a.v];
        return Fel{(*f.exp_table)[(f.q - 1 - l) % (f.q - 1)]};
    }
    return pow(a, f.q - 2);
}

Fel Field::pow(Fel a, u64 e) const {
    const Impl& f = *impl_;
    if (e == 0) return one();
    if (a.v == 0) return zero();
    e %= (f.q - 1);
    if (f.exp_table) {
        const u64 l = (*f.log_table)[a.v];
        return Fel{(*f.exp_table)[static_cast<u64>(static_cast<u128>(l) * e % (f.q - 1))]};
    }
    Fel r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Fel Field::pow(Fel a, const BigInt& e) const {
    if (e == 0) return one();
    if (a.v == 0) return zero();
    const BigInt reduced = e % (impl_->q - 1);
    return pow(a, reduced.convert_to<u64>());
}

Fel Field::element(u64 index) const {
    require(index < impl_->q, Errc::InvalidArgument, "element index out of range");
    return Fel{index};
}

std::vector<u64> Field::coeffs(Fel a) const {
    std::vector<u64> c(impl_->k);
    impl_->unpack(a.v, c.data());
    return c;
}

Fel Field::from_coeffs(std::span<const u64> c) const {
    require(c.size() <= impl_->k, Errc::InvalidArgument, "too many coefficients");
    u64 v = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        require(c[i] < impl_->p, Errc::InvalidArgument, "coefficient out of range");
        v += c[i] * impl_->pw[i];
    }
    return Fel{v};
}

u64 Field::coeff(Fel a, unsigned i) const { return a.v / impl_->pw[i] % impl_->p; }

u64 Field::multiplicative_order(Fel a) const {
    require(a.v != 0, Errc::InvalidArgument, "zero has no multiplicative order");
    u64 ord = impl_->q - 1;
    for (u64 prime : impl_->group_primes()) {
        while (ord % prime == 0 && pow(a, ord / prime) == one()) ord /= prime;
    }
    return ord;
}

Fel Field::find_element_of_order(u64 min_order) const {
    require(min_order <= impl_->q - 1, Errc::OrderUnreachable,
            "no element of order >= " + std::to_string(min_order) + " in a field of size " +
                std::to_string(impl_->q));
    for (u64 v = 1; v < impl_->q; ++v) {
        if (min_order <= 1 || multiplicative_order(Fel{v}) >= min_order) return Fel{v};
    }
    fail(Errc::OrderUnreachable, "no element reaches the requested order");
}

Fel Field::find_element_of_order(const BigInt& min_order) const {
    require(min_order <= impl_->q - 1, Errc::OrderUnreachable,
            "no element of order >= " + min_order.str() + " in a field of size " + std::to_string(impl_->q));
    return find_element_of_order(min_order.convert_to<u64>());
}

Field Field::with_generator(u64 min_order) const { return with_generator(find_element_of_order(min_order)); }

Field Field::with_generator(Fel g) const {
    auto impl = std::make_shared<Impl>(*impl_);
    impl->gen = g;
    impl->gen_order = multiplicative_order(g);
    return Field(std::move(impl));
}

std::optional<Fel> Field::generator() const { return impl_->gen; }
u64 Field::generator_order() const { return impl_->gen_order; }

Fel Field::generator_for(const BigInt& min_order) const {
    if (impl_->gen && BigInt(impl_->gen_order) >= min_order) return *impl_->gen;
    return find_element_of_order(min_order);
}

Matrix Field::embed_as_matrix(Fel a) const {
    const unsigned k = impl_->k;
    Matrix m(k, k);
    Fel basis = one();
    const Fel x = k > 1 ? Fel{impl_->p} : one();
    for (unsigned j = 0; j < k; ++j) {
        const Fel col = mul(a, basis);
        for (unsigned i = 0; i < k; ++i) m(i, j) = Fel{coeff(col, i)};
        basis = mul(basis, x);
    }
    return m;
}

std::string Field::header() const {
    std::ostringstream os;
    os << "field p=" << impl_->p << " k=" << impl_->k;
    if (impl_->k > 1) {
        os << " mod=";
        for (std::size_t i = 0; i < impl_->modulus.size(); ++i) os << (i ? "," : "") << impl_->modulus[i];
    }
    return os.str();
}

namespace {

u64 parse_u64(std::string_view s) {
    u64 v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    require(ec == std::errc() && ptr == s.data() + s.size() && !s.empty(), Errc::ParseError,
            "bad integer '" + std::string(s) + "'");
    return v;
}

std::vector<u64> parse_list(std::string_view s) {
    std::vector<u64> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = s.find(',', start);
        out.push_back(parse_u64(s.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                              : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

Field Field::parse_header(const std::string& line) {
    std::istringstream is(line);
    std::string word;
    is >> word;
    require(word == "field", Errc::ParseError, "expected field header, got '" + line + "'");
    std::optional<u64> p;
    u64 k = 1;
    std::vector<u64> mod;
    while (is >> word) {
        const auto eq = word.find('=');
        require(eq != std::string::npos, Errc::ParseError, "bad field token '" + word + "'");
        const std::string key = word.substr(0, eq);
        const std::string_view val = std::string_view(word).substr(eq + 1);
        if (key == "p") p = parse_u64(val);
        else if (key == "k") k = parse_u64(val);
        else if (key == "mod") mod = parse_list(val);
        else fail(Errc::ParseError, "unknown field key '" + key + "'");
    }
    require(p.has_value(), Errc::ParseError, "field header lacks p");
    if (k == 1) {
        require(mod.empty() || mod.size() == 2, Errc::ParseError, "degree-1 field with modulus");
        return prime(*p);
    }
    require(mod.size() == k + 1, Errc::ParseError, "modulus length does not match k");
    return with_modulus(*p, std::move(mod));
}

std::string Field::format(Fel a) const {
    if (impl_->k == 1) return std::to_string(a.v);
    std::string s;
    u64 v = a.v;
    for (unsigned i = 0; i < impl_->k; ++i) {
        if (i) s += ',';
        s += std::to_string(v % impl_->p);
        v /= impl_->p;
    }
    return s;
}

Fel Field::parse(const std::string& token) const {
    const auto c = parse_list(token);
    require(c.size() == impl_->k, Errc::ParseError, "element '" + token + "' has wrong coefficient count");
    for (u64 x : c) require(x < impl_->p, Errc::ParseError, "coefficient out of range in '" + token + "'");
    return from_coeffs(c);
}

}  // namespace lowrank

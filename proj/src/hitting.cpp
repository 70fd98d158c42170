#include "lowrank/hitting.hpp"

#include <algorithm>

#include "lowrank/linalg.hpp"

namespace lowrank {

std::string family_name(Family f) {
    switch (f) {
        case Family::B: return "B";
        case Family::D: return "D";
        case Family::Dprime: return "Dprime";
        case Family::Bprime: return "Bprime";
        case Family::TensorB: return "TensorB";
        case Family::SimImproper: return "SimImproper";
        case Family::SimProper: return "SimProper";
        case Family::Naive: return "Naive";
    }
    return "?";
}

Family parse_family(const std::string& name) {
    for (Family f : {Family::B, Family::D, Family::Dprime, Family::Bprime, Family::TensorB, Family::SimImproper,
                     Family::SimProper, Family::Naive}) {
        if (family_name(f) == name) return f;
    }
    fail(Errc::ParseError, "unknown family '" + name + "'");
}

std::string simulation_name(Simulation s) {
    switch (s) {
        case Simulation::None: return "none";
        case Simulation::Improper: return "improper";
        case Simulation::Proper: return "proper";
    }
    return "?";
}

Simulation parse_simulation(const std::string& name) {
    for (Simulation s : {Simulation::None, Simulation::Improper, Simulation::Proper}) {
        if (simulation_name(s) == name) return s;
    }
    fail(Errc::ParseError, "unknown simulation mode '" + name + "'");
}

DenseTensor MeasurementSet::dense(std::size_t i) const {
    if (const auto* r1 = std::get_if<Rank1Tensor>(&items[i])) return expand(*r1);
    return std::get<DenseTensor>(items[i]);
}

Matrix MeasurementSet::stacked() const {
    const std::size_t cols = volume(dims);
    Matrix m(items.size(), cols);
    for (std::size_t i = 0; i < items.size(); ++i) {
        const DenseTensor t = dense(i);
        std::copy(t.entries().begin(), t.entries().end(), m.row(i));
    }
    return m;
}

std::size_t size_B(std::size_t r, std::size_t n, std::size_t m) { return (n + m - 1) * r; }
std::size_t size_D(std::size_t r, std::size_t n, std::size_t m) { return (n + m - 1) * r; }
std::size_t size_D_prime(std::size_t r, std::size_t n, std::size_t m) { return (n + m - r) * r; }
std::size_t size_B_prime(std::size_t r, std::size_t n, std::size_t m) { return (n + m - r) * r; }

unsigned ceil_log2(std::size_t d) {
    unsigned b = 0;
    while ((std::size_t{1} << b) < d) ++b;
    return b;
}

std::size_t size_tensor(std::size_t d, std::size_t n, std::size_t r) {
    std::size_t s = d * n;
    for (unsigned i = 0; i < ceil_log2(d); ++i) s *= r;
    return s;
}

Fel family_generator(const Field& field, const BigInt& min_order) {
    try {
        return field.generator_for(min_order);
    } catch (const Error& e) {
        if (e.code() == Errc::OrderUnreachable) fail(Errc::FieldTooSmall, e.what());
        throw;
    }
}

std::vector<Fel> family_points(const Field& field, std::size_t count) {
    require(count <= field.size() - 1, Errc::FieldTooSmall,
            "need " + std::to_string(count) + " distinct nonzero points in a field of size " +
                std::to_string(field.size()));
    std::vector<Fel> pts(count);
    for (std::size_t i = 0; i < count; ++i) pts[i] = field.element(i + 1);
    return pts;
}

Matrix rank_preserver(const Field& field, Fel g, std::size_t r, std::size_t n, Fel alpha) {
    require(g.v != 0 && field.multiplicative_order(g) >= n, Errc::OrderTooSmall,
            "generator order below " + std::to_string(n));
    Matrix a(r, n);
    Fel gi = field.one();
    for (std::size_t i = 0; i < r; ++i) {
        const Fel base = field.mul(gi, alpha);
        Fel x = field.one();
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = x;
            x = field.mul(x, base);
        }
        gi = field.mul(gi, g);
    }
    return a;
}

namespace {

std::vector<Fel> powers(const Field& f, Fel base, std::size_t count) {
    std::vector<Fel> v(count);
    Fel x = f.one();
    for (std::size_t i = 0; i < count; ++i) {
        v[i] = x;
        x = f.mul(x, base);
    }
    return v;
}

void check_matrix_shape(std::size_t r, std::size_t n, std::size_t m) {
    require(r >= 1 && r <= std::min(n, m), Errc::InvalidArgument,
            "need 1 <= r <= min(n, m), got r=" + std::to_string(r));
}

MeasurementSet b_family(const Field& field, std::size_t r, std::size_t n, std::size_t m, bool prime) {
    check_matrix_shape(r, n, m);
    const Fel g = family_generator(field, BigInt(std::max(n, m)));
    const auto alphas = family_points(field, n + m - 1);
    MeasurementSet h{field, {n, m}, prime ? Family::Bprime : Family::B, {}, {}};
    for (std::size_t l = 0; l < r; ++l) {
        const Fel gl = field.pow(g, static_cast<std::uint64_t>(l));
        const std::size_t kmax = prime ? n + m - 2 - 2 * l : n + m - 2;
        for (std::size_t k = 0; k <= kmax; ++k) {
            h.items.emplace_back(Rank1Tensor(
                field, {powers(field, alphas[k], n), powers(field, field.mul(gl, alphas[k]), m)}));
            h.meta.push_back({k, {l}});
        }
    }
    return h;
}

MeasurementSet d_family(const Field& field, std::size_t r, std::size_t n, std::size_t m, bool prime) {
    check_matrix_shape(r, n, m);
    const Fel g = family_generator(field, BigInt(std::max(n, m)));
    MeasurementSet h{field, {n, m}, prime ? Family::Dprime : Family::D, {}, {}};
    for (std::size_t k = 0; k + 1 < n + m; ++k) {
        const std::size_t lmax = prime ? std::min({r, k + 1, n + m - k - 1}) : r;
        for (std::size_t l = 0; l < lmax; ++l) {
            DenseTensor t(field, {n, m});
            const Fel gl = field.pow(g, static_cast<std::uint64_t>(l));
            const std::size_t i0 = diagonal_first_row(n, m, k), len = diagonal_length(n, m, k);
            for (std::size_t s = 0; s < len; ++s) {
                const std::size_t i = i0 + s, j = k - i;
                t(i, j) = field.pow(gl, static_cast<std::uint64_t>(j));
            }
            h.items.emplace_back(std::move(t));
            h.meta.push_back({k, {l}});
        }
    }
    return h;
}

}  // namespace

MeasurementSet hitting_set_B(const Field& field, std::size_t r, std::size_t n, std::size_t m) {
    return b_family(field, r, n, m, false);
}
MeasurementSet hitting_set_B_prime(const Field& field, std::size_t r, std::size_t n, std::size_t m) {
    return b_family(field, r, n, m, true);
}
MeasurementSet hitting_set_D(const Field& field, std::size_t r, std::size_t n, std::size_t m) {
    return d_family(field, r, n, m, false);
}
MeasurementSet hitting_set_D_prime(const Field& field, std::size_t r, std::size_t n, std::size_t m) {
    return d_family(field, r, n, m, true);
}

BigInt exponent_map(std::uint64_t n, unsigned b, std::uint64_t k, const std::vector<std::uint64_t>& ls) {
    const BigInt base = BigInt(n) << b;
    BigInt total = 0;
    for (std::size_t j = 1; j <= ls.size(); ++j) {
        if ((k >> (j - 1)) & 1) total += BigInt(ls[j - 1]) * boost::multiprecision::pow(base, static_cast<unsigned>(k >> j));
    }
    return total;
}

MeasurementSet hitting_set_tensor(const Field& field, std::size_t d, std::size_t n, std::size_t r) {
    require(d >= 2 && n >= 1 && r >= 1, Errc::InvalidArgument, "tensor family needs d >= 2, n >= 1, r >= 1");
    const unsigned b = ceil_log2(d);
    const BigInt min_order = boost::multiprecision::pow(BigInt(2 * d * n), static_cast<unsigned>(d));
    const Fel g = family_generator(field, min_order);
    const auto alphas = family_points(field, d * n);
    MeasurementSet h{field, Dims(d, n), Family::TensorB, {}, {}};
    std::size_t tuples = 1;
    for (unsigned i = 0; i < b; ++i) tuples *= r;
    for (std::size_t t = 0; t < tuples; ++t) {
        // First index varies slowest.
        std::vector<std::uint64_t> ls(b);
        std::size_t rest = t;
        for (unsigned i = b; i-- > 0;) {
            ls[i] = rest % r;
            rest /= r;
        }
        std::vector<Fel> shifts(d);
        for (std::size_t j = 0; j < d; ++j) shifts[j] = field.pow(g, exponent_map(n, b, j, ls));
        for (std::size_t k = 0; k < d * n; ++k) {
            std::vector<std::vector<Fel>> factors(d);
            for (std::size_t j = 0; j < d; ++j) factors[j] = powers(field, field.mul(shifts[j], alphas[k]), n);
            h.items.emplace_back(Rank1Tensor(field, std::move(factors)));
            h.meta.push_back({k, std::vector<std::size_t>(ls.begin(), ls.end())});
        }
    }
    return h;
}

MeasurementSet simulate_improper(const MeasurementSet& h) {
    const Field& ext = h.field;
    if (ext.is_prime_field()) return h;
    const Field base = Field::prime(ext.characteristic());
    const unsigned k = ext.degree();
    MeasurementSet out{base, h.dims, Family::SimImproper, {}, {}};
    for (std::size_t i = 0; i < h.size(); ++i) {
        const DenseTensor t = h.dense(i);
        for (unsigned l = 0; l < k; ++l) {
            DenseTensor proj(base, h.dims);
            for (std::size_t e = 0; e < t.size(); ++e) proj.entries()[e] = Fel{ext.coeff(t.entries()[e], l)};
            out.items.emplace_back(std::move(proj));
            MeasurementMeta meta = h.meta[i];
            meta.l.push_back(l);
            out.meta.push_back(std::move(meta));
        }
    }
    return out;
}

MeasurementSet simulate_proper(const MeasurementSet& h) {
    const Field& ext = h.field;
    for (std::size_t i = 0; i < h.size(); ++i) {
        require(h.is_rank1(i), Errc::NotRank1, "measurement " + std::to_string(i) + " is not rank-1");
    }
    if (ext.is_prime_field()) return h;
    const Field base = Field::prime(ext.characteristic());
    const unsigned k = ext.degree();
    const std::size_t d = h.dims.size();
    std::size_t tuples = 1;
    for (std::size_t j = 0; j < d; ++j) tuples *= k;
    MeasurementSet out{base, h.dims, Family::SimProper, {}, {}};
    for (std::size_t i = 0; i < h.size(); ++i) {
        const auto& factors = std::get<Rank1Tensor>(h.items[i]).factors();
        // Multiplication matrices of every factor entry.
        std::vector<std::vector<Matrix>> mats(d);
        for (std::size_t j = 0; j < d; ++j)
            for (Fel a : factors[j]) mats[j].push_back(ext.embed_as_matrix(a));
        for (std::size_t t = 0; t < tuples; ++t) {
            std::vector<std::size_t> ls(d + 1, 0);
            std::size_t rest = t;
            for (std::size_t j = d; j-- > 0;) {
                ls[j] = rest % k;
                rest /= k;
            }
            std::vector<std::vector<Fel>> lifted(d);
            bool zero = false;
            for (std::size_t j = 0; j < d; ++j) {
                lifted[j].resize(factors[j].size());
                bool any = false;
                for (std::size_t x = 0; x < factors[j].size(); ++x) {
                    lifted[j][x] = mats[j][x](ls[j], ls[j + 1]);
                    any = any || lifted[j][x].v != 0;
                }
                zero = zero || !any;
            }
            if (zero) out.items.emplace_back(DenseTensor(base, h.dims));
            else out.items.emplace_back(Rank1Tensor(base, std::move(lifted)));
            MeasurementMeta meta = h.meta[i];
            meta.l.insert(meta.l.end(), ls.begin(), ls.end() - 1);
            out.meta.push_back(std::move(meta));
        }
    }
    return out;
}

namespace {

struct Requirement {
    BigInt order;
    std::size_t points = 0;
};

Requirement requirement(Family family, const Dims& dims, std::size_t r) {
    (void)r;
    switch (family) {
        case Family::B:
        case Family::Bprime:
            require(dims.size() == 2, Errc::ShapeMismatch, "matrix family needs two axes");
            return {BigInt(std::max(dims[0], dims[1])), dims[0] + dims[1] - 1};
        case Family::D:
        case Family::Dprime:
            require(dims.size() == 2, Errc::ShapeMismatch, "matrix family needs two axes");
            return {BigInt(std::max(dims[0], dims[1])), 0};
        case Family::TensorB: {
            const std::size_t d = dims.size(), n = dims.at(0);
            return {boost::multiprecision::pow(BigInt(2 * d * n), static_cast<unsigned>(d)), d * n};
        }
        default:
            return {BigInt(1), 0};
    }
}

}  // namespace

unsigned minimal_extension_degree(const Field& base, Family family, const Dims& dims, std::size_t r) {
    require(base.is_prime_field(), Errc::InvalidArgument, "base must be a prime field");
    const Requirement req = requirement(family, dims, r);
    const BigInt need = std::max(req.order, BigInt(req.points));
    BigInt q = base.characteristic();
    unsigned k = 1;
    while (q - 1 < need) {
        q *= base.characteristic();
        ++k;
    }
    return k;
}

MeasurementSet hitting_set(const Field& field, Family family, const Dims& dims, std::size_t r) {
    switch (family) {
        case Family::B:
        case Family::Bprime:
        case Family::D:
        case Family::Dprime:
            require(dims.size() == 2, Errc::ShapeMismatch, "matrix family needs two axes");
            if (family == Family::B) return hitting_set_B(field, r, dims[0], dims[1]);
            if (family == Family::Bprime) return hitting_set_B_prime(field, r, dims[0], dims[1]);
            if (family == Family::D) return hitting_set_D(field, r, dims[0], dims[1]);
            return hitting_set_D_prime(field, r, dims[0], dims[1]);
        case Family::TensorB:
            require(std::all_of(dims.begin(), dims.end(), [&](std::size_t x) { return x == dims[0]; }),
                    Errc::ShapeMismatch, "tensor family needs equal axis lengths");
            return hitting_set_tensor(field, dims.size(), dims[0], r);
        case Family::Naive:
            return naive_set(field, dims);
        default:
            fail(Errc::InvalidArgument, "family " + family_name(family) + " is not generated directly");
    }
}

MeasurementSet small_field_hitting_set(const Field& base, Family family, const Dims& dims, std::size_t r,
                                       Simulation sim, unsigned ext) {
    if (ext == 0) ext = minimal_extension_degree(base, family, dims, r);
    const Field big = ext == 1 ? base : Field::extension(base, ext);
    MeasurementSet h = hitting_set(big, family, dims, r);
    switch (sim) {
        case Simulation::None: return h;
        case Simulation::Improper: return simulate_improper(h);
        case Simulation::Proper: return simulate_proper(h);
    }
    return h;
}

namespace {

template <class T>
Fel measure_one(const T& t, const MeasurementTensor& item) {
    return std::visit([&](const auto& m) { return inner_product(t, m); }, item);
}

}  // namespace

PitResult pit_test(const DenseTensor& t, const MeasurementSet& h) {
    require(t.dims() == h.dims, Errc::ShapeMismatch, "tensor and measurement dims disagree");
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (measure_one(t, h.items[i]).v != 0) return {true, i};
    }
    return {};
}

PitResult pit_test(const LowRankTensor& t, const MeasurementSet& h) {
    require(t.dims() == h.dims, Errc::ShapeMismatch, "tensor and measurement dims disagree");
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (measure_one(t, h.items[i]).v != 0) return {true, i};
    }
    return {};
}

std::vector<Fel> measure(const DenseTensor& t, const MeasurementSet& h) {
    require(t.dims() == h.dims, Errc::ShapeMismatch, "tensor and measurement dims disagree");
    std::vector<Fel> out(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) out[i] = measure_one(t, h.items[i]);
    return out;
}

std::vector<Fel> measure(const LowRankTensor& t, const MeasurementSet& h) {
    require(t.dims() == h.dims, Errc::ShapeMismatch, "tensor and measurement dims disagree");
    std::vector<Fel> out(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) out[i] = measure_one(t, h.items[i]);
    return out;
}

MeasurementSet naive_set(const Field& field, const Dims& dims) {
    MeasurementSet h{field, dims, Family::Naive, {}, {}};
    const std::size_t total = volume(dims);
    for (std::size_t e = 0; e < total; ++e) {
        std::vector<std::vector<Fel>> factors(dims.size());
        std::size_t rest = e;
        for (std::size_t j = dims.size(); j-- > 0;) {
            factors[j].assign(dims[j], field.zero());
            factors[j][rest % dims[j]] = field.one();
            rest /= dims[j];
        }
        h.items.emplace_back(Rank1Tensor(field, std::move(factors)));
        h.meta.push_back({e, {}});
    }
    return h;
}

DenseTensor hard_tensor(const MeasurementSet& h) {
    const Matrix basis = nullspace(h.field, h.stacked());
    require(basis.rows > 0, Errc::NoNullspace, "measurements span the whole space");
    std::vector<Fel> first(basis.row(0), basis.row(0) + basis.cols);
    return DenseTensor(h.field, h.dims, std::move(first));
}

}  // namespace lowrank

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lowrank/errors.hpp"
#include "lowrank/field.hpp"
#include "lowrank/hitting.hpp"
#include "lowrank/io.hpp"
#include "lowrank/linalg.hpp"
#include "lowrank/lrr.hpp"
#include "lowrank/rankcode.hpp"
#include "lowrank/sparse.hpp"

using namespace lowrank;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPromise = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void usage_check(bool ok, const std::string& msg) {
    if (!ok) throw UsageError(msg);
}

struct Options {
    std::optional<std::uint64_t> p;
    unsigned k = 1;
    std::string dims;
    std::optional<std::size_t> r;
    std::string family;
    std::string in;
    std::string out;
    std::string error_out;
    std::uint64_t seed = 1;
    std::string sim = "none";
    unsigned ext = 0;
    std::string sizes = "32,64,128";
    std::size_t trials = 3;
};

Field make_field(std::uint64_t p, unsigned k) {
    const Field base = Field::prime(p);
    return k == 1 ? base : Field::extension(base, k);
}

Field flag_field(const Options& o) {
    usage_check(o.p.has_value(), "--p is required");
    usage_check(o.k >= 1, "--k must be >= 1");
    return make_field(*o.p, o.k);
}

Dims flag_dims(const Options& o) {
    usage_check(!o.dims.empty(), "--dims is required");
    try {
        return parse_dims(o.dims);
    } catch (const Error& e) {
        throw UsageError("bad --dims: " + std::string(e.what()));
    }
}

std::size_t flag_r(const Options& o) {
    usage_check(o.r.has_value(), "--r is required");
    usage_check(*o.r >= 1, "--r must be >= 1");
    return *o.r;
}

Family flag_family(const Options& o, std::optional<Family> fallback = std::nullopt) {
    if (o.family.empty()) {
        usage_check(fallback.has_value(), "--family is required");
        return *fallback;
    }
    try {
        return parse_family(o.family);
    } catch (const Error&) {
        throw UsageError("unknown --family '" + o.family + "'");
    }
}

Simulation flag_sim(const Options& o) {
    try {
        return parse_simulation(o.sim);
    } catch (const Error&) {
        throw UsageError("unknown --sim '" + o.sim + "' (none, improper, proper)");
    }
}

// Tensor files may be dense or low-rank; the header line tells which.
DenseTensor load_tensor(const std::string& path) {
    usage_check(!path.empty(), "--in is required");
    std::ifstream is(path);
    if (!is) fail(Errc::ParseError, "cannot open '" + path + "'");
    return read_tensor(is);
}

template <class Writer>
void emit(const std::string& path, Writer&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream os(path);
    if (!os) fail(Errc::InvalidArgument, "cannot write '" + path + "'");
    write(os);
}

// Parameter combinations the library rejects up front count as usage errors.
bool is_parameter_error(Errc c) {
    switch (c) {
        case Errc::InvalidArgument:
        case Errc::CompositeCharacteristic:
        case Errc::FieldTooSmall:
        case Errc::OrderTooSmall:
        case Errc::NotRank1:
            return true;
        default:
            return false;
    }
}

void check_field_flags(const Options& o, const Field& file_field) {
    if (o.p) usage_check(*o.p == file_field.characteristic(), "--p disagrees with the input file");
}

// ---- verbs ----

int run_gen_hit(const Options& o) {
    const Family fam = flag_family(o);
    const Dims dims = flag_dims(o);
    const Simulation sim = flag_sim(o);
    const Field f = flag_field(o);
    MeasurementSet h = [&] {
        if (fam == Family::Naive) return naive_set(f, dims);
        const std::size_t r = flag_r(o);
        if (sim == Simulation::None) return hitting_set(f, fam, dims, r);
        usage_check(o.k == 1, "--sim builds over GF(p^ext); pass --ext instead of --k");
        return small_field_hitting_set(f, fam, dims, r, sim, o.ext);
    }();
    emit(o.out, [&](std::ostream& os) { write_measurements(os, h); });
    return kExitOk;
}

int run_pit(const Options& o) {
    const Family fam = flag_family(o);
    const Simulation sim = flag_sim(o);
    const DenseTensor t = load_tensor(o.in);
    check_field_flags(o, t.field());
    MeasurementSet h = [&] {
        if (fam == Family::Naive) return naive_set(t.field(), t.dims());
        const std::size_t r = flag_r(o);
        if (sim != Simulation::None) return small_field_hitting_set(t.field(), fam, t.dims(), r, sim, o.ext);
        if (o.k > 1) {
            usage_check(t.field().is_prime_field(), "--k needs a tensor over a prime field");
            return hitting_set(Field::extension(t.field(), o.k), fam, t.dims(), r);
        }
        return hitting_set(t.field(), fam, t.dims(), r);
    }();
    const PitResult res = pit_test(t, h);
    if (res.nonzero) std::cout << "NONZERO witness=" << *res.witness << '\n';
    else std::cout << "ZERO\n";
    return kExitOk;
}

int run_measure(const Options& o) {
    const DenseTensor t = load_tensor(o.in);
    check_field_flags(o, t.field());
    const Family fam = flag_family(o, t.order() == 2 ? Family::Dprime : Family::TensorB);
    const RecoveryScheme s = make_scheme(t.field(), t.dims(), flag_r(o), fam, flag_sim(o), o.ext);
    const SyndromeFile file{s.field, s.family, s.r, s.dims, s.sim, s.ext, scheme_measure(s, t)};
    emit(o.out, [&](std::ostream& os) { write_syndromes(os, file); });
    return kExitOk;
}

int run_recover(const Options& o) {
    usage_check(!o.in.empty(), "--in is required");
    std::ifstream is(o.in);
    if (!is) fail(Errc::ParseError, "cannot open '" + o.in + "'");
    const SyndromeFile file = read_syndromes(is);
    const RecoveryScheme s = make_scheme(file.field, file.dims, file.r, file.family, file.sim, file.ext);
    const DenseTensor t = scheme_recover(s, file.values);
    emit(o.out, [&](std::ostream& os) { write_tensor(os, t); });
    return kExitOk;
}

RankMetricCode flag_code(const Options& o, const Field& f) {
    const Dims dims = flag_dims(o);
    const Family fam = flag_family(o, dims.size() == 2 ? Family::Dprime : Family::TensorB);
    return build_code(f, dims, flag_r(o), fam, flag_sim(o), o.ext);
}

// Messages are one-axis tensor files whose length is the code dimension.
int run_encode(const Options& o) {
    const DenseTensor msg = load_tensor(o.in);
    check_field_flags(o, msg.field());
    usage_check(msg.order() == 1, "message file must have a single axis");
    const RankMetricCode code = flag_code(o, msg.field());
    const DenseTensor word = encode(code, msg.entries());
    emit(o.out, [&](std::ostream& os) { write_tensor(os, word); });
    return kExitOk;
}

int run_decode(const Options& o) {
    const DenseTensor received = load_tensor(o.in);
    check_field_flags(o, received.field());
    if (!o.dims.empty()) usage_check(flag_dims(o) == received.dims(), "--dims disagrees with the input file");
    Options with_dims = o;
    with_dims.dims = format_dims(received.dims());
    const RankMetricCode code = flag_code(with_dims, received.field());
    const DecodeResult res = decode(code, received);
    emit(o.out, [&](std::ostream& os) { write_tensor(os, res.codeword); });
    if (!o.error_out.empty()) emit(o.error_out, [&](std::ostream& os) { write_tensor(os, res.error); });
    return kExitOk;
}

// ---- random instances for selftest and bench ----

std::vector<Fel> random_vector(const Field& f, std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> dist(0, f.size() - 1);
    std::vector<Fel> v(n);
    for (auto& x : v) x = Fel{dist(rng)};
    return v;
}

DenseTensor random_low_rank(const Field& f, const Dims& dims, std::size_t r, std::mt19937_64& rng) {
    LowRankTensor t(f, dims);
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<std::vector<Fel>> factors;
        for (std::size_t n : dims) factors.push_back(random_vector(f, n, rng));
        t.add_term(std::move(factors));
    }
    return expand(t);
}

// ---- selftest ----

struct Suite {
    std::string name;
    std::function<bool(std::mt19937_64&)> run;
};

bool field_axioms_suite(std::mt19937_64&) {
    for (const Field& f : {Field::prime(7), Field::extension(Field::prime(2), 2), Field::extension(Field::prime(2), 3),
                           Field::extension(Field::prime(3), 2)}) {
        const std::uint64_t q = f.size();
        for (std::uint64_t a = 0; a < q; ++a) {
            if (a && f.mul(Fel{a}, f.inv(Fel{a})) != f.one()) return false;
            for (std::uint64_t b = 0; b < q; ++b)
                for (std::uint64_t c = 0; c < q; ++c) {
                    const Fel x{a}, y{b}, z{c};
                    if (f.mul(f.mul(x, y), z) != f.mul(x, f.mul(y, z))) return false;
                    if (f.mul(x, f.add(y, z)) != f.add(f.mul(x, y), f.mul(x, z))) return false;
                }
        }
    }
    return true;
}

// Every 3x3 matrix over GF(2) of rank <= 1, by bitmask.
std::vector<DenseTensor> gf2_rank1_matrices() {
    const Field f = Field::prime(2);
    std::vector<DenseTensor> out;
    for (std::uint32_t code = 0; code < 512; ++code) {
        DenseTensor x(f, {3, 3});
        for (std::size_t i = 0; i < 9; ++i) x.entries()[i] = Fel{code >> i & 1u};
        if (matrix_rank(x) <= 1) out.push_back(x);
    }
    return out;
}

bool hitting_gf2_suite(std::mt19937_64&) {
    const auto h = small_field_hitting_set(Field::prime(2), Family::D, {3, 3}, 1, Simulation::Improper, 2);
    for (const auto& x : gf2_rank1_matrices())
        if (pit_test(x, h).nonzero == x.is_zero()) return false;
    return true;
}

bool prony_suite(std::mt19937_64&) {
    const Field f = Field::prime(5);
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::size_t s = 1; s <= 2; ++s) {
            const DualRS code = dual_rs(f, Fel{2}, n, s);
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < n; ++i) total *= 5;
            for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                std::vector<std::size_t> advice;
                for (std::size_t i = 0; i < n; ++i)
                    if (mask >> i & 1) advice.push_back(i);
                if (advice.size() > 2 * s) continue;
                const std::size_t budget = s - (advice.size() + 1) / 2;
                for (std::uint64_t c = 0; c < total; ++c) {
                    std::vector<Fel> x(n);
                    std::uint64_t rest = c;
                    std::size_t outside = 0;
                    for (std::size_t i = 0; i < n; ++i) {
                        x[i] = Fel{rest % 5};
                        rest /= 5;
                        if (x[i].v && !(mask >> i & 1)) ++outside;
                    }
                    if (outside > budget) continue;
                    if (pronys_method(f, n, s, advice, syndrome(code, x), code.points) != x) return false;
                }
            }
        }
    return true;
}

bool lrr_gf2_suite(std::mt19937_64&) {
    const RecoveryScheme s = make_scheme(Field::prime(2), {3, 3}, 1, Family::Dprime, Simulation::Improper, 2);
    for (const auto& x : gf2_rank1_matrices())
        if (scheme_recover(s, scheme_measure(s, x)) != x) return false;
    return true;
}

bool random_matrix_suite(std::mt19937_64& rng) {
    const Field f = Field::prime(17);
    for (Family fam : {Family::Dprime, Family::Bprime}) {
        const RecoveryScheme s = make_scheme(f, {8, 8}, 2, fam);
        for (int t = 0; t < 100; ++t) {
            const DenseTensor x = random_low_rank(f, {8, 8}, 2, rng);
            if (scheme_recover(s, scheme_measure(s, x)) != x) return false;
        }
    }
    return true;
}

bool tensor_suite(std::mt19937_64& rng) {
    const Field f = Field::prime(1000003);
    const RecoveryScheme s = make_scheme(f, {3, 3, 3}, 1, Family::TensorB);
    for (int t = 0; t < 10; ++t) {
        const DenseTensor x = random_low_rank(f, {3, 3, 3}, 1, rng);
        if (scheme_recover(s, scheme_measure(s, x)) != x) return false;
    }
    return true;
}

bool code_distance_suite(std::mt19937_64&) {
    const RankMetricCode code = build_code(Field::prime(7), {3, 3}, 1, Family::Dprime);
    const DistanceReport rep = min_distance_brute(code);
    return code.dimension() == 1 && rep.distance && *rep.distance >= 2 * code.r + 1;
}

bool decode_suite(std::mt19937_64& rng) {
    const RankMetricCode code = build_code(Field::prime(13), {6, 6}, 1, Family::Dprime);
    const Field& f = code.field;
    for (int t = 0; t < 100; ++t) {
        const DenseTensor word = encode(code, random_vector(f, code.dimension(), rng));
        const DenseTensor err = random_low_rank(f, {6, 6}, 1, rng);
        DenseTensor received = word;
        for (std::size_t i = 0; i < received.size(); ++i)
            received.entries()[i] = f.add(word.entries()[i], err.entries()[i]);
        const DecodeResult res = decode(code, received);
        if (res.codeword != word || res.error != err) return false;
    }
    return true;
}

int run_selftest(const Options& o) {
    const std::vector<Suite> suites{
        {"field-axioms", field_axioms_suite},      {"hitting-gf2-rank1", hitting_gf2_suite},
        {"prony-exhaustive", prony_suite},         {"recovery-gf2-rank1", lrr_gf2_suite},
        {"recovery-random-8x8", random_matrix_suite}, {"recovery-tensor-d3", tensor_suite},
        {"code-distance", code_distance_suite},    {"decode-random", decode_suite},
    };
    std::mt19937_64 rng(o.seed);
    int failed = 0;
    for (const Suite& s : suites) {
        bool ok = false;
        std::string why;
        try {
            ok = s.run(rng);
        } catch (const std::exception& e) {
            why = std::string(" (") + e.what() + ")";
        }
        std::cout << (ok ? "PASS " : "FAIL ") << s.name << why << '\n';
        if (!ok) ++failed;
    }
    return failed ? kExitFailure : kExitOk;
}

// ---- bench ----

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            out.push_back(parse_dims(tok).at(0));
        } catch (const Error&) {
            throw UsageError("bad --sizes entry '" + tok + "'");
        }
    }
    return out;
}

int run_bench(const Options& o) {
    const std::size_t r = o.r.value_or(2);
    const Field f = Field::prime(o.p.value_or(65537));
    const Family fam = flag_family(o, Family::Dprime);
    usage_check(fam == Family::Dprime || fam == Family::Bprime, "bench supports Dprime and Bprime");
    usage_check(o.trials >= 1, "--trials must be >= 1");
    std::mt19937_64 rng(o.seed);
    std::cout << "n m r measure_ms recover_ms\n";
    for (std::size_t n : parse_sizes(o.sizes)) {
        const RecoveryScheme s = make_scheme(f, {n, n}, r, fam);
        double measure_ms = 0, recover_ms = 0;
        for (std::size_t t = 0; t < o.trials; ++t) {
            const DenseTensor x = random_low_rank(f, {n, n}, r, rng);
            const auto t0 = std::chrono::steady_clock::now();
            const auto syn = scheme_measure(s, x);
            const auto t1 = std::chrono::steady_clock::now();
            const DenseTensor back = scheme_recover(s, syn);
            const auto t2 = std::chrono::steady_clock::now();
            if (back != x) fail(Errc::OracleFailure, "bench recovery mismatch at n=" + std::to_string(n));
            measure_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
            recover_ms += std::chrono::duration<double, std::milli>(t2 - t1).count();
        }
        char line[128];
        std::snprintf(line, sizeof line, "%zu %zu %zu %.3f %.3f", n, n, r, measure_ms / o.trials,
                      recover_ms / o.trials);
        std::cout << line << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Low-rank tensor hitting sets, recovery, and rank-metric codes"};
    app.require_subcommand(1);
    Options o;

    auto field_flags = [&](CLI::App* c) {
        c->add_option("--p", o.p, "field characteristic");
        c->add_option("--k", o.k, "extension degree");
    };
    auto family_flags = [&](CLI::App* c) {
        c->add_option("--family", o.family, "B, D, Dprime, Bprime, TensorB, or Naive");
        c->add_option("--r", o.r, "rank bound");
        c->add_option("--sim", o.sim, "small-field simulation: none, improper, proper");
        c->add_option("--ext", o.ext, "extension degree for simulation (0 = smallest workable)");
    };

    auto* gen = app.add_subcommand("gen-hit", "write a hitting-set family");
    field_flags(gen);
    family_flags(gen);
    gen->add_option("--dims", o.dims, "shape, e.g. 3x3");
    gen->add_option("--out", o.out, "output file (default stdout)");

    auto* pit = app.add_subcommand("pit", "test a tensor file against a hitting set");
    field_flags(pit);
    family_flags(pit);
    pit->add_option("--in", o.in, "tensor file");

    auto* meas = app.add_subcommand("measure", "write recovery syndromes of a tensor file");
    field_flags(meas);
    family_flags(meas);
    meas->add_option("--in", o.in, "tensor file");
    meas->add_option("--out", o.out, "syndrome file (default stdout)");

    auto* rec = app.add_subcommand("recover", "rebuild a tensor from a syndrome file");
    rec->add_option("--in", o.in, "syndrome file");
    rec->add_option("--out", o.out, "tensor file (default stdout)");

    auto* enc = app.add_subcommand("encode", "encode a message into a codeword");
    field_flags(enc);
    family_flags(enc);
    enc->add_option("--dims", o.dims, "codeword shape");
    enc->add_option("--in", o.in, "message file (one-axis tensor)");
    enc->add_option("--out", o.out, "codeword file (default stdout)");

    auto* dec = app.add_subcommand("decode", "remove a rank <= r error from a received word");
    field_flags(dec);
    family_flags(dec);
    dec->add_option("--dims", o.dims, "codeword shape (checked against the input)");
    dec->add_option("--in", o.in, "received tensor file");
    dec->add_option("--out", o.out, "codeword file (default stdout)");
    dec->add_option("--error-out", o.error_out, "file for the recovered error");

    auto* self = app.add_subcommand("selftest", "run exhaustive tiny-scale checks");
    self->add_option("--seed", o.seed, "seed for random instances");

    auto* bench = app.add_subcommand("bench", "time measure and recover on random matrices");
    bench->add_option("--p", o.p, "prime field (default 65537)");
    bench->add_option("--r", o.r, "rank (default 2)");
    bench->add_option("--family", o.family, "Dprime or Bprime");
    bench->add_option("--sizes", o.sizes, "comma-separated n values");
    bench->add_option("--trials", o.trials, "instances per size");
    bench->add_option("--seed", o.seed, "seed for random instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gen) return run_gen_hit(o);
        if (*pit) return run_pit(o);
        if (*meas) return run_measure(o);
        if (*rec) return run_recover(o);
        if (*enc) return run_encode(o);
        if (*dec) return run_decode(o);
        if (*self) return run_selftest(o);
        if (*bench) return run_bench(o);
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (is_promise_violation(e.code())) return kExitPromise;
        return is_parameter_error(e.code()) ? kExitUsage : kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

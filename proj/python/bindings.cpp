#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "lowrank/errors.hpp"
#include "lowrank/field.hpp"
#include "lowrank/hitting.hpp"
#include "lowrank/rankcode.hpp"

namespace py = pybind11;
using namespace lowrank;

namespace {

// Python sees field elements as their integer codes and tensors as flat row-major lists.
std::vector<Fel> to_fels(const Field& f, const std::vector<std::uint64_t>& xs) {
    std::vector<Fel> out;
    out.reserve(xs.size());
    for (auto x : xs) {
        require(x < f.size(), Errc::InvalidArgument, "element " + std::to_string(x) + " outside the field");
        out.push_back(Fel{x});
    }
    return out;
}

std::vector<std::uint64_t> to_ints(const std::vector<Fel>& xs) {
    std::vector<std::uint64_t> out;
    out.reserve(xs.size());
    for (Fel x : xs) out.push_back(x.v);
    return out;
}

DenseTensor to_tensor(const Field& f, const Dims& dims, const std::vector<std::uint64_t>& entries) {
    return DenseTensor(f, dims, to_fels(f, entries));
}

Field make_field(std::uint64_t p, unsigned k) {
    const Field base = Field::prime(p);
    return k == 1 ? base : Field::extension(base, k);
}

}  // namespace

PYBIND11_MODULE(lowrank, m) {
    m.doc() = "Exact low-rank tensor hitting sets, recovery, and rank-metric codes over finite fields";

    static py::exception<Error> error(m, "Error", PyExc_ValueError);
    static py::exception<Error> promise(m, "PromiseViolation", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const std::string msg = e.what();
            if (is_promise_violation(e.code())) PyErr_SetString(promise.ptr(), msg.c_str());
            else PyErr_SetString(error.ptr(), msg.c_str());
        }
    });

    py::class_<Field>(m, "Field")
        .def(py::init(&make_field), py::arg("p"), py::arg("k") = 1)
        .def_property_readonly("size", &Field::size)
        .def_property_readonly("characteristic", &Field::characteristic)
        .def_property_readonly("degree", &Field::degree)
        .def_property_readonly("modulus", &Field::modulus)
        .def("add", [](const Field& f, std::uint64_t a, std::uint64_t b) {
            const auto x = to_fels(f, {a, b});
            return f.add(x[0], x[1]).v;
        })
        .def("mul", [](const Field& f, std::uint64_t a, std::uint64_t b) {
            const auto x = to_fels(f, {a, b});
            return f.mul(x[0], x[1]).v;
        })
        .def("inv", [](const Field& f, std::uint64_t a) { return f.inv(to_fels(f, {a})[0]).v; })
        .def("__repr__", &Field::header);

    m.def(
        "pit",
        [](const Field& f, const Dims& dims, const std::vector<std::uint64_t>& entries, const std::string& family,
           std::size_t r) -> std::optional<std::size_t> {
            const DenseTensor t = to_tensor(f, dims, entries);
            const Family fam = parse_family(family);
            const MeasurementSet h = fam == Family::Naive ? naive_set(f, dims) : hitting_set(f, fam, dims, r);
            return pit_test(t, h).witness;
        },
        py::arg("field"), py::arg("dims"), py::arg("entries"), py::arg("family") = "Dprime", py::arg("r") = 1,
        "Index of the first measurement with a nonzero inner product, or None for the zero tensor.");

    py::class_<RecoveryScheme>(m, "Scheme")
        .def(py::init([](const Field& f, const Dims& dims, std::size_t r, const std::string& family,
                         const std::string& sim, unsigned ext) {
                 return make_scheme(f, dims, r, parse_family(family), parse_simulation(sim), ext);
             }),
             py::arg("field"), py::arg("dims"), py::arg("r"), py::arg("family") = "Dprime", py::arg("sim") = "none",
             py::arg("ext") = 0)
        .def_readonly("dims", &RecoveryScheme::dims)
        .def_readonly("r", &RecoveryScheme::r)
        .def_readonly("ext", &RecoveryScheme::ext)
        .def_property_readonly("measurement_count",
                               [](const RecoveryScheme& s) { return scheme_measurements(s).size(); })
        .def("measure",
             [](const RecoveryScheme& s, const std::vector<std::uint64_t>& entries) {
                 return to_ints(scheme_measure(s, to_tensor(s.field, s.dims, entries)));
             })
        .def("recover", [](const RecoveryScheme& s, const std::vector<std::uint64_t>& syndromes) {
            return to_ints(scheme_recover(s, to_fels(s.field, syndromes)).entries());
        });

    py::class_<RankMetricCode>(m, "Code")
        .def(py::init([](const Field& f, const Dims& dims, std::size_t r, const std::string& family,
                         const std::string& sim, unsigned ext) {
                 return build_code(f, dims, r, parse_family(family), parse_simulation(sim), ext);
             }),
             py::arg("field"), py::arg("dims"), py::arg("r"), py::arg("family") = "Dprime", py::arg("sim") = "none",
             py::arg("ext") = 0)
        .def_property_readonly("dimension", &RankMetricCode::dimension)
        .def_property_readonly("length", &RankMetricCode::length)
        .def("encode",
             [](const RankMetricCode& c, const std::vector<std::uint64_t>& message) {
                 return to_ints(encode(c, to_fels(c.field, message)).entries());
             })
        .def("syndrome",
             [](const RankMetricCode& c, const std::vector<std::uint64_t>& word) {
                 return to_ints(code_syndrome(c, to_tensor(c.field, c.dims, word)));
             })
        .def("decode", [](const RankMetricCode& c, const std::vector<std::uint64_t>& received) {
            const DecodeResult res = decode(c, to_tensor(c.field, c.dims, received));
            return py::make_tuple(to_ints(res.codeword.entries()), to_ints(res.error.entries()));
        });
}

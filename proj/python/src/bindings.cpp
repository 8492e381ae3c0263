#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "spinlab/cli.hpp"
#include "spinlab/experiments.hpp"

namespace py = pybind11;
using namespace spinlab;

namespace {

// Python ints cross the boundary as decimal strings.
py::int_ to_py(const Int& v) { return py::int_(py::str(v.get_str())); }
Int from_py(const py::int_& v) { return parse_int(py::str(v)); }

FieldElement element(const Field& K, const std::vector<py::int_>& coords) {
    if ((int)coords.size() != K.n()) throw Error(ErrorKind::ConfigError, "wrong number of coordinates");
    FieldElement a = K.zero();
    for (int i = 0; i < K.n(); ++i) a[i] = from_py(coords[i]);
    return a;
}

std::vector<py::int_> coords(const FieldElement& a) {
    std::vector<py::int_> out;
    for (auto& c : a.coords) out.push_back(to_py(c));
    return out;
}

// pybind11 holders must be non-const.
using PyField = std::shared_ptr<Field>;

SpinConfig config(const Field& K, const std::vector<int>& S) { return make_spin_config(K, S); }

}  // namespace

PYBIND11_MODULE(_spinlab, m) {
    m.doc() = "spins of prime ideals, class group ranks and sieve sums";

    py::register_exception<Error>(m, "SpinlabError");

    py::class_<Field, PyField>(m, "Field")
        .def_property_readonly("name", &Field::name)
        .def_property_readonly("degree", &Field::n)
        .def_property_readonly("signature", [](const Field& K) { return std::make_pair(K.r1(), K.r2()); })
        .def("automorphism_orders",
             [](const Field& K) {
                 std::vector<int> o;
                 for (int s = 0; s < K.n(); ++s) o.push_back(K.order(s));
                 return o;
             })
        .def("norm", [](const Field& K, const std::vector<py::int_>& a) { return to_py(K.norm(element(K, a))); })
        .def("mul",
             [](const Field& K, const std::vector<py::int_>& a, const std::vector<py::int_>& b) {
                 return coords(K.mul(element(K, a), element(K, b)));
             })
        .def("apply",
             [](const Field& K, int s, const std::vector<py::int_>& a) { return coords(K.apply(s, element(K, a))); })
        .def("big_f", [](const Field& K) { return to_py(compute_bigF(K).F); })
        .def("validation_ok", [](const Field& K) { return K.report().ok(); });

    m.def("load_preset", [](const std::string& name) { return std::const_pointer_cast<Field>(load_preset(name)); }, py::arg("name"));
    m.def("preset_names", &preset_names);
    m.def("check_S_valid", [](const PyField& K, const std::vector<int>& S) { return check_S_valid(S, *K); });

    m.def(
        "spin_stream",
        [](const PyField& K, u64 X, const std::vector<int>& S, int threads) {
            auto cfg = config(*K, S);
            std::vector<py::dict> out;
            for (auto& r : spin_stream(X, cfg, K, threads)) {
                py::dict d;
                d["p"] = r.p;
                d["ideal_key"] = r.ideal_key;
                d["generator"] = coords(r.generator);
                d["spins"] = r.spins;
                d["s"] = r.s;
                out.push_back(d);
            }
            return out;
        },
        py::arg("field"), py::arg("max_norm"), py::arg("S"), py::arg("threads") = 1);

    m.def(
        "type1_sum",
        [](const PyField& K, const std::vector<u64>& checkpoints, const std::vector<int>& S, bool enumerate) {
            Type1Options o;
            o.checkpoints = checkpoints;
            if (enumerate) o.method = Type1Method::Enumeration;
            std::vector<std::tuple<u64, long, long>> out;
            for (auto& c : type1_sum(o, config(*K, S), *K)) out.emplace_back(c.X, c.value, c.count);
            return out;
        },
        py::arg("field"), py::arg("checkpoints"), py::arg("S"), py::arg("enumerate") = false);

    m.def(
        "sqf",
        [](const py::int_& n, const py::int_& mF) {
            auto s = sqf(from_py(n), from_py(mF));
            return py::make_tuple(to_py(s.q), to_py(s.g), to_py(s.r));
        },
        py::arg("n"), py::arg("mF"));

    m.def(
        "charsum_scan",
        [](u64 q, int n, u64 k, u64 l) {
            auto r = charsum_scan({q, n, k, l});
            py::dict d;
            d["q"] = r.q;
            d["N"] = r.N;
            d["max"] = r.max;
            d["exponent"] = r.exponent;
            return d;
        },
        py::arg("q"), py::arg("n") = 3, py::arg("k") = 1, py::arg("l") = 0);

    m.def("class_number", &class_number, py::arg("D"));
    m.def("two_power_rank", &two_power_rank, py::arg("p"), py::arg("k"));
    m.def("splits_completely", [](const PyField& K, u64 p) { return splits_completely(p, *K); });

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int rc = run_cli(args, out, err);
            return py::make_tuple(rc, out.str(), err.str());
        },
        py::arg("args"));
}

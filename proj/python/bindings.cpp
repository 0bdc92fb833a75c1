#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "piclat/suites.hpp"

namespace py = pybind11;
using namespace piclat;

namespace {

std::vector<long> factors(const FGAbGroup& g) {
    std::vector<long> v;
    for (const auto& f : g.factors) v.push_back(f.get_si());
    return v;
}

Pi1Element delta_for(const Group& g, std::optional<long> delta, const std::string& delta_vec) {
    return resolve_delta(g, delta, delta_vec);
}

}  // namespace

PYBIND11_MODULE(_piclat, m) {
    m.doc() = "Picard groups of moduli stacks of G-bundles over pointed curves";

    // args = (kind, message); the module attribute keeps the type alive
    static PyObject* exc_type = py::exception<Error>(m, "PiclatError", PyExc_ValueError).ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetObject(exc_type, py::make_tuple(e.kind(), e.what()).ptr());
        }
    });

    m.def(
        "compute_json",
        [](const std::string& group, const std::string& quantity, int g, int n, std::optional<long> delta,
           const std::string& delta_vec, bool rigidified, int characteristic, const std::string& datum_text) {
            ComputeRequest r;
            r.group = group;
            r.quantity = quantity;
            r.g = g;
            r.n = n;
            r.delta = delta;
            r.delta_vec = delta_vec;
            r.rigidified = rigidified;
            r.characteristic = characteristic;
            r.datum_text = datum_text;
            py::gil_scoped_release nogil;
            return compute(r).dump();
        },
        py::arg("group") = "", py::arg("quantity") = "pi1", py::arg("g") = 1, py::arg("n") = 0,
        py::arg("delta") = py::none(), py::arg("delta_vec") = "", py::arg("rigidified") = false,
        py::arg("characteristic") = 0, py::arg("datum_text") = "");

    m.def("quantities", &compute_quantities);

    m.def("pi1", [](const std::string& group) { return factors(make_group(group).parts.pi1); });

    m.def(
        "coker_ev",
        [](const std::string& group, std::optional<long> delta, const std::string& delta_vec, bool tilde) {
            Group g = make_group(group);
            return factors(ev_hom(g, delta_for(g, delta, delta_vec), tilde ? EvVariant::EV_TILDE : EvVariant::EV).cokernel);
        },
        py::arg("group"), py::arg("delta") = 0, py::arg("delta_vec") = "", py::arg("tilde") = false);

    m.def("coker_r_G", [](const std::string& group) { return factors(coker_r_G(make_group(group))); });

    m.def(
        "multiplier",
        [](const std::string& group, bool even) {
            Group g = make_group(group);
            Rat q = multiplier(g.form(even ? FormKind::PAIR_EVEN : FormKind::PAIR_SC_EVEN));
            return py::make_tuple(q.get_num().get_si(), q.get_den().get_si());
        },
        py::arg("group"), py::arg("even") = false);

    m.def(
        "coker_omega",
        [](const std::string& group, int g, int n, std::optional<long> delta, const std::string& delta_vec) {
            Group gr = make_group(group);
            return factors(coker_omega_group(gr, marked_genus(g, n), delta_for(gr, delta, delta_vec)));
        },
        py::arg("group"), py::arg("g"), py::arg("n") = 0, py::arg("delta") = 0, py::arg("delta_vec") = "");

    m.def(
        "coker_gamma_bar",
        [](const std::string& group, int g, std::optional<long> delta, const std::string& delta_vec) {
            Group gr = make_group(group);
            return factors(coker_gamma_bar(gr, g, delta_for(gr, delta, delta_vec)));
        },
        py::arg("group"), py::arg("g"), py::arg("delta") = 0, py::arg("delta_vec") = "");

    m.def(
        "table_json",
        [](const std::string& family, int nmax, int lmin, int lmax, int dim, int g, int dmax) {
            TableOptions o;
            o.family = family;
            o.nmax = nmax;
            o.lmin = lmin;
            o.lmax = lmax;
            o.dim = dim;
            o.g = g;
            o.dmax = dmax;
            py::gil_scoped_release nogil;
            return table_json(family, family_table(o, worker_threads())).dump();
        },
        py::arg("family"), py::arg("nmax") = 6, py::arg("lmin") = 0, py::arg("lmax") = 0, py::arg("dim") = 1,
        py::arg("g") = 3, py::arg("dmax") = 4);

    m.def("verify", [](const std::string& suite) {
        SuiteResult r;
        {
            py::gil_scoped_release nogil;
            r = run_suite(suite, worker_threads());
        }
        py::dict d;
        d["suite"] = r.name;
        d["passed"] = r.passed;
        d["failed"] = r.failed;
        d["failures"] = r.failures;
        d["seconds"] = r.seconds;
        d["ok"] = r.ok();
        return d;
    });

    m.def("suite_names", &suite_names);

    m.def("bruteforce_invariant_forms", [](const std::string& tag) {
        auto b = oracle::bruteforce_invariant_forms(tag);
        py::dict d;
        d["weyl_order"] = b.weyl_order;
        d["kernel_rank"] = b.kernel_rank;
        d["gram"] = b.gram;
        return d;
    });

    m.def("exit_code_for", &exit_code_for);
}

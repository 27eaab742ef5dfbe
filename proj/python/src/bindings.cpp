#include <memory>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trinerve/abgrp.hpp"
#include "trinerve/budget.hpp"
#include "trinerve/cat.hpp"
#include "trinerve/emac.hpp"
#include "trinerve/errors.hpp"
#include "trinerve/highercat.hpp"
#include "trinerve/homology.hpp"
#include "trinerve/postnikov.hpp"
#include "trinerve/ssx.hpp"

namespace py = pybind11;
using namespace trinerve;

namespace {

py::list homology_list(const HomologyResult& r) {
    py::list out;
    for (const auto& g : r.groups) {
        py::dict d;
        d["degree"] = g.degree;
        d["betti"] = g.betti;
        d["torsion"] = g.torsion;
        d["coeff"] = g.coeff.tag();
        d["text"] = g.describe();
        out.append(d);
    }
    return out;
}

std::vector<std::int64_t> invariants(const FiniteGroup& g) { return abelian_invariants(g); }

py::dict postnikov_report(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(e.what());
    }
    auto P = postnikov_from_json(j);
    P.check_shape();
    py::dict out;
    bool h_ok = validate_h(P.A, P.h);
    out["validate_h"] = h_ok;
    out["validate_t"] = h_ok && is_normalized_t(P) && check_t(P).ok();
    if (!out["validate_t"].cast<bool>()) return out;
    auto Bg = realize(P);
    auto f = phi_map(Bg, P, 4);
    out["phi_iso"] = verify_simplicial_map(f).ok() && is_iso_up_to(f, 4);
    auto g = phi_map(Bg, nerve_cocycle(Bg), 4);
    out["phi_iso_nerve_cocycle"] = verify_simplicial_map(g).ok() && is_iso_up_to(g, 4);
    out["coherence"] = coherence_check(Bg).ok();
    py::list pi;
    for (const auto& G : bicatgroup_homotopy(Bg)) pi.append(invariants(G));
    out["homotopy_groups"] = pi;
    return out;
}

}  // namespace

PYBIND11_MODULE(_trinerve, m) {
    m.doc() = "Nerves of strict higher categories, Eilenberg-Mac Lane complexes and Postnikov data";
    static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
    static py::exception<ResourceError> resource_error(m, "BudgetError", PyExc_MemoryError);
    static py::exception<VerificationError> verification_error(m, "VerificationError", PyExc_RuntimeError);
    static py::exception<StructuralError> structural_error(m, "StructuralError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InputError& e) {
            input_error(e.what());
        } catch (const ResourceError& e) {
            resource_error(e.what());
        } catch (const VerificationError& e) {
            verification_error(e.what());
        } catch (const StructuralError& e) {
            structural_error(e.what());
        }
    });

    py::class_<TruncSSet>(m, "SimplicialSet")
        .def_property_readonly("trunc", &TruncSSet::trunc)
        .def("counts", &TruncSSet::counts, "nondegenerate simplices per dimension")
        .def("total_counts",
             [](const TruncSSet& X) {
                 std::vector<std::uint64_t> out;
                 for (int d = 0; d <= X.trunc(); ++d) out.push_back(X.total_count(d));
                 return out;
             })
        .def("identities_ok", [](const TruncSSet& X) { return check_simplicial_identities(X).ok(); })
        .def("kan_ok",
             [](const TruncSSet& X, int n) {
                 for (int k = 0; k <= n; ++k)
                     if (!kan_horn_check(X, n, k).ok()) return false;
                 return true;
             })
        .def("to_ssx", &write_ssx)
        .def_static("from_ssx", &read_ssx)
        .def("__eq__", [](const TruncSSet& a, const TruncSSet& b) { return a == b; });

    m.def("nerve_ordinal", [](int p, int N) { return nerve(ordinal_category(p), N); }, py::arg("p"), py::arg("N"));
    m.def("nerve_cyclic", [](int order, int N) { return nerve(group_category(FiniteGroup::cyclic(order)), N); },
          py::arg("order"), py::arg("N"));
    m.def("k_complex", [](int m_, int n, int N) { return k_complex(FgAbGroup::cyclic(m_), n, N); }, py::arg("m"),
          py::arg("n"), py::arg("N"));
    m.def("geometric_nerve_sigma2",
          [](int m_, int N) { return geometric_nerve_3(suspension_sigma2(FgAbGroup::cyclic(m_)), N); }, py::arg("m"),
          py::arg("N"));
    m.def("homology",
          [](const TruncSSet& X, const std::vector<int>& degrees, const std::string& coeff) {
              return homology_list(homology(X, degrees, Coefficients::parse(coeff)));
          },
          py::arg("sset"), py::arg("degrees"), py::arg("coeff") = "z");
    m.def("postnikov_report", &postnikov_report, py::arg("json_text"));
    m.def("set_budget", &set_size_budget);
    m.def("budget", &size_budget);
}

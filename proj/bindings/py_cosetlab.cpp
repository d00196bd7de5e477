#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cosetlab/contracting.hpp"
#include "cosetlab/convergence.hpp"
#include "cosetlab/experiment.hpp"
#include "cosetlab/finite_rep.hpp"
#include "cosetlab/gram.hpp"
#include "cosetlab/thinness.hpp"

namespace py = pybind11;
using namespace cosetlab;

namespace {

GroupElement parse_or_throw(const std::string& enc) { return parse_element(enc); }

Subgroup subgroup_from_name(const std::string& name, const py::kwargs& kwargs) {
  if (name == "trivial") return Subgroup::trivial();
  if (name == "heis-center") return Subgroup::heis_center();
  if (name == "lampbs-base") return Subgroup::lamp_base();
  if (name == "lampbs-normal") return Subgroup::lamp_normal();
  if (name == "aff-scale") return Subgroup::aff_scale();
  if (name == "full") return Subgroup::full_group();
  if (name == "zd-slice")
    return Subgroup::zd_slice(kwargs["j"].cast<int>(), kwargs["d"].cast<int>());
  if (name == "symfix") return Subgroup::sym_fix(kwargs["K"].cast<std::vector<long>>());
  if (name == "finite") {
    std::vector<GroupElement> gens;
    for (const auto& s : kwargs["generators"].cast<std::vector<std::string>>())
      gens.push_back(parse_element(s));
    return Subgroup::finite(std::move(gens));
  }
  throw ConfigError("unknown subgroup \"" + name + "\"");
}

FolnerGen folner_from_name(const std::string& name, const py::kwargs& kwargs) {
  if (name == "box") {
    bool centered = kwargs.contains("centered") && kwargs["centered"].cast<bool>();
    return FolnerGen::box(kwargs["d"].cast<int>(), centered);
  }
  if (name == "heis-box") return FolnerGen::heis_box();
  if (name == "sym-ball") return FolnerGen::sym_ball();
  if (name == "lamp-line") return FolnerGen::lamp_line(kwargs["p"].cast<int>());
  if (name == "aff-rect") {
    int p = kwargs.contains("p") ? kwargs["p"].cast<int>() : 2;
    return FolnerGen::semidirect_rect(FolnerGen::aff_trans_box(), FolnerGen::aff_scale_geom(p));
  }
  if (name == "cyc-interval") return FolnerGen::cyc_interval(kwargs["m"].cast<long>());
  throw ConfigError("unknown folner generator \"" + name + "\"");
}

}  // namespace

PYBIND11_MODULE(_cosetlab, m) {
  m.doc() = "exact experiments with ergodic averages on coset spaces";

  py::register_exception<UsageError>(m, "UsageError");
  py::register_exception<PreconditionError>(m, "PreconditionError");
  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<BudgetError>(m, "BudgetError");
  py::register_exception<InvariantFailure>(m, "InvariantFailure");

  py::class_<GroupElement>(m, "GroupElement")
      .def("__str__", [](const GroupElement& g) { return encode(g); })
      .def("__repr__", [](const GroupElement& g) { return "GroupElement(" + encode(g) + ")"; })
      .def("__eq__", [](const GroupElement& a, const GroupElement& b) { return a == b; })
      .def("__hash__", [](const GroupElement& g) { return hash_element(g); })
      .def("is_identity", &GroupElement::is_identity);

  py::class_<Subgroup>(m, "Subgroup")
      .def("__repr__", [](const Subgroup& h) { return "Subgroup(" + h.name() + ")"; });

  py::class_<FolnerGen>(m, "FolnerGen")
      .def("__repr__", [](const FolnerGen& g) { return "FolnerGen(" + g.name() + ")"; });

  py::class_<FiniteSet>(m, "FiniteSet")
      .def("__len__", &FiniteSet::size)
      .def("elements", [](const FiniteSet& f) {
        std::vector<std::string> out;
        for (const auto& g : f) out.push_back(encode(g));
        return out;
      });

  m.def("element", &parse_or_throw, py::arg("encoding"),
        "parse a group element from its text encoding");
  m.def("encode", [](const GroupElement& g) { return encode(g); });
  m.def("multiply", &multiply);
  m.def("inverse", &inverse);
  m.def("conjugate", &conjugate);
  m.def("identity_of", [](const GroupElement& g) { return identity(group_of(g)); });

  m.def("subgroup", &subgroup_from_name, py::arg("name"),
        "subgroup descriptor by name (trivial, heis-center, zd-slice, symfix, ...)");
  m.def("member", &member, py::arg("g"), py::arg("h"));
  m.def("coset_key", [](const GroupElement& g, const Subgroup& h) {
    return encode(canonicalize(g, h));
  });

  m.def("folner", &folner_from_name, py::arg("name"), "Folner generator by name");
  m.def("generate", [](const FolnerGen& gen, long n) { return generate(gen, n); });
  m.def("left_defect",
        [](const FiniteSet& f, const GroupElement& t) { return rat_str(left_defect(f, t)); });
  m.def("right_defect",
        [](const FiniteSet& f, const GroupElement& t) { return rat_str(right_defect(f, t)); });
  m.def("adversarial_translate",
        [](const FiniteSet& f, const GroupElement& t, long budget) {
          AdversarialResult r = adversarial_translate(f, t, budget);
          py::dict d;
          d["found"] = r.found;
          if (r.found) d["s"] = encode(r.s);
          d["ratio"] = rat_str(r.ratio);
          return d;
        },
        py::arg("f"), py::arg("t"), py::arg("budget") = 64);

  m.def("avg_norm_sq_delta", [](const FiniteSet& f, const Subgroup& h) {
    return rat_str(avg_norm_sq_delta(f, h));
  });
  m.def("translated_right", [](const FiniteSet& f, const GroupElement& s) {
    return f.translated_right(s);
  });

  m.def("contract_sym", [](const std::vector<long>& K, const FiniteSet& f) {
    return encode(contract(ContractingTriple::sym(K), f));
  });
  m.def("contract_hnn", [](int p, const FiniteSet& f) {
    return encode(contract(ContractingTriple::hnn_zp(p), f));
  });
  m.def("index_growth", [](int p, long k) {
    return index_growth(ContractingTriple::hnn_zp(p), k).get_str();
  });

  m.def("run_experiment", [](const std::string& config_json, const std::string& out_dir) {
    nlohmann::json cfg = nlohmann::json::parse(config_json);
    RunResult r = run_experiment(cfg, out_dir);
    py::dict d;
    d["exit_code"] = r.exit_code;
    d["message"] = r.message;
    d["output_files"] = r.output_files;
    return d;
  });

  m.attr("__version__") = "0.1.0";
}

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "formkit/cli.hpp"
#include "formkit/decomp.hpp"
#include "formkit/io.hpp"
#include "formkit/monotone.hpp"
#include "formkit/represent.hpp"

namespace py = pybind11;
using namespace formkit;

namespace {

py::object document_to_python(io::Document doc) {
  return std::visit([](auto&& v) { return py::cast(std::move(v)); }, std::move(doc));
}

std::string document_to_text(const py::object& obj) {
  if (py::isinstance<HermitianForm>(obj)) return io::dump(io::to_json(obj.cast<HermitianForm>()));
  if (py::isinstance<LinearRelation>(obj)) return io::dump(io::to_json(obj.cast<LinearRelation>()));
  if (py::isinstance<ContractionParam>(obj)) return io::dump(io::to_json(obj.cast<ContractionParam>()));
  if (py::isinstance<FormSequence>(obj)) return io::dump(io::to_json(obj.cast<FormSequence>()));
  throw py::type_error("expected a form, relation, contraction or sequence");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Semibounded forms, linear relations and their decompositions.";

  static PyObject* base = nullptr;
  static PyObject* kinds[3] = {nullptr, nullptr, nullptr};
  base = PyErr_NewException("formkit._core.FormkitError", PyExc_ValueError, nullptr);
  kinds[0] = PyErr_NewException("formkit._core.ParseError", base, nullptr);
  kinds[1] = PyErr_NewException("formkit._core.InvariantError", base, nullptr);
  kinds[2] = PyErr_NewException("formkit._core.PreconditionError", base, nullptr);
  m.attr("FormkitError") = py::handle(base);
  m.attr("ParseError") = py::handle(kinds[0]);
  m.attr("InvariantError") = py::handle(kinds[1]);
  m.attr("PreconditionError") = py::handle(kinds[2]);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(kinds[static_cast<int>(e.kind())], e.what());
    }
  });

  py::class_<Tolerance>(m, "Tolerance")
      .def(py::init<>())
      .def(py::init([](double rank_rel, double eq_abs, double psd_clamp) {
             Tolerance t{rank_rel, eq_abs, psd_clamp};
             t.validate();
             return t;
           }),
           py::arg("rank_rel"), py::arg("eq_abs"), py::arg("psd_clamp"))
      .def_readwrite("rank_rel", &Tolerance::rank_rel)
      .def_readwrite("eq_abs", &Tolerance::eq_abs)
      .def_readwrite("psd_clamp", &Tolerance::psd_clamp);

  py::class_<Subspace>(m, "Subspace")
      .def_static("from_orthonormal", &Subspace::from_orthonormal, py::arg("basis"), py::arg("tol") = Tolerance{})
      .def_static("full", &Subspace::full)
      .def_static("zero", &Subspace::zero)
      .def_property_readonly("ambient", &Subspace::ambient)
      .def_property_readonly("dim", &Subspace::dim)
      .def_property_readonly("basis", &Subspace::basis)
      .def("projector", &Subspace::projector)
      .def("same_as", &Subspace::same_as, py::arg("other"), py::arg("tol") = Tolerance{});

  m.def("orthonormalize", &orthonormalize, py::arg("columns"), py::arg("tol") = Tolerance{});
  m.def("psd_sqrt", &psd_sqrt, py::arg("m"), py::arg("tol") = Tolerance{});
  m.def("pinv", &pinv, py::arg("m"), py::arg("tol") = Tolerance{});

  py::class_<LinearRelation>(m, "LinearRelation")
      .def_static("from_columns", &LinearRelation::from_columns, py::arg("dim_h"), py::arg("dim_k"),
                  py::arg("columns"), py::arg("tol") = Tolerance{})
      .def_static("from_matrix", &LinearRelation::from_matrix, py::arg("m"), py::arg("tol") = Tolerance{})
      .def_property_readonly("dim_h", &LinearRelation::dim_h)
      .def_property_readonly("dim_k", &LinearRelation::dim_k)
      .def_property_readonly("graph_basis", [](const LinearRelation& r) { return r.graph().basis(); })
      .def("same_as", &LinearRelation::same_as, py::arg("other"), py::arg("tol") = Tolerance{});
  m.def("adjoint", &adjoint, py::arg("r"), py::arg("tol") = Tolerance{});
  m.def("compose", &compose, py::arg("s"), py::arg("r"), py::arg("tol") = Tolerance{});

  py::class_<HermitianForm>(m, "HermitianForm")
      .def(py::init([](const Matrix& domain_basis, const Matrix& matrix, const Tolerance& tol) {
             return HermitianForm(Subspace::from_orthonormal(domain_basis, tol), matrix, tol);
           }),
           py::arg("domain_basis"), py::arg("matrix"), py::arg("tol") = Tolerance{})
      .def_static("everywhere", &HermitianForm::everywhere, py::arg("matrix"), py::arg("tol") = Tolerance{})
      .def_property_readonly("ambient", &HermitianForm::ambient)
      .def_property_readonly("domain", &HermitianForm::domain)
      .def_property_readonly("matrix", &HermitianForm::matrix)
      .def("ambient_matrix", &HermitianForm::ambient_matrix)
      .def("same_as", &HermitianForm::same_as, py::arg("other"), py::arg("tol") = Tolerance{});
  m.def("lower_bound", &lower_bound, py::arg("t"), py::arg("tol") = Tolerance{});
  m.def("leq", &leq, py::arg("t1"), py::arg("t2"), py::arg("tol") = Tolerance{});
  m.def("add", &add, py::arg("t1"), py::arg("t2"), py::arg("tol") = Tolerance{});

  py::class_<FormClass>(m, "FormClass")
      .def_readonly("closable", &FormClass::closable)
      .def_readonly("closed", &FormClass::closed)
      .def_readonly("singular", &FormClass::singular)
      .def_readonly("certificate", &FormClass::certificate);
  m.def("classify", &classify, py::arg("t"), py::arg("tol") = Tolerance{});

  py::class_<RepresentingMap>(m, "RepresentingMap")
      .def_readonly("domain", &RepresentingMap::domain)
      .def_readonly("shift", &RepresentingMap::shift)
      .def_readonly("q", &RepresentingMap::q)
      .def_readonly("codomain_dim", &RepresentingMap::codomain_dim)
      .def_readonly("minimal", &RepresentingMap::minimal);
  m.def("representing_map", &representing_map, py::arg("t"), py::arg("c"), py::arg("minimal") = true,
        py::arg("tol") = Tolerance{});
  m.def("connect_representations", &connect_representations, py::arg("q1"), py::arg("q2"),
        py::arg("tol") = Tolerance{});

  py::class_<ContractionParam>(m, "ContractionParam")
      .def(py::init<const Matrix&, const Tolerance&>(), py::arg("k"), py::arg("tol") = Tolerance{})
      .def_property_readonly("matrix", &ContractionParam::matrix)
      .def("is_projection", &ContractionParam::is_projection, py::arg("tol") = Tolerance{});

  py::class_<DecompositionFlags>(m, "DecompositionFlags")
      .def_readonly("mutually_singular", &DecompositionFlags::mutually_singular)
      .def_readonly("minimal_column", &DecompositionFlags::minimal_column)
      .def_readonly("is_lebesgue_type", &DecompositionFlags::is_lebesgue_type);
  py::class_<SumDecomposition>(m, "SumDecomposition")
      .def_readonly("t1", &SumDecomposition::t1)
      .def_readonly("t2", &SumDecomposition::t2)
      .def_readonly("k", &SumDecomposition::k)
      .def_readonly("flags", &SumDecomposition::flags)
      .def_readonly("certificate", &SumDecomposition::certificate);
  m.def("decompose_by_contraction", &decompose_by_contraction, py::arg("t"), py::arg("c"), py::arg("k"),
        py::arg("tol") = Tolerance{});
  m.def("recover_contraction",
        py::overload_cast<const HermitianForm&, double, const HermitianForm&, const HermitianForm&, const Tolerance&>(
            &recover_contraction),
        py::arg("t"), py::arg("c"), py::arg("t1"), py::arg("t2"), py::arg("tol") = Tolerance{});
  m.def("column_minimal", &column_minimal, py::arg("t"), py::arg("c"), py::arg("k"), py::arg("tol") = Tolerance{});
  m.def("parallel_sum_operators", &parallel_sum_operators, py::arg("a"), py::arg("b"), py::arg("tol") = Tolerance{});
  m.def("parallel_sum_forms", &parallel_sum_forms, py::arg("h1"), py::arg("h2"), py::arg("tol") = Tolerance{});
  m.def("is_mutually_singular", &is_mutually_singular, py::arg("h1"), py::arg("h2"), py::arg("tol") = Tolerance{});
  m.def("lebesgue_decomposition", &lebesgue_decomposition, py::arg("t"), py::arg("c"), py::arg("tol") = Tolerance{});

  py::class_<SelfadjointRelation>(m, "SelfadjointRelation")
      .def_static("from_relation", &SelfadjointRelation::from_relation, py::arg("rel"), py::arg("tol") = Tolerance{})
      .def_property_readonly("rel", &SelfadjointRelation::rel)
      .def_property_readonly("domain", &SelfadjointRelation::domain)
      .def_property_readonly("mul", &SelfadjointRelation::mul)
      .def_property_readonly("operator_part", &SelfadjointRelation::operator_part)
      .def_property_readonly("lower_bound", &SelfadjointRelation::lower_bound);
  m.def("represent_form", &represent_form, py::arg("t"), py::arg("c"), py::arg("tol") = Tolerance{});
  m.def("verify_first_representation", &verify_first_representation, py::arg("t"), py::arg("a"),
        py::arg("tol") = Tolerance{});
  m.def("form_from_relation", &form_from_relation, py::arg("a"), py::arg("c"), py::arg("tol") = Tolerance{});
  m.def("relation_leq", &relation_leq, py::arg("h1"), py::arg("h2"), py::arg("c"), py::arg("tol") = Tolerance{});
  m.def("resolvent", &resolvent, py::arg("a"), py::arg("lam"), py::arg("tol") = Tolerance{});

  py::enum_<Monotonicity>(m, "Monotonicity")
      .value("nondecreasing", Monotonicity::nondecreasing)
      .value("nonincreasing", Monotonicity::nonincreasing);
  py::class_<FormSequence>(m, "FormSequence")
      .def_static(
          "affine",
          [](const HermitianForm& r, const HermitianForm& s, Monotonicity sense, const Tolerance& tol) {
            return FormSequence(AffineFamily{r, s}, sense, tol);
          },
          py::arg("r"), py::arg("s"), py::arg("sense"), py::arg("tol") = Tolerance{})
      .def_static(
          "chain",
          [](std::vector<HermitianForm> forms, Monotonicity sense, std::optional<double> lower_bound,
             const Tolerance& tol) { return FormSequence(ExplicitChain{std::move(forms), lower_bound}, sense, tol); },
          py::arg("forms"), py::arg("sense"), py::arg("lower_bound") = py::none(), py::arg("tol") = Tolerance{})
      .def_property_readonly("sense", &FormSequence::sense)
      .def("term", &FormSequence::term);
  m.def("limit", &limit, py::arg("seq"), py::arg("tol") = Tolerance{});

  py::class_<ConvergenceReport>(m, "ConvergenceReport")
      .def_readonly("errors", &ConvergenceReport::errors)
      .def_readonly("exponent", &ConvergenceReport::exponent)
      .def_readonly("monotone_errors", &ConvergenceReport::monotone_errors)
      .def_readonly("below_threshold", &ConvergenceReport::below_threshold);
  m.def("resolvent_convergence", &resolvent_convergence, py::arg("seq"), py::arg("lam"), py::arg("n_max") = 50,
        py::arg("threshold") = 0.1, py::arg("tol") = Tolerance{});

  m.def("loads", [](const std::string& text, const Tolerance& tol) { return document_to_python(io::parse_document(text, tol)); },
        py::arg("text"), py::arg("tol") = Tolerance{}, "Parse a JSON document into the matching object.");
  m.def("dumps", &document_to_text, py::arg("obj"), "Serialize a form, relation, contraction or sequence.");

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "formkit");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command line in process; returns (exit_code, stdout, stderr).");
}

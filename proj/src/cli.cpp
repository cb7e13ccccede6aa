#include "formkit/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "formkit/decomp.hpp"
#include "formkit/io.hpp"
#include "formkit/monotone.hpp"
#include "formkit/represent.hpp"

namespace formkit::cli {

namespace {

using io::Json;
using io::round12;

Json number_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round12(x);
}

template <class T>
T expect(const io::Document& doc, const char* what) {
  if (const T* v = std::get_if<T>(&doc)) return *v;
  throw_parse(std::string("expected a document of kind \"") + what + "\"");
}

double default_shift(const HermitianForm& t, const Tolerance& tol) {
  return t.is_vacuous() ? 0.0 : lower_bound(t, tol);
}

Json inspect_report(const io::Document& doc, const Tolerance& tol) {
  Json r{{"command", "inspect"}};
  if (const auto* t = std::get_if<HermitianForm>(&doc)) {
    const FormClass cls = classify(*t, tol);
    r["kind"] = "form";
    r["ambient_dim"] = t->ambient();
    r["domain_dim"] = t->domain_dim();
    r["lower_bound"] = number_or_null(lower_bound(*t, tol));
    r["closable"] = cls.closable;
    r["closed"] = cls.closed;
    r["singular"] = cls.singular;
    r["certificate"] = cls.certificate;
  } else if (const auto* rel = std::get_if<LinearRelation>(&doc)) {
    const RelationParts p = parts(*rel, tol);
    r["kind"] = "relation";
    r["dim_h"] = rel->dim_h();
    r["dim_k"] = rel->dim_k();
    r["graph_dim"] = rel->graph().dim();
    r["dom_dim"] = p.dom.dim();
    r["ran_dim"] = p.ran.dim();
    r["ker_dim"] = p.ker.dim();
    r["mul_dim"] = p.mul.dim();
    r["is_operator"] = p.mul.dim() == 0;
    r["selfadjoint"] = rel->dim_h() == rel->dim_k() && adjoint(*rel, tol).same_as(*rel, tol);
  } else if (const auto* k = std::get_if<ContractionParam>(&doc)) {
    r["kind"] = "contraction";
    r["dim"] = k->dim();
    r["is_projection"] = k->is_projection(tol);
    const RealVector ev = hermitian_eigen(k->matrix(), tol).values;
    r["min_eigenvalue"] = ev.size() ? number_or_null(ev(0)) : Json(nullptr);
    r["max_eigenvalue"] = ev.size() ? number_or_null(ev(ev.size() - 1)) : Json(nullptr);
    r["overlap_dim"] = overlap_space(*k, tol).dim();
  } else {
    const auto& seq = std::get<FormSequence>(doc);
    const HermitianForm lim = limit(seq, tol);
    r["kind"] = "sequence";
    r["encoding"] = seq.is_affine() ? "affine" : "chain";
    r["sense"] = seq.sense() == Monotonicity::nondecreasing ? "nondecreasing" : "nonincreasing";
    r["common_lower_bound"] = number_or_null(seq.common_lower_bound(tol));
    r["limit_domain_dim"] = lim.domain_dim();
    r["limit_lower_bound"] = number_or_null(lower_bound(lim, tol));
  }
  return r;
}

Json flags_json(const DecompositionFlags& f) {
  return Json{{"mutually_singular", f.mutually_singular},
              {"minimal_column", f.minimal_column},
              {"is_lebesgue_type", f.is_lebesgue_type}};
}

struct DecomposeArgs {
  std::string form;
  std::optional<double> c;
  std::string contraction;
  bool lebesgue = false;
  std::string out_dir = ".";
};

Json decompose_report(const DecomposeArgs& a, const Tolerance& tol) {
  const HermitianForm t = expect<HermitianForm>(io::read_document(a.form, tol), "form");
  if (a.lebesgue == !a.contraction.empty()) throw_parse("decompose needs exactly one of --contraction, --lebesgue");
  const double c = a.c.value_or(default_shift(t, tol));
  if (!t.is_vacuous() && c > lower_bound(t, tol) + tol.psd_clamp) {
    throw_precondition("c is not a lower bound of the form");
  }
  Json r{{"command", "decompose"}, {"c", round12(c)}};
  SumDecomposition dec;
  if (a.lebesgue) {
    dec = lebesgue_decomposition(t, c, tol);
    r["mode"] = "lebesgue";
    r["certificate"] = dec.certificate;
    r["uniqueness"] = lebesgue_uniqueness(t, tol).certificate;
  } else {
    const ContractionParam k = expect<ContractionParam>(io::read_document(a.contraction, tol), "contraction");
    dec = decompose_by_contraction(t, c, k, tol);
    r["mode"] = "contraction";
  }
  r["flags"] = flags_json(dec.flags);
  r["parallel_sum_norm"] = round12(norm2(parallel_sum_forms(shift(dec.t1, -c), dec.t2, tol).matrix()));
  r["t1_lower_bound"] = number_or_null(lower_bound(dec.t1, tol));
  r["t2_lower_bound"] = number_or_null(lower_bound(dec.t2, tol));
  const std::filesystem::path dir(a.out_dir);
  io::write_file((dir / "t1.json").string(), io::to_json(dec.t1));
  io::write_file((dir / "t2.json").string(), io::to_json(dec.t2));
  io::write_file((dir / "k.json").string(), io::to_json(dec.k));
  r["files"] = Json::array({"t1.json", "t2.json", "k.json"});
  return r;
}

Json represent_report(const std::string& path, std::optional<double> c_arg, const std::string& out,
                      const Tolerance& tol) {
  const HermitianForm t = expect<HermitianForm>(io::read_document(path, tol), "form");
  const double c = c_arg.value_or(default_shift(t, tol));
  const SelfadjointRelation a = represent_form(t, c, tol);
  Json r{{"command", "represent"},
         {"c", round12(c)},
         {"dom_dim", a.domain().dim()},
         {"mul_dim", a.mul().dim()},
         {"lower_bound", number_or_null(a.lower_bound())},
         {"operator_part", io::matrix_to_json(a.operator_part())},
         {"first_representation", verify_first_representation(t, a, tol)},
         {"relation", io::to_json(a.rel())}};
  if (!out.empty()) io::write_file(out, io::to_json(a.rel()));
  return r;
}

Json parallel_report(const std::string& p1, const std::string& p2, const std::string& out, const Tolerance& tol) {
  const HermitianForm h1 = expect<HermitianForm>(io::read_document(p1, tol), "form");
  const HermitianForm h2 = expect<HermitianForm>(io::read_document(p2, tol), "form");
  const HermitianForm p = parallel_sum_forms(h1, h2, tol);
  Json r{{"command", "parallel"},
         {"result", io::to_json(p)},
         {"norm", round12(norm2(p.matrix()))},
         {"dual_path_residual", round12(parallel_sum_dual_path_residual(h1, h2, tol))},
         {"mutually_singular", is_mutually_singular(h1, h2, tol)}};
  if (!out.empty()) io::write_file(out, io::to_json(p));
  return r;
}

struct LimitArgs {
  std::string sequence;
  std::optional<double> lambda;
  int n_max = 50;
  double threshold = 0.1;
};

Json limit_report(const LimitArgs& a, const Tolerance& tol) {
  const FormSequence seq = expect<FormSequence>(io::read_document(a.sequence, tol), "sequence");
  const double c = seq.common_lower_bound(tol);
  const double lambda = a.lambda.value_or(std::isfinite(c) ? c - 1.0 : -1.0);
  const HermitianForm lim = limit(seq, tol);
  const ConvergenceReport conv = resolvent_convergence(seq, lambda, a.n_max, a.threshold, tol);

  Json errors = Json::array();
  for (double e : conv.errors) errors.push_back(round12(e));
  Json r{{"command", "limit"},
         {"sense", seq.sense() == Monotonicity::nondecreasing ? "nondecreasing" : "nonincreasing"},
         {"lambda", round12(lambda)},
         {"n_max", a.n_max},
         {"limit", io::to_json(lim)},
         {"errors", std::move(errors)},
         {"final_error", round12(conv.errors.back())},
         {"exponent", conv.exponent ? Json(round12(*conv.exponent)) : Json(nullptr)},
         {"monotone_errors", conv.monotone_errors},
         {"threshold", round12(conv.threshold)},
         {"below_threshold", conv.below_threshold}};
  if (seq.sense() == Monotonicity::nonincreasing) {
    const LimitConnection conn = limit_relation_connection(seq, tol);
    r["t_inf"] = io::to_json(conn.t_inf);
    r["connection"] = Json{{"closure_of_regular_part", conn.closure_of_regular_part},
                           {"closable", conn.closable},
                           {"closed", conn.closed},
                           {"singular_matches", conn.singular_matches},
                           {"certificate", conn.certificate}};
  } else {
    const SelfadjointRelation a_inf = relation_from_resolvent(limit_resolvent(seq, lambda, tol), lambda, tol);
    const double shift_c = std::isfinite(c) ? std::min(c, a_inf.lower_bound()) : lambda;
    r["t_inf"] = io::to_json(form_from_relation(a_inf, shift_c, tol));
  }
  return r;
}

}  // namespace

Tolerance apply_tolerance_override(const std::string& spec, Tolerance base) {
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw_parse("tolerance override items must look like key=value");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    char* end = nullptr;
    const double x = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0') throw_parse("tolerance override value is not a number: " + value);
    if (key == "rank") {
      base.rank_rel = x;
    } else if (key == "eq") {
      base.eq_abs = x;
    } else {
      throw_parse("unknown tolerance override key: " + key);
    }
  }
  return base;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"formkit: semibounded forms, linear relations and their decompositions"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<double> tol_rank;
  std::optional<double> tol_eq;
  app.add_option("--tol-rank", tol_rank, "relative singular-value cutoff");
  app.add_option("--tol-eq", tol_eq, "absolute equality tolerance");

  std::string inspect_path;
  auto* inspect = app.add_subcommand("inspect", "summarize a document");
  inspect->add_option("path", inspect_path)->required();

  DecomposeArgs dec;
  auto* decompose = app.add_subcommand("decompose", "split a form into t1 + t2");
  decompose->add_option("form", dec.form)->required();
  decompose->add_option("--c", dec.c, "lower bound used for the representing map (default m(t))");
  decompose->add_option("--contraction", dec.contraction, "contraction document");
  decompose->add_flag("--lebesgue", dec.lebesgue, "Lebesgue decomposition t_reg + t_sing");
  decompose->add_option("--out-dir", dec.out_dir, "directory for t1.json, t2.json, k.json");

  std::string rep_path;
  std::string rep_out;
  std::optional<double> rep_c;
  auto* represent = app.add_subcommand("represent", "selfadjoint relation of a form");
  represent->add_option("form", rep_path)->required();
  represent->add_option("--c", rep_c, "lower bound used for the representing map (default m(t))");
  represent->add_option("--out", rep_out, "write the relation document here");

  std::string par1;
  std::string par2;
  std::string par_out;
  auto* parallel = app.add_subcommand("parallel", "parallel sum h1 : h2");
  parallel->add_option("h1", par1)->required();
  parallel->add_option("h2", par2)->required();
  parallel->add_option("--out", par_out, "write the parallel sum document here");

  LimitArgs lim;
  auto* limit_cmd = app.add_subcommand("limit", "limit of a monotone sequence and resolvent convergence");
  limit_cmd->add_option("sequence", lim.sequence)->required();
  limit_cmd->add_option("--lambda", lim.lambda, "resolvent point (default c - 1)");
  limit_cmd->add_option("--n-max", lim.n_max, "number of sequence terms");
  limit_cmd->add_option("--threshold", lim.threshold, "bound for the final resolvent error");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    Tolerance tol;
    if (const char* env = std::getenv("FORMKIT_TOL_OVERRIDE")) tol = apply_tolerance_override(env, tol);
    if (tol_rank) tol.rank_rel = *tol_rank;
    if (tol_eq) tol.eq_abs = *tol_eq;
    try {
      tol.validate();
    } catch (const Error& e) {
      throw_parse(e.what());
    }

    Json report;
    if (inspect->parsed()) {
      report = inspect_report(io::read_document(inspect_path, tol), tol);
    } else if (decompose->parsed()) {
      report = decompose_report(dec, tol);
    } else if (represent->parsed()) {
      report = represent_report(rep_path, rep_c, rep_out, tol);
    } else if (parallel->parsed()) {
      report = parallel_report(par1, par2, par_out, tol);
    } else {
      report = limit_report(lim, tol);
    }
    out << io::dump(report);
    return kOk;
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::parse:
        err << "parse error: " << e.what() << "\n";
        return kParseError;
      case ErrorKind::invariant:
        err << "invariant violated: " << e.what() << "\n";
        return kInvariantError;
      case ErrorKind::precondition:
        err << "precondition failed: " << e.what() << "\n";
        return kPreconditionError;
    }
  }
  return kInvariantError;
}

}  // namespace formkit::cli

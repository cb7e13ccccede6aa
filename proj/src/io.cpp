#include "formkit/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace formkit::io {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw_parse(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

Eigen::Index dimension(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw_parse(std::string("field \"") + name + "\" must be a nonnegative integer");
  }
  return static_cast<Eigen::Index>(v.get<long long>());
}

double real_number(const Json& v, const char* what) {
  if (!v.is_number()) throw_parse(std::string(what) + " must be a number");
  return v.get<double>();
}

// Basis matrix whose column count is read from the data (an n x 0 matrix is
// written as n empty rows).
Matrix basis_from_json(const Json& j, Eigen::Index rows, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != rows) {
    throw_parse(std::string("field \"") + name + "\" must have " + std::to_string(rows) + " rows");
  }
  const Eigen::Index cols = rows == 0 ? 0 : (v[0].is_array() ? static_cast<Eigen::Index>(v[0].size()) : -1);
  if (cols < 0) throw_parse(std::string("field \"") + name + "\" must be a nested array");
  return matrix_from_json(v, rows, cols, name);
}

Monotonicity sense_from_json(const Json& j) {
  const Json& v = field(j, "sense");
  if (v == "nondecreasing") return Monotonicity::nondecreasing;
  if (v == "nonincreasing") return Monotonicity::nonincreasing;
  throw_parse("field \"sense\" must be \"nondecreasing\" or \"nonincreasing\"");
}

void expect_kind(const Json& j, const char* kind) {
  const Json& v = field(j, "kind");
  if (v != kind) throw_parse(std::string("expected a document of kind \"") + kind + "\"");
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back(Json::array({round12(m(i, k).real()), round12(m(i, k).imag())}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols, const char* name) {
  const std::string where = std::string("field \"") + name + "\"";
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    throw_parse(where + " must have " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw_parse(where + " must be rectangular with " + std::to_string(cols) + " columns");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const Json& z = row[static_cast<std::size_t>(k)];
      if (!z.is_array() || z.size() != 2) throw_parse(where + " entries must be [re, im] pairs");
      m(i, k) = Complex(real_number(z[0], "real part"), real_number(z[1], "imaginary part"));
    }
  }
  return m;
}

Json to_json(const HermitianForm& t) {
  return Json{{"kind", "form"},
              {"ambient_dim", t.ambient()},
              {"domain_basis", matrix_to_json(t.domain().basis())},
              {"matrix", matrix_to_json(t.matrix())}};
}

Json to_json(const LinearRelation& r) {
  return Json{{"kind", "relation"},
              {"dim_h", r.dim_h()},
              {"dim_k", r.dim_k()},
              {"graph_basis", matrix_to_json(r.graph().basis())}};
}

Json to_json(const ContractionParam& k) {
  return Json{{"kind", "contraction"}, {"dim", k.dim()}, {"matrix", matrix_to_json(k.matrix())}};
}

Json to_json(const FormSequence& seq) {
  Json j{{"kind", "sequence"},
         {"sense", seq.sense() == Monotonicity::nondecreasing ? "nondecreasing" : "nonincreasing"}};
  if (seq.is_affine()) {
    j["encoding"] = "affine";
    j["r"] = to_json(seq.affine().r);
    j["s"] = to_json(seq.affine().s);
  } else {
    j["encoding"] = "chain";
    Json forms = Json::array();
    for (const HermitianForm& t : seq.chain().forms) forms.push_back(to_json(t));
    j["forms"] = std::move(forms);
    if (seq.chain().lower_bound) j["lower_bound"] = round12(*seq.chain().lower_bound);
  }
  return j;
}

HermitianForm form_from_json(const Json& j, const Tolerance& tol) {
  expect_kind(j, "form");
  const Eigen::Index n = dimension(j, "ambient_dim");
  const Matrix basis = basis_from_json(j, n, "domain_basis");
  const Matrix m = matrix_from_json(field(j, "matrix"), basis.cols(), basis.cols(), "matrix");
  return HermitianForm(Subspace::from_orthonormal(basis, tol), m, tol);
}

LinearRelation relation_from_json(const Json& j, const Tolerance& tol) {
  expect_kind(j, "relation");
  const Eigen::Index h = dimension(j, "dim_h");
  const Eigen::Index k = dimension(j, "dim_k");
  const Matrix basis = basis_from_json(j, h + k, "graph_basis");
  return LinearRelation::from_columns(h, k, basis, tol);
}

ContractionParam contraction_from_json(const Json& j, const Tolerance& tol) {
  expect_kind(j, "contraction");
  const Eigen::Index d = dimension(j, "dim");
  return ContractionParam(matrix_from_json(field(j, "matrix"), d, d, "matrix"), tol);
}

FormSequence sequence_from_json(const Json& j, const Tolerance& tol) {
  expect_kind(j, "sequence");
  const Monotonicity sense = sense_from_json(j);
  const Json& enc = field(j, "encoding");
  if (enc == "affine") {
    return FormSequence(AffineFamily{form_from_json(field(j, "r"), tol), form_from_json(field(j, "s"), tol)},
                        sense, tol);
  }
  if (enc == "chain") {
    const Json& forms = field(j, "forms");
    if (!forms.is_array()) throw_parse("field \"forms\" must be an array");
    ExplicitChain chain;
    for (const Json& f : forms) chain.forms.push_back(form_from_json(f, tol));
    if (j.contains("lower_bound")) chain.lower_bound = real_number(j.at("lower_bound"), "lower_bound");
    return FormSequence(std::move(chain), sense, tol);
  }
  throw_parse("field \"encoding\" must be \"affine\" or \"chain\"");
}

Document parse_document(const std::string& text, const Tolerance& tol) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw_parse(std::string("malformed JSON: ") + e.what());
  }
  try {
    const Json& kind = field(j, "kind");
    if (kind == "form") return form_from_json(j, tol);
    if (kind == "relation") return relation_from_json(j, tol);
    if (kind == "contraction") return contraction_from_json(j, tol);
    if (kind == "sequence") return sequence_from_json(j, tol);
  } catch (const Json::exception& e) {
    throw_parse(std::string("invalid document: ") + e.what());
  }
  throw_parse("unknown document kind");
}

Document read_document(const std::string& path, const Tolerance& tol) {
  std::ifstream in(path);
  if (!in) throw_parse("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_document(text.str(), tol);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw_precondition("cannot write " + path);
  out << dump(j);
}

}  // namespace formkit::io

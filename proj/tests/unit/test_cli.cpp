#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <vector>

#include "formkit/cli.hpp"
#include "formkit/error.hpp"
#include "formkit/io.hpp"

using namespace formkit;

namespace {

const std::string kFixtures = FORMKIT_FIXTURES;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "formkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return kFixtures + "/" + name; }

std::filesystem::path scratch_dir(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / ("formkit_cli_" + std::string(name));
  std::filesystem::create_directories(dir);
  return dir;
}

io::Json parse(const std::string& text) { return io::Json::parse(text); }

}  // namespace

TEST(Cli, InspectF1) {
  const Outcome o = run({"inspect", fixture("f1.json")});
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  const auto j = parse(o.out);
  EXPECT_EQ(j["lower_bound"], 2.0);
  EXPECT_EQ(j["domain_dim"], 1);
  EXPECT_EQ(j["closable"], true);
  EXPECT_EQ(j["singular"], false);
}

TEST(Cli, InspectZeroFormIsSingular) {
  const Outcome o = run({"inspect", fixture("zero_form.json")});
  ASSERT_EQ(o.code, cli::kOk);
  EXPECT_EQ(parse(o.out)["singular"], true);
}

TEST(Cli, InspectRelationAndContraction) {
  const auto dir = scratch_dir("inspect");
  const Outcome rep = run({"represent", fixture("f1.json"), "--out", (dir / "rel.json").string()});
  ASSERT_EQ(rep.code, cli::kOk) << rep.err;
  const auto r = parse(run({"inspect", (dir / "rel.json").string()}).out);
  EXPECT_EQ(r["dom_dim"], 1);
  EXPECT_EQ(r["mul_dim"], 1);
  EXPECT_EQ(r["selfadjoint"], true);
  const auto k = parse(run({"inspect", fixture("k_diag10.json")}).out);
  EXPECT_EQ(k["is_projection"], true);
  EXPECT_EQ(k["overlap_dim"], 0);
}

TEST(Cli, ExitCodeTaxonomy) {
  EXPECT_EQ(run({"inspect", fixture("malformed.json")}).code, cli::kParseError);
  EXPECT_EQ(run({"inspect", fixture("missing_field.json")}).code, cli::kParseError);
  EXPECT_EQ(run({"inspect", fixture("no_such_file.json")}).code, cli::kParseError);
  EXPECT_EQ(run({"inspect"}).code, cli::kParseError);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kParseError);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
  const Outcome nh = run({"inspect", fixture("not_hermitian.json")});
  EXPECT_EQ(nh.code, cli::kInvariantError);
  EXPECT_NE(nh.err.find("Hermitian"), std::string::npos);
  const auto dir = scratch_dir("codes");
  EXPECT_EQ(run({"decompose", fixture("identity2.json"), "--c", "0", "--contraction", fixture("k_bad.json"),
                 "--out-dir", dir.string()})
                .code,
            cli::kInvariantError);
  const Outcome above = run({"decompose", fixture("f1.json"), "--c", "3", "--lebesgue", "--out-dir", dir.string()});
  EXPECT_EQ(above.code, cli::kPreconditionError);
  EXPECT_NE(above.err.find("not a lower bound"), std::string::npos);
  EXPECT_EQ(run({"decompose", fixture("f1.json"), "--out-dir", dir.string()}).code, cli::kParseError);
  EXPECT_EQ(run({"represent", fixture("k_diag10.json")}).code, cli::kParseError);
  EXPECT_EQ(run({"limit", fixture("affine_nondecreasing.json"), "--lambda", "5"}).code, cli::kPreconditionError);
}

TEST(Cli, DecomposeIdentityWithCoordinateProjection) {
  const auto dir = scratch_dir("decompose");
  const Outcome o = run({"decompose", fixture("identity2.json"), "--c", "0", "--contraction", fixture("k_diag10.json"),
                         "--out-dir", dir.string()});
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  const auto j = parse(o.out);
  EXPECT_EQ(j["flags"]["mutually_singular"], true);
  EXPECT_EQ(j["flags"]["minimal_column"], true);
  EXPECT_EQ(j["parallel_sum_norm"], 0.0);
  const auto t1 = std::get<HermitianForm>(io::read_document((dir / "t1.json").string()));
  const auto t2 = std::get<HermitianForm>(io::read_document((dir / "t2.json").string()));
  Matrix d01 = Matrix::Zero(2, 2), d10 = Matrix::Zero(2, 2);
  d01(1, 1) = 1;
  d10(0, 0) = 1;
  EXPECT_TRUE(t1.same_as(HermitianForm::everywhere(d01)));
  EXPECT_TRUE(t2.same_as(HermitianForm::everywhere(d10)));
  EXPECT_TRUE(std::filesystem::exists(dir / "k.json"));
}

TEST(Cli, LebesgueOnF1) {
  const auto dir = scratch_dir("lebesgue");
  const Outcome o = run({"decompose", fixture("f1.json"), "--lebesgue", "--out-dir", dir.string()});
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  EXPECT_FALSE(parse(o.out)["certificate"].get<std::string>().empty());
  const auto t2 = std::get<HermitianForm>(io::read_document((dir / "t2.json").string()));
  EXPECT_LE(norm2(t2.matrix()), 0.0);
}

TEST(Cli, RepresentF1) {
  const auto j = parse(run({"represent", fixture("f1.json")}).out);
  EXPECT_EQ(j["mul_dim"], 1);
  EXPECT_EQ(j["dom_dim"], 1);
  EXPECT_EQ(j["lower_bound"], 2.0);
}

TEST(Cli, ParallelDisjointSupports) {
  const auto j = parse(run({"parallel", fixture("diag10.json"), fixture("diag01.json")}).out);
  EXPECT_EQ(j["norm"], 0.0);
  EXPECT_LE(j["dual_path_residual"].get<double>(), 1e-10);
  EXPECT_EQ(j["mutually_singular"], true);
}

TEST(Cli, LimitAffine) {
  const auto j = parse(run({"limit", fixture("affine_nondecreasing.json"), "--lambda", "-1", "--n-max", "50"}).out);
  EXPECT_NEAR(j["final_error"].get<double>(), 1.0 / 52, 1e-9);
  EXPECT_NEAR(j["exponent"].get<double>(), 1.0, 0.1);
  EXPECT_EQ(j["errors"].size(), 50u);
  EXPECT_EQ(j["limit"]["domain_basis"].size(), 2u);
}

TEST(Cli, ReportsAreByteIdentical) {
  const std::vector<std::vector<std::string>> commands = {
      {"inspect", fixture("f1.json")},
      {"represent", fixture("f1.json")},
      {"parallel", fixture("diag10.json"), fixture("diag01.json")},
      {"limit", fixture("affine_nondecreasing.json"), "--lambda", "-1", "--n-max", "50"},
      {"limit", fixture("chain_growing.json")},
  };
  for (const auto& c : commands) {
    const Outcome a = run(c), b = run(c);
    EXPECT_EQ(a.code, cli::kOk) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, ToleranceOverride) {
  const Tolerance t = cli::apply_tolerance_override("rank=1e-6,eq=1e-7", Tolerance{});
  EXPECT_DOUBLE_EQ(t.rank_rel, 1e-6);
  EXPECT_DOUBLE_EQ(t.eq_abs, 1e-7);
  const Tolerance only_eq = cli::apply_tolerance_override("eq=1e-5", Tolerance{});
  EXPECT_DOUBLE_EQ(only_eq.rank_rel, Tolerance{}.rank_rel);
  EXPECT_THROW(cli::apply_tolerance_override("rank=abc", Tolerance{}), Error);
  EXPECT_THROW(cli::apply_tolerance_override("speed=1", Tolerance{}), Error);

  ::setenv("FORMKIT_TOL_OVERRIDE", "rank=oops", 1);
  EXPECT_EQ(run({"inspect", fixture("f1.json")}).code, cli::kParseError);
  ::setenv("FORMKIT_TOL_OVERRIDE", "eq=1e-6", 1);
  EXPECT_EQ(run({"inspect", fixture("f1.json")}).code, cli::kOk);
  ::unsetenv("FORMKIT_TOL_OVERRIDE");
  EXPECT_EQ(run({"--tol-eq", "-1", "inspect", fixture("f1.json")}).code, cli::kParseError);
  EXPECT_EQ(run({"--tol-rank", "1e-8", "--tol-eq", "1e-8", "inspect", fixture("f1.json")}).code, cli::kOk);
}

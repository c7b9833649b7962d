#include <cmath>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "format.hpp"

namespace polyfock::cli {
namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(const std::vector<std::string>& args) {
  const Outcome o = run_cli(args);
  EXPECT_EQ(o.code, kExitOk) << o.err;
  return nlohmann::json::parse(o.out);
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream cl(line);
    std::string cell;
    while (std::getline(cl, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST(ParseComplex, AcceptedForms) {
  using cd = std::complex<double>;
  EXPECT_EQ(parse_complex("2"), cd(2, 0));
  EXPECT_EQ(parse_complex("2+0i"), cd(2, 0));
  EXPECT_EQ(parse_complex("-1.5-2i"), cd(-1.5, -2));
  EXPECT_EQ(parse_complex("3i"), cd(0, 3));
  EXPECT_EQ(parse_complex("i"), cd(0, 1));
  EXPECT_EQ(parse_complex("-i"), cd(0, -1));
  EXPECT_EQ(parse_complex("1e-3+2e1i"), cd(1e-3, 20));
  for (const char* bad : {"", "1 + 2i", "1+", "ii", "2j", "1+2", "abc"}) {
    EXPECT_FALSE(parse_complex(bad).has_value()) << bad;
  }
}

TEST(FormatDouble, SeventeenDigitsAndUnsignedZero) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_complex({1.0, -2.0}), "1-2i");
}

TEST(BasisCommand, Examples) {
  const auto v = run_json({"basis", "--p", "1", "--q", "1", "--eval", "2+0i"});
  EXPECT_NEAR(v["value"][0].get<double>(), 3.0, 1e-14);
  EXPECT_EQ(v["value"][1].get<double>(), 0.0);

  const auto c0 = run_json({"basis", "--p", "0", "--q", "0", "--coeffs"});
  ASSERT_EQ(c0["coeffs"].size(), 1u);
  EXPECT_EQ(c0["coeffs"][0], nlohmann::json::parse(R"([0, 0, "1", "0"])"));
  EXPECT_EQ(c0["scale_sq"], "1");

  const auto c2 = run_json({"basis", "--p", "2", "--q", "2", "--coeffs"});
  EXPECT_EQ(c2["scale_sq"], "1/4");
  EXPECT_EQ(c2["coeffs"][0], nlohmann::json::parse(R"([0, 0, "2", "0"])"));
  EXPECT_EQ(c2["coeffs"][1], nlohmann::json::parse(R"([1, 1, "-4", "0"])"));
  EXPECT_EQ(c2["coeffs"][2], nlohmann::json::parse(R"([2, 2, "1", "0"])"));

  const auto closed = run_json({"basis", "--p", "2", "--q", "2", "--coeffs", "--form", "closed"});
  EXPECT_EQ(closed["form"], "closed");
}

TEST(KernelCommand, Examples) {
  const auto k1 = run_json({"kernel", "--n", "1", "--kind", "poly", "--z", "0", "--w", "0"});
  EXPECT_EQ(k1["value_re"].get<double>(), 1.0);
  const auto k3 = run_json({"kernel", "--n", "3", "--kind", "poly", "--z", "1", "--w", "1"});
  EXPECT_NEAR(k3["value_re"].get<double>(), 3 * std::exp(1.0), 1e-14);
  const auto kt = run_json({"kernel", "--n", "2", "--kind", "true", "--z", "0", "--w", "1"});
  EXPECT_EQ(kt["kind"], "true_poly");
  EXPECT_EQ(kt["value_re"].get<double>(), 0.0);
}

TEST(KernelCommand, SeriesResidual) {
  const auto k = run_json({"kernel", "--n", "3", "--kind", "poly", "--z", "i", "--w", "i",
                           "--series", "200"});
  EXPECT_NEAR(k["series_re"].get<double>(), 3 * std::exp(1.0), 1e-8);
  EXPECT_LT(k["series_residual"].get<double>(), 1e-8);
}

TEST(KernelCommand, CsvHasHeaderRow) {
  const Outcome o = run_cli({"kernel", "--n", "2", "--kind", "true", "--z", "0", "--w", "1",
                             "--format", "csv"});
  ASSERT_EQ(o.code, kExitOk);
  const auto rows = csv_rows(o.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][0], "n");
  EXPECT_EQ(rows[1][1], "true_poly");
}

TEST(ToeplitzCommand, ConstantSymbolGivesOnes) {
  const Outcome o = run_cli({"toeplitz", "--n", "2", "--symbol", "const:1", "--pmax", "10"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto rows = csv_rows(o.out);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"p", "re", "im"}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_NEAR(std::stod(rows[i][1]), 1.0, 1e-9);
  }
}

TEST(ToeplitzCommand, IndicatorColumnIsIncompleteGamma) {
  const Outcome o = run_cli({"toeplitz", "--n", "1", "--symbol", "indicator:1", "--pmax", "5"});
  ASSERT_EQ(o.code, kExitOk);
  const auto rows = csv_rows(o.out);
  // P(p+1, 1) = 1 - e^{-1} sum_{k<=p} 1/k!
  double partial = 0.0;
  double fact = 1.0;
  for (int p = 0; p <= 5; ++p) {
    if (p > 0) fact *= p;
    partial += 1.0 / fact;
    EXPECT_NEAR(std::stod(rows[p + 1][1]), 1.0 - std::exp(-1.0) * partial, 1e-12);
  }
}

TEST(ToeplitzCommand, BlockNormsDecrease) {
  const auto doc = run_json({"toeplitz", "--n", "2", "--blocks", "--dmax", "50", "--symbol",
                             "indicator:1"});
  EXPECT_EQ(doc["d_min"], -1);
  EXPECT_EQ(doc["d_max"], 50);
  const auto& norms = doc["norms"];
  ASSERT_EQ(norms.size(), 52u);
  // Beyond the first diagonals the norms fall monotonically toward the limit 0.
  for (std::size_t i = 2; i < norms.size(); ++i) {
    EXPECT_LT(norms[i].get<double>(), norms[i - 1].get<double>()) << "d=" << int(i) - 1;
  }
  EXPECT_LT(norms.back().get<double>(), 1e-50);
}

TEST(ToeplitzCommand, JsonEigenvalues) {
  const auto doc = run_json({"toeplitz", "--n", "1", "--symbol", "gauss:1", "--pmax", "3",
                             "--format", "json"});
  EXPECT_EQ(doc["values"].size(), 4u);
  EXPECT_NEAR(doc["values"][0][0].get<double>(), 0.5, 1e-12);
}

TEST(VerifyCommand, QuickLaguerrePasses) {
  const Outcome o = run_cli({"verify", "--suite", "laguerre", "--quick"});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_NE(o.out.find("checks passed"), std::string::npos);
}

TEST(VerifyCommand, CorruptedBasisFailsWithNamedCheck) {
  const Outcome o = run_cli({"verify", "--suite", "basis", "--inject-corruption"});
  EXPECT_EQ(o.code, kExitFailure);
  const auto pos = o.out.find("exact_equivalence");
  ASSERT_NE(pos, std::string::npos);
  const auto eol = o.out.find('\n', pos);
  EXPECT_NE(o.out.substr(pos, eol - pos).find("FAIL"), std::string::npos);
}

TEST(ExitCodes, UsageErrorsReturnTwo) {
  const std::vector<std::vector<std::string>> bad{
      {},
      {"frobnicate"},
      {"basis", "--q", "1"},
      {"basis", "--p", "-1", "--q", "0"},
      {"basis", "--p", "1", "--q", "1", "--eval", "2 + i"},
      {"kernel", "--n", "0", "--z", "0", "--w", "0"},
      {"kernel", "--n", "1", "--kind", "bergman", "--z", "0", "--w", "0"},
      {"kernel", "--n", "1", "--z", "0", "--w", "0", "--rel-tol", "0.5"},
      {"toeplitz", "--n", "1", "--symbol", "sin"},
      {"toeplitz", "--n", "1", "--symbol", "indicator:-2"},
      {"verify", "--suite", "everything"},
      {"basis", "--p", "40", "--q", "0", "--coeffs"},
  };
  for (const auto& args : bad) {
    const Outcome o = run_cli(args);
    std::string joined;
    for (const auto& a : args) joined += a + ' ';
    EXPECT_EQ(o.code, kExitUsage) << joined << "\n" << o.err;
    EXPECT_TRUE(o.out.empty()) << joined;
  }
}

TEST(ExitCodes, ComputationFailureReturnsOne) {
  const Outcome o = run_cli({"kernel", "--n", "1", "--z", "30", "--w", "30"});
  EXPECT_EQ(o.code, kExitFailure);
  EXPECT_NE(o.err.find("failed"), std::string::npos);
  const Outcome log = run_cli({"kernel", "--n", "1", "--z", "30", "--w", "30", "--log"});
  EXPECT_EQ(log.code, kExitOk);
}

TEST(ExitCodes, HelpIsSuccess) {
  const Outcome o = run_cli({"--help"});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_NE(o.out.find("toeplitz"), std::string::npos);
}

TEST(Determinism, RepeatedRunsAreByteIdentical) {
  const std::vector<std::vector<std::string>> cmds{
      {"basis", "--p", "3", "--q", "2", "--eval", "0.3-1.1i", "--coeffs"},
      {"kernel", "--n", "4", "--kind", "true", "--z", "0.5+0.5i", "--w", "-1i", "--series", "80"},
      {"toeplitz", "--n", "3", "--symbol", "exp", "--pmax", "40"},
      {"toeplitz", "--n", "2", "--symbol", "rational", "--blocks", "--dmax", "20"},
  };
  for (const auto& args : cmds) {
    const Outcome a = run_cli(args);
    const Outcome b = run_cli(args);
    EXPECT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Output, WritesToFileWhenRequested) {
  const std::string path = ::testing::TempDir() + "polyfock_lambda.csv";
  const Outcome o = run_cli({"toeplitz", "--n", "1", "--symbol", "const:2", "--pmax", "2",
                             "--output", path});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "p,re,im");
}

}  // namespace
}  // namespace polyfock::cli

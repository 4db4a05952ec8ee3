#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "lorentz/cli.hpp"
#include "lorentz/hyperbolic.hpp"
#include "lorentz/io.hpp"
#include "oracles.hpp"

using namespace lorentz;
using io::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

const std::string kG42 = R"([[1,-1,-1,-1],[-1,1,-1,-1],[-1,-1,1,-1],[-1,-1,-1,1]])";

std::string quartic_json() { return io::poly_to_json(oracle::quartic<double>()).dump(); }

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string* header) {
  std::istringstream s(text);
  std::string line;
  std::getline(s, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(s, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(Cli, PermanentExact) {
  for (const char* m : {"ryser", "naive", "derivatives"}) {
    const auto r = run({"permanent", "--exact", "--method", m}, kG42);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(Json::parse(r.out).at("value"), Json("8")) << m;
  }
  const auto f = run({"permanent"}, R"({"rows": [[1,1,1],[1,1,1],[1,1,1]]})");
  EXPECT_EQ(Json::parse(f.out).at("value").get<double>(), 6.0);
}

TEST(Cli, PermanentCapacityMethod) {
  const auto r = run({"permanent", "--method", "capacity"}, R"([[0.5,0.5],[0.5,0.5]])");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_NEAR(j.at("value").get<double>(), 1.0, 1e-6);
  EXPECT_TRUE(j.at("diagnostics").at("bounds_proved").get<bool>());
  const auto g = run({"permanent", "--method", "capacity"}, kG42);
  EXPECT_EQ(g.code, 0) << g.err;
  EXPECT_FALSE(Json::parse(g.out).at("diagnostics").at("bounds_proved").get<bool>());
}

TEST(Cli, SignatureOfQuarticHessian) {
  const auto r = run({"signature", "--point", "1,1,1,1"}, quartic_json());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j.at("class"), Json("LORENTZIAN_STRICT"));
  EXPECT_EQ(j.at("inertia"), Json::parse("[1,0,3]"));
  const auto m = run({"signature"}, "[[1,0],[0,1]]");
  EXPECT_EQ(Json::parse(m.out).at("class"), Json("NOT_LORENTZIAN"));
}

TEST(Cli, Gnk) {
  const auto r = run({"gnk", "--n", "9", "--k", "3", "--check-sign"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j.at("sign"), Json(-1));
  EXPECT_FALSE(j.at("guaranteed_positive").get<bool>());
  const auto n = Json::parse(run({"gnk", "--n", "4", "--k", "2", "--normalized", "--nested"}).out);
  EXPECT_EQ(n.at("per"), Json("8"));
  EXPECT_EQ(n.at("normalized").at("per"), Json("1/32"));
  EXPECT_EQ(run({"gnk", "--n", "4", "--k", "1"}).code, kExitInvalidInput);
}

TEST(Cli, HyperbolicAndCone) {
  const auto r = run({"hyperbolic", "--point", "1,1,1,2", "--relaxation", "2"}, quartic_json());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_TRUE(j.at("hyperbolic").get<bool>());
  EXPECT_TRUE(j.at("in_open_cone").get<bool>());
  EXPECT_TRUE(j.at("relaxation_inclusion").get<bool>());
  const auto far = Json::parse(run({"hyperbolic", "--point", "1,1,1,5"}, quartic_json()).out);
  EXPECT_FALSE(far.at("in_closed_cone").get<bool>());
}

TEST(Cli, MixedDisc) {
  const auto r = run({"mixed-disc", "--exact"}, R"([[[1,0],[0,1]], [[2,0],[0,3]]])");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j.at("value"), Json("5"));
  EXPECT_TRUE(j.at("agree").get<bool>());
  const auto m = run({"mixed-disc", "--exact"}, R"({"matrices": [{"rows": [[1,2],[3,4]], "multiplicity": 2}]})");
  EXPECT_EQ(Json::parse(m.out).at("value"), Json("-2"));
  const auto d = run({"mixed-disc", "--exact", "--det-sum"}, R"([[[1,0],[0,1]], [[2,0],[0,3]]])");
  EXPECT_EQ(Json::parse(d.out).at("direct"), Json("12"));
}

TEST(Cli, Capacity) {
  const auto r = run({"capacity"}, R"({"nvars": 2, "terms": [{"exp": [1,1], "coef": 1}]})");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(Json::parse(r.out).at("value").get<double>(), 1.0, 1e-9);
  // Λ₊₊(x1² − x2², −e1) misses the positive orthant.
  const auto inf = run({"capacity", "--cone", "hyperbolicity", "--direction", "-1,0"},
                       R"({"nvars": 2, "terms": [{"exp": [2,0], "coef": 1}, {"exp": [0,2], "coef": -1}]})");
  EXPECT_EQ(inf.code, kExitInfeasible);
}

TEST(Cli, ConeSampleQuadric) {
  const std::string quad = R"({"nvars": 2, "terms": [{"exp": [2,0], "coef": 1}, {"exp": [0,2], "coef": -1}]})";
  const auto r = run({"cone-sample", "--direction", "1,0", "--points", "20"}, quad);
  ASSERT_EQ(r.code, 0) << r.err;
  std::string header;
  const auto rows = parse_csv(r.out, &header);
  EXPECT_EQ(header, "x1,x2,on_boundary");
  ASSERT_EQ(rows.size(), 20u);
  for (const auto& row : rows) {
    if (row[2] == 1.0) EXPECT_NEAR(row[0], std::abs(row[1]), 1e-8 * (1 + row[0]));  // |x2| = x1
  }
  const auto empty = run({"cone-sample", "--direction", "1,0", "--points", "0"}, quad);
  EXPECT_EQ(empty.out, "x1,x2,on_boundary\n");
}

TEST(Cli, ConeSampleQuarticHasNegativeCoordinates) {
  const auto r = run({"cone-sample", "--points", "50", "--seed", "3"}, quartic_json());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out, nullptr);
  const auto q = oracle::quartic<double>();
  bool negative = false;
  for (const auto& row : rows) {
    std::vector<double> x(row.begin(), row.begin() + 4);
    for (double v : x) negative = negative || v < 0.0;
    if (row[4] == 1.0) EXPECT_NEAR(evaluate(q, x), 0.0, 1e-6 * std::pow(1 + std::abs(x[0]) + std::abs(x[3]), 4));
  }
  EXPECT_TRUE(negative);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"cone-sample", "--points", "10", "--seed", "11"};
  EXPECT_EQ(run(args, quartic_json()).out, run(args, quartic_json()).out);
  const std::vector<std::string> cap{"capacity", "--seed", "5"};
  EXPECT_EQ(run(cap, quartic_json()).out, run(cap, quartic_json()).out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"permanent"}, "not json").code, kExitInvalidInput);
  EXPECT_EQ(run({"permanent"}, "[[1,2,3],[4,5,6]]").code, kExitInvalidInput);
  EXPECT_EQ(run({"frobnicate"}).code, kExitInvalidInput);
  EXPECT_EQ(run({"signature"}, quartic_json()).code, kExitInvalidInput);  // --point missing
  EXPECT_EQ(run({"hyperbolic", "--direction", "1,0"}, R"({"nvars": 2, "terms": [{"exp": [0,2], "coef": 1}]})").code,
            kExitInvalidInput);  // f(e) = 0
  // Singular G(4,4): the direction solve has no consistent solution.
  const std::string g44 =
      R"([["1","-1/3","-1/3","-1/3"],["-1/3","1","-1/3","-1/3"],["-1/3","-1/3","1","-1/3"],["-1/3","-1/3","-1/3","1"]])";
  EXPECT_EQ(run({"capacity", "--cone", "hyperbolicity"}, g44).code, kExitInfeasible);
  EXPECT_EQ(run({"permanent", "--help"}).code, kExitOk);
}

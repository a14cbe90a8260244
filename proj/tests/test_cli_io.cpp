#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "rumin/chain_io.hpp"
#include "rumin/commands.hpp"
#include "rumin/errors.hpp"
#include "rumin/form_parser.hpp"
#include "support/chains.hpp"

using namespace rumin;

namespace {

using Q = Rational;

const std::string kData = RUMIN_TEST_DATA;

std::string data(const std::string& name) { return kData + "/" + name; }

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> corpus() {
  std::ifstream in(data("form_corpus.txt"));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  return lines;
}

Poly var(const HeisParams& h, int i) { return Poly::variable(h.dim(), i); }

}  // namespace

TEST(Parser, Examples) {
  HeisParams h(1);
  EXPECT_EQ(parse_form("dx1^dy1", h), PolyForm::blade(h, Blade::from_indices({1, 2})));
  PolyForm expected = PolyForm::blade(h, Blade::single(1), var(h, 2)) +
                      PolyForm::blade(h, Blade::single(3), var(h, 0) * Q(-1, 2));
  EXPECT_EQ(parse_form("t*dx1 - (1/2)*x1*theta", h), expected);
  EXPECT_EQ(parse_form("theta^dx1", h), -parse_form("dx1^theta", h));
  EXPECT_EQ(parse_form("0.25*t", h), parse_form("t/4", h));
  EXPECT_EQ(parse_form("sqrt(9/4)", h), parse_form("3/2", h));
}

TEST(Parser, PrecedenceAndAssociativity) {
  HeisParams h(2);
  // '*' binds tighter than '^', which binds tighter than '+'.
  EXPECT_EQ(parse_form("x1*dx1^dy1 + dx2^dy2", h),
            parse_form("((x1*dx1)^dy1) + (dx2^dy2)", h));
  EXPECT_EQ(parse_form("dx1^dx2^dy1", h), parse_form("(dx1^dx2)^dy1", h));
  EXPECT_EQ(parse_form("-x1*y1", h), parse_form("(-x1)*y1", h));
  EXPECT_EQ(parse_form("1 - 2 - 3", h), parse_form("-4", h));
  EXPECT_EQ(parse_form("12/4/3", h), parse_form("1", h));
}

TEST(Parser, GradeMismatchNamesBothGrades) {
  HeisParams h(1);
  try {
    parse_form("dx1 + dx1^dy1", h);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("1-form"), std::string::npos) << msg;
    EXPECT_NE(msg.find("2-form"), std::string::npos) << msg;
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 5);
  }
}

TEST(Parser, ErrorsCarryLineAndColumn) {
  HeisParams h(1);
  auto position = [&](const std::string& text) {
    try {
      parse_form(text, h);
    } catch (const ParseError& e) {
      return std::make_pair(e.line(), e.column());
    }
    return std::make_pair(0, 0);
  };
  EXPECT_EQ(position("x1 + $"), std::make_pair(1, 6));
  EXPECT_EQ(position("x1 +\n  (y1"), std::make_pair(2, 6));
  EXPECT_EQ(position("x2"), std::make_pair(1, 1));
  EXPECT_EQ(position("dz1"), std::make_pair(1, 1));
  EXPECT_EQ(position("dx1 * dy1"), std::make_pair(1, 5));
  EXPECT_EQ(position("x1 / y1"), std::make_pair(1, 4));
  EXPECT_EQ(position("x1 / 0"), std::make_pair(1, 4));
  EXPECT_EQ(position("sqrt(x1)"), std::make_pair(1, 1));
  EXPECT_EQ(position("sqrt(-1)"), std::make_pair(1, 1));
  EXPECT_EQ(position(""), std::make_pair(1, 1));
  EXPECT_EQ(position("x1 y1"), std::make_pair(1, 4));
  try {
    parse_form("x3", HeisParams(2));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("unknown identifier 'x3'"), std::string::npos);
  }
}

TEST(Parser, SqrtOfNonSquareIsTheBinaryRoot) {
  EXPECT_EQ(parse_constant("sqrt(2)"), exact_from_double(std::sqrt(2.0)));
  EXPECT_EQ(parse_constant("1/2"), Q(1, 2));
  // leading zeros are decimal, not octal
  EXPECT_EQ(parse_constant("0.0625"), Q(1, 16));
  EXPECT_EQ(parse_constant("010"), Q(10));
  EXPECT_EQ(parse_rational("0.25"), Q(1, 4));
  EXPECT_EQ(parse_rational("010/011"), Q(10, 11));
  EXPECT_THROW(parse_constant("x1"), ParseError);
}

TEST(Parser, CorpusRoundTrip) {
  HeisParams h(2);
  auto lines = corpus();
  ASSERT_EQ(lines.size(), 50u);
  for (const auto& s : lines) {
    PolyForm w = parse_form(s, h);
    std::string printed = print_form(w);
    EXPECT_EQ(parse_form(printed, h), w) << s << "  ->  " << printed;
    EXPECT_EQ(print_form(parse_form(printed, h)), printed);
  }
}

TEST(Parser, RandomFormsRoundTrip) {
  std::mt19937_64 rng(61);
  for (int n = 1; n <= 2; ++n) {
    HeisParams h(n);
    for (int k = 0; k <= h.dim(); ++k)
      for (int i = 0; i < 10; ++i) {
        PolyForm w = random_form(h, k, rng);
        EXPECT_EQ(parse_form(print_form(w), h), w) << print_form(w);
      }
  }
}

TEST(ChainIO, LoadsFixtures) {
  auto seg = load_chain(data("segment.json"));
  EXPECT_EQ(seg.degree(), 1);
  EXPECT_DOUBLE_EQ(mass(seg), 1.0);

  auto cube = load_chain(data("cube.json"));
  EXPECT_EQ(cube.size(), 6u);
  auto m = mass_exact(cube);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(*m, Q(1));
  EXPECT_EQ(pair_form(cube, PolyForm::blade(cube.params(), Blade::top(3))), Q(1));
  EXPECT_TRUE(cube.same_chain(rumin::testing::unit_cube()));
}

TEST(ChainIO, RejectsBadFiles) {
  try {
    load_chain(data("bad_index.json"));
    FAIL();
  } catch (const ChainFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("vertex index 9 out of range"), std::string::npos) << e.what();
  }
  auto bad = [](const std::string& text) {
    EXPECT_THROW(chain_from_json(text), ChainFormatError) << text;
  };
  const std::string v = R"("vertices": [["0","0","0"],["1","0","0"]])";
  bad(R"({"version": "rumin-slice/2", "n": 1, "degree": 1, )" + v + R"(, "simplices": []})");
  bad(R"({"version": "rumin-slice/1", "n": 1, "degree": 1, )" + v +
      R"(, "simplices": [{"vertices": [0, 1], "multiplicity": "0"}]})");
  bad(R"({"version": "rumin-slice/1", "n": 1, "degree": 1, )" + v +
      R"(, "simplices": [{"vertices": [0, 1], "multiplicity": 0.5}]})");
  bad(R"({"version": "rumin-slice/1", "n": 1, "degree": 1, "vertices": [["0","0","zero"],["1","0","0"]],
       "simplices": [{"vertices": [0, 1]}]})");
  bad(R"({"version": "rumin-slice/1", "n": 1, "degree": 1, )" + v +
      R"(, "simplices": [{"vertices": [0, 0]}]})");
  bad(R"({"version": "rumin-slice/1", "n": 1, "degree": 2, )" + v +
      R"(, "simplices": [{"vertices": [0, 1]}]})");
  bad("not json");
  EXPECT_THROW(load_chain(data("missing.json")), ChainFormatError);
}

TEST(ChainIO, JsonRoundTrip) {
  auto cube = rumin::testing::unit_cube();
  auto back = chain_from_json(chain_to_json(cube));
  EXPECT_TRUE(back.same_chain(cube));
  EXPECT_EQ(chain_to_json(back), chain_to_json(cube));
}

TEST(Commands, VerifyComplex) {
  auto r = run({"verify-complex", "--n", "1", "--seed", "7", "--count", "100"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("dc∘dc = 0: 100/100 exact"), std::string::npos) << r.out;
}

TEST(Commands, VerifyLemmasN1) {
  auto r = run({"verify-lemmas", "--n", "1", "--count", "10"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST(Commands, SliceSegment) {
  auto r = run({"slice", "--chain", data("segment.json"), "--f", "x1", "--t", "1/2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"1/2\""), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("# mass: 1\n"), std::string::npos) << r.out;
}

TEST(Commands, SliceWritesChainFile) {
  auto path = std::filesystem::temp_directory_path() / "rumin_slice_test_out.json";
  auto r = run({"slice", "--chain", data("cube.json"), "--f", "x1", "--t", "1/3", "--minus",
                "--output", path.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  auto s = load_chain(path.string());
  EXPECT_EQ(s.degree(), 2);
  EXPECT_EQ(*mass_exact(s), Q(1));
  std::filesystem::remove(path);
}

TEST(Commands, DegenerateLevelExitsWith2) {
  auto r = run({"slice", "--chain", data("cube.json"), "--f", "x1", "--t", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("degenerate level"), std::string::npos) << r.err;
}

TEST(Commands, CoareaCube) {
  auto r = run({"coarea", "--chain", data("cube.json"), "--f", "x1", "--a", "0", "--b", "1", "--grid", "100"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("t,mass,band_bound,ratio\n", 0), 0u);
  EXPECT_NE(r.out.find("ratio 1\n"), std::string::npos) << r.out.substr(r.out.size() - 200);
}

TEST(Commands, MiddleDegreeScopeError) {
  auto r = run({"coarea", "--chain", data("h1_triangle.json"), "--f", "x1", "--a", "0", "--b", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("scope error"), std::string::npos) << r.err;
  auto rep = run({"report", "--chain", data("h1_triangle.json"), "--f", "x1"});
  EXPECT_EQ(rep.code, 2);
}

TEST(Commands, ReportIsDeterministic) {
  auto a = run({"report", "--chain", data("h2_square.json"), "--f", "x1"});
  auto b = run({"report", "--chain", data("h2_square.json"), "--f", "x1"});
  EXPECT_EQ(a.code, 0) << a.out << a.err;
  EXPECT_EQ(a.out, b.out);
  for (const char* key : {"P0 PASS", "P1 PASS", "P2 PASS", "P3 PASS", "P4 PASS", "P5 PASS", "P6 PASS"})
    EXPECT_NE(a.out.find(key), std::string::npos) << a.out;
}

TEST(Commands, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"verify-complex", "--bogus"}).code, 1);
  EXPECT_EQ(run({"verify-complex", "--n", "3"}).code, 1);
  EXPECT_EQ(run({"slice", "--chain", data("cube.json"), "--f", "x1*y1", "--t", "1/2"}).code, 1);
  EXPECT_EQ(run({"slice", "--chain", data("cube.json"), "--f", "dx1", "--t", "1/2"}).code, 1);
  auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("verify-complex"), std::string::npos);
}

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "coefchange/cli.hpp"
#include "coefchange/io.hpp"

using namespace coefchange;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("coefchange_test_" + name)).string();
}

Json run_json(std::vector<std::string> args, int expect = kExitOk) {
  args.push_back("--json");
  auto r = run(args);
  EXPECT_EQ(r.code, expect) << r.err;
  return Json::parse(r.out);
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return Json::parse(s.str());
}

}  // namespace

TEST(Cli, ExtendCounterexampleFixture) {
  auto r = run_json({"extend", fx("tau_squared_job.json"), "--classes", "--galois", "2"});
  EXPECT_EQ(r["result"]["solutions"], Json::parse("[[0, 1], [0, 2]]"));
  EXPECT_EQ(r["result"]["classes"], Json::parse("[[0], [1]]"));
  EXPECT_EQ(r["result"]["aut_order"], 2);
  EXPECT_EQ(r["result"]["galois"],
            Json::parse(R"([{"s": 1, "solutions": 2, "classes": 2}, {"s": 2, "solutions": 4, "classes": 1}])"));
  EXPECT_EQ(r["status"], "pass");

  // module and cover as two separate files give the same result
  auto two = run_json({"extend", fx("tau_squared_f3.json"), fx("cover_y_squared.json")});
  EXPECT_EQ(two["result"]["solutions"], r["result"]["solutions"]);
}

TEST(Cli, InconsistentFixtureHasNoExtensions) {
  auto r = run({"extend", fx("inconsistent_job.json"), "--cross-check"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("no extensions"), std::string::npos);
  auto j = run_json({"extend", fx("inconsistent_job.json")});
  EXPECT_TRUE(j["result"]["solutions"].empty());
}

TEST(Cli, IsomAndTwist) {
  auto r = run({"isom", fx("aprime_plus_tau.json"), fx("aprime_minus_tau.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("no isomorphism; minimal twist degree 2"), std::string::npos) << r.out;

  auto self = run_json({"isom", fx("aprime_plus_tau.json"), fx("aprime_plus_tau.json")});
  EXPECT_EQ(self["result"]["witnesses"], Json::parse("[1, 2]"));

  auto t = run_json({"twist", fx("aprime_plus_tau.json"), fx("aprime_minus_tau.json")});
  EXPECT_EQ(t["result"]["twist_degree"], 2);

  auto lad = run({"isom", fx("line_ladder_plus_y.json"), fx("line_ladder_minus_y.json"), "--twist", "2"});
  EXPECT_NE(lad.out.find("no isomorphism; minimal twist degree 2"), std::string::npos) << lad.out;
}

TEST(Cli, PushforwardPairHasDiagonalWitness) {
  const auto plus = tmp("plus.json"), minus = tmp("minus.json");
  ASSERT_EQ(run({"push", fx("line_ladder_plus_y.json"), fx("cover_y_squared.json"), "-o", plus}).code, kExitOk);
  ASSERT_EQ(run({"push", fx("line_ladder_minus_y.json"), fx("cover_y_squared.json"), "-o", minus}).code, kExitOk);
  auto r = run_json({"isom", plus, minus});
  const Json diag = Json::parse("[[[1], []], [[], [2]]]");
  bool found = false;
  for (const auto& w : r["result"]["witnesses"])
    if (w["U"][0] == diag && w["U"][1] == diag) found = true;
  EXPECT_TRUE(found) << r.dump(2);

  // re-indexed by one level, the pushforward of +y is the elliptic sheaf of tau^2
  const auto shifted = tmp("shifted.json");
  ASSERT_EQ(run({"push", fx("line_ladder_plus_y.json"), fx("cover_y_squared.json"), "--shift", "1", "-o", shifted}).code,
            kExitOk);
  auto s = run_json({"isom", shifted, fx("elliptic_sheaf_f3.json")});
  EXPECT_GE(s["result"]["count"].get<int>(), 1);
  EXPECT_EQ(read_json(shifted)["levels"], read_json(fx("elliptic_sheaf_f3.json"))["levels"]);
}

TEST(Cli, RestrictProducesTauSquared) {
  const auto out = tmp("restricted.json");
  ASSERT_EQ(run({"restrict", fx("aprime_plus_tau.json"), fx("cover_y_squared.json"), "-o", out}).code, kExitOk);
  const auto got = module_from_json(read_json(out));
  const auto want = module_from_json(read_json(fx("tau_squared_f3.json")));
  EXPECT_EQ(got.gen_image, want.gen_image);
  EXPECT_EQ(got.rank, 2);

  // identity cover echoes the module
  const auto id = tmp("identity_cover.json");
  std::ofstream(id) << R"({"kind": "cover", "p_poly": [0, 1]})";
  ASSERT_EQ(run({"restrict", fx("aprime_minus_tau.json"), id, "-o", out}).code, kExitOk);
  EXPECT_EQ(module_from_json(read_json(out)).gen_image,
            module_from_json(read_json(fx("aprime_minus_tau.json"))).gen_image);
}

TEST(Cli, VerifyOutcomesAndExitCodes) {
  for (const char* f : {"tau_squared_job.json", "elliptic_sheaf_f3.json", "line_ladder_plus_y.json",
                        "shtuka_right_inf.json", "shtuka_right_affine.json", "shtuka_left.json"})
    EXPECT_EQ(run({"verify", fx(f)}).code, kExitOk) << f;

  auto bad = run({"verify", fx("wrong_rank.json")});
  EXPECT_EQ(bad.code, kExitVerificationFailed);
  EXPECT_NE(bad.out.find("FAIL drinfeld_module[0]: degree equals rank"), std::string::npos) << bad.out;

  auto parse = run({"verify", fx("malformed.json")});
  EXPECT_EQ(parse.code, kExitInputError);
  EXPECT_NE(parse.err.find("ParseError"), std::string::npos);
  EXPECT_NE(parse.err.find("line 3"), std::string::npos) << parse.err;

  auto schema = run_json({"verify", fx("missing_gen_image.json")}, kExitInputError);
  EXPECT_EQ(schema["error"]["kind"], "SchemaError");

  EXPECT_EQ(run({"extend", fx("tau_squared_job.json"), "--cap", "5"}).code, kExitCapExceeded);
  EXPECT_EQ(run({"frobnicate"}).code, kExitInputError);
  EXPECT_EQ(run({"verify", "/nonexistent/file.json"}).code, kExitInputError);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, ReportsAreByteStable) {
  const std::vector<std::string> a{"extend", fx("tau_squared_job.json"), "--galois", "2", "--json"};
  EXPECT_EQ(run(a).out, run(a).out);
  auto t1 = run_json({"extend", fx("tau_squared_job.json"), "--threads", "1"});
  auto t4 = run_json({"extend", fx("tau_squared_job.json"), "--threads", "4"});
  EXPECT_EQ(t1["result"].dump(), t4["result"].dump());
  EXPECT_EQ(t1["inputs"], t4["inputs"]);
  EXPECT_FALSE(t1.contains("timing_ms"));
}

TEST(Cli, EmittedDocumentsRoundTrip) {
  struct Case {
    std::vector<std::string> args;
    std::string name;
  };
  const std::vector<Case> cases = {
      {{"restrict", fx("aprime_plus_tau.json"), fx("cover_y_squared.json")}, "rt_module.json"},
      {{"push", fx("line_ladder_minus_y.json"), fx("cover_y_squared.json")}, "rt_ladder.json"},
      {{"push", fx("shtuka_right_affine.json"), fx("cover_y_squared.json")}, "rt_shtuka.json"},
      {{"push", fx("shtuka_left.json"), fx("cover_y_squared.json")}, "rt_left.json"},
      {{"motive", fx("tau_squared_f3.json")}, "rt_motive.json"},
      {{"motive", fx("tau_squared_f3.json"), "--shtuka", "1"}, "rt_motive_shtuka.json"},
  };
  for (const auto& c : cases) {
    const auto path = tmp(c.name);
    auto args = c.args;
    args.insert(args.end(), {"-o", path});
    auto r = run_json(args);
    const Json doc = read_json(path);
    EXPECT_EQ(doc, r["result"]["document"]) << c.name;

    // re-parse and re-emit: identical document
    const std::string kind = document_kind(doc);
    Json again;
    if (kind == "drinfeld_module") again = module_to_json(module_from_json(doc));
    else if (kind == "abelian_sheaf") again = ladder_to_json(ladder_from_json(doc));
    else again = shtuka_to_json(shtuka_from_json(doc));
    EXPECT_EQ(again, doc) << c.name;

    // re-verifies with the same clauses as the "output" part of the producing report
    auto v = run_json({"verify", path});
    std::vector<std::pair<std::string, bool>> produced, verified;
    for (const auto& cl : r["verification"]) {
      const std::string n = cl["clause"];
      for (const std::string p : {"output: ", "sheaf: ", "shtuka: "})
        if (n.rfind(p, 0) == 0 && (kind != "shtuka" || p != "sheaf: ") && (kind != "abelian_sheaf" || p != "shtuka: "))
          produced.emplace_back(n.substr(p.size()), cl["ok"].get<bool>());
    }
    for (const auto& cl : v["verification"]) {
      const std::string n = cl["clause"];
      verified.emplace_back(n.substr(n.find(": ") + 2), cl["ok"].get<bool>());
    }
    EXPECT_EQ(produced, verified) << c.name;
    EXPECT_EQ(v["status"], "pass") << c.name;
  }
}

TEST(Cli, SheafStructuresAndAut) {
  auto r = run_json({"sheaf-structures", fx("elliptic_sheaf_f3.json"), fx("cover_y_squared.json")});
  EXPECT_EQ(r["result"]["structures"].size(), 2u);
  EXPECT_EQ(r["result"]["classes"], Json::parse("[[0], [1]]"));
  auto a = run_json({"aut", fx("tau_squared_f3.json")});
  EXPECT_EQ(a["result"]["order"], 2);
  auto s = run_json({"selftest", "--seed", "11", "--rounds", "10"});
  EXPECT_EQ(s["status"], "pass");
}

TEST(Io, ElementRoundTripAcrossTowers) {
  const auto& f9 = FieldTower::get(3, {0, 1}, {{1}, {0}, {1}});
  const auto& f4 = FieldTower::get(2, {0, 1}, {{1}, {1}, {1}});
  const auto& f9b = FieldTower::get(3, {1, 0, 1}, {{0}, {1}});
  const auto& f81 = FieldTower::get(3, {1, 0, 1}, smallest_irreducible(f9b, 2));
  for (const FieldTower* k : {&FieldTower::prime_field(5), &f9, &f4, &f9b, &f81}) {
    for (const auto& a : enumerate_field(*k)) {
      const Json j = element_to_json(a);
      EXPECT_EQ(element_from_json(*k, j), a);
      EXPECT_EQ(element_from_json(*k, Json::parse(j.dump())), a);
    }
    EXPECT_EQ(&field_from_json(field_to_json(*k)), k);
  }
  EXPECT_THROW(element_from_json(f9, Json::parse("[1, 2, 0]")), SchemaError);
  EXPECT_THROW(element_from_json(f9, Json::parse("\"x\"")), SchemaError);
  EXPECT_THROW(parse_json("{\"a\": }"), ParseError);
}

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "realid/cli.hpp"

using namespace realid;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "realid");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("realid_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("waring binary cubic") {
    const Run r = run({"waring", "--d", "3", "--n", "1", "--r", "2", "--seed", "42", "--threads", "1"});
    REQUIRE(r.code == kExitOk);
    const Json j = r.json();
    CHECK(j["schema"] == kSchemaId);
    CHECK(j["config"]["seed"] == 42);
    CHECK(j["classification"]["total"] == 1);
    CHECK(j["classification"]["real"] == 1);
    CHECK(j["classification"]["identifiable_over_R"] == true);
    CHECK(j["classification"]["identifiable_over_C"] == true);
  }

  TEST_CASE("inadmissible spec names the exception") {
    const Run r = run({"waring", "--d", "4", "--n", "2", "--r", "5"});
    CHECK(r.code == kExitError);
    CHECK(r.err.find("Alexander") != std::string::npos);
    CHECK(r.out.empty());
  }

  TEST_CASE("usage errors") {
    CHECK(run({}).code == kExitError);
    CHECK(run({"waring", "--d", "3"}).code == kExitError);
    CHECK(run({"waring", "--d", "3", "--n", "1", "--r", "2", "--bogus"}).code == kExitError);
    CHECK(run({"waring", "--d", "3", "--n", "1", "--r", "2", "--corrector-tol", "-1"}).code == kExitError);
    CHECK(run({"elliptic", "point", "--construct", "s7"}).code == kExitError);
    CHECK(run({"segre", "search", "--dims", "2,2", "--target", "5,0"}).code == kExitError);
    CHECK(run({"waring", "--d", "3", "--n", "1", "--r", "2", "--fixture", "/nonexistent.json"}).code == kExitError);
  }

  TEST_CASE("exhausted solve exits 2") {
    const Run r = run({"waring", "--d", "3", "--n", "1", "--r", "2", "--max-loops", "1", "--stable-loops", "5"});
    CHECK(r.code == kExitUnstabilized);
    CHECK(r.json()["registry"]["exhausted"] == true);
  }

  TEST_CASE("elliptic subcommands") {
    const Run plane = run({"elliptic", "plane", "--coeffs", "0,0,1,0"});
    REQUIRE(plane.code == kExitOk);
    CHECK(plane.json()["result"]["signature"] == Json::array({2, 2}));

    const Run point = run({"elliptic", "point", "--construct", "s4", "--seed", "7"});
    REQUIRE(point.code == kExitOk);
    CHECK(point.json()["result"]["type"] == "s4");
    CHECK(point.json()["result"]["lines"].size() == 2);

    const Run on_curve = run({"elliptic", "point", "--point", "1,1,-1,-1"});
    CHECK(on_curve.code == kExitOk);
    CHECK(on_curve.json()["result"]["type"] == "degenerate");

    const Run scan = run({"elliptic", "pencil-scan", "--from", "-2", "--to", "2", "--steps", "41"});
    REQUIRE(scan.code == kExitOk);
    const Json records = scan.json()["records"];
    REQUIRE(records.size() == 41);
    for (const Json& rec : records) {
      const double k = rec["k"].get<double>();
      CAPTURE(k);
      if (std::abs(std::abs(k) - 1.0) < 1e-12) {
        CHECK(rec.contains("tangent"));
      } else if (std::abs(k) < 1.0) {
        CHECK(rec["signature"] == Json::array({2, 2}));
      } else {
        CHECK(rec["signature"] == Json::array({0, 4}));
      }
    }
  }

  TEST_CASE("segre subcommands") {
    const Run profile = run({"segre", "profile", "--dims", "2,4"});
    REQUIRE(profile.code == kExitOk);
    CHECK(profile.json()["result"]["a_q"] == 9);
    CHECK(profile.json()["result"]["D"] == 15);
    CHECK(profile.json()["result"]["parity"] == "even");

    const Run section = run({"segre", "section", "--dims", "2,2", "--span-real", "5", "--seed", "7"});
    REQUIRE(section.code == kExitOk);
    CHECK(section.json()["result"]["signature"] == Json::array({6, 0}));
    CHECK(section.json()["result"]["points"].size() == 6);

    const Run none = run({"segre", "search", "--dims", "2,2", "--target", "0,6", "--max-attempts", "3", "--seed", "1"});
    CHECK(none.code == kExitNotFound);

    const Run line = run({"segre", "search", "--dims", "1,1", "--target", "0,2"});
    REQUIRE(line.code == kExitOk);
    CHECK(line.json()["result"]["signature"] == Json::array({0, 2}));
  }

  TEST_CASE("sequential runs are byte-identical") {
    const std::vector<std::string> args = {"waring", "--d", "5", "--n", "1", "--r", "3", "--seed", "3", "--threads", "1"};
    const Run a = run(args);
    const Run b = run(args);
    REQUIRE(a.code == kExitOk);
    CHECK(a.out == b.out);
    const std::vector<std::string> seg = {"segre", "section", "--dims", "2,2", "--seed", "5", "--threads", "1"};
    CHECK(run(seg).out == run(seg).out);
  }

  TEST_CASE("report files") {
    const auto dir = scratch_dir("out");
    const auto explicit_path = dir / "nested" / "profile.json";
    const Run r = run({"segre", "profile", "--dims", "1,1", "-o", explicit_path.string()});
    REQUIRE(r.code == kExitOk);
    std::ifstream in(explicit_path);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text == r.out);

    const auto env_dir = scratch_dir("env");
    ::setenv("REALID_OUTPUT_DIR", env_dir.c_str(), 1);
    const Run e = run({"segre", "profile", "--dims", "1,1"});
    ::unsetenv("REALID_OUTPUT_DIR");
    REQUIRE(e.code == kExitOk);
    CHECK(std::distance(std::filesystem::directory_iterator(env_dir), std::filesystem::directory_iterator{}) == 1);
  }
}

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "patrolgame/cli.hpp"
#include "patrolgame/io.hpp"
#include "patrolgame/patrol.hpp"

using namespace patrolgame;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("patrolgame_cli_" + name);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("value on the three-arc network at m = 1.5") {
    const auto r = call({"value", "--preset", "N2", "--m", "1.5"});
    REQUIRE(r.code == cli::kOk);
    const auto j = json::parse(r.out);
    CHECK(j["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(j["value_exact"] == "1/2");
    CHECK(j["status"]["value"] == "exact");
  }

  TEST_CASE("bounds on the three-arc network at m = 3 carry status tags") {
    const auto r = call({"bounds", "--preset", "N2", "--m", "3"});
    REQUIRE(r.code == cli::kOk);
    const auto j = json::parse(r.out);
    CHECK(j["lower"].get<double>() == doctest::Approx(13.0 / 15.0));
    CHECK(j["upper"].get<double>() == doctest::Approx(11.0 / 12.0));
    CHECK(j["status"]["lower"] == "lower");
    CHECK(j["status"]["upper"] == "upper");
    CHECK(j["exact"] == false);
  }

  TEST_CASE("value refuses a regime without a closed form") {
    const auto r = call({"value", "--preset", "N2", "--m", "3"});
    CHECK(r.code == cli::kDomain);
    CHECK(!r.err.empty());
  }

  TEST_CASE("sweep writes one CSV row per m matching the three-arc bounds") {
    const auto path = scratch("sweep.csv");
    const auto r = call({"sweep", "--preset", "N2", "--m", "0:0.1:5", "--out", path.string()});
    REQUIRE(r.code == cli::kOk);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "m,lower,upper,exact,prop_upper,method");
    int rows = 0;
    while (std::getline(in, line)) {
      std::stringstream ss(line);
      std::string m, lo, hi;
      std::getline(ss, m, ',');
      std::getline(ss, lo, ',');
      std::getline(ss, hi, ',');
      const double mv = std::stod(m);
      CHECK(mv == doctest::Approx(0.1 * rows).epsilon(1e-9));
      const auto b = patrol::three_arc_bounds(mv);
      CHECK(std::stod(lo) == doctest::Approx(b.lower).epsilon(1e-12));
      CHECK(std::stod(hi) == doctest::Approx(b.upper).epsilon(1e-12));
      ++rows;
    }
    CHECK(rows == 51);
    std::filesystem::remove(path);
  }

  TEST_CASE("usage errors exit with code 1") {
    CHECK(call({"frobnicate", "--preset", "N2"}).code == cli::kUsage);
    CHECK(call({"value", "--preset", "N2", "--m", "abc"}).code == cli::kUsage);
    CHECK(call({"value", "--m", "1"}).code == cli::kUsage);
    CHECK(call({"value", "--preset", "nowhere", "--m", "1"}).code == cli::kUsage);
    CHECK(call({"value", "--game", scratch("missing.json").string()}).code == cli::kUsage);
    CHECK(call({"value", "--preset", "N2", "--m", "1", "--format", "xml"}).code == cli::kUsage);
  }

  TEST_CASE("oversized oracles report the budget and exit with code 2") {
    const auto r = call({"oracle", "--preset", "unit-interval", "--r", "0.3", "--resolution", "1000000"});
    CHECK(r.code == cli::kDomain);
    CHECK(r.err.find("partial lower bound") != std::string::npos);
    CHECK(call({"oracle", "--preset", "unit-square", "--r", "0.01", "--resolution", "100000"}).code == cli::kDomain);
    CHECK(call({"oracle", "--preset", "N1", "--m", "1", "--resolution", "2000"}).code == cli::kDomain);
  }

  TEST_CASE("identical invocations produce identical output") {
    const std::vector<std::string> args{"strategy", "--preset", "N2", "--m", "2.5", "--resolution", "40"};
    const auto a = call(args);
    const auto b = call(args);
    REQUIRE(a.code == b.code);
    CHECK(a.out == b.out);
    const auto c = call({"bounds", "--preset", "N1", "--m", "0.5,1,2"});
    CHECK(c.out == call({"bounds", "--preset", "N1", "--m", "0.5,1,2"}).out);
  }

  TEST_CASE("oracle exports readable binary matrices") {
    const auto prefix = scratch("export").string();
    const auto r = call({"oracle", "--preset", "unit-interval", "--r", "0.3", "--resolution", "50", "--export", prefix});
    REQUIRE(r.code == cli::kOk);
    const auto j = json::parse(r.out);
    CHECK(j["lower"].get<double>() <= 0.5 + 1e-9);
    CHECK(j["upper"].get<double>() >= 0.5 - 1e-9);
    for (const char* side : {"-lower.bin", "-upper.bin"}) {
      std::ifstream in(prefix + side, std::ios::binary);
      REQUIRE(in);
      const auto g = io::read_matrix_binary(in);
      CHECK(g.rows() > 0);
      CHECK(g.cols() > 0);
      for (double v : g.payoff()) CHECK((v == 0.0 || v == 1.0));
      std::filesystem::remove(prefix + side);
    }
  }

  TEST_CASE("verify-equalizing on Cantor and five points") {
    const auto c = call({"verify-equalizing", "--preset", "cantor", "--r", "0.0625"});
    REQUIRE(c.code == cli::kOk);
    CHECK(json::parse(c.out)["equalizing"] == true);
    const auto f = call({"verify-equalizing", "--preset", "five-point"});
    REQUIRE(f.code == cli::kOk);
    CHECK(json::parse(f.out).contains("equalizing"));
  }

  TEST_CASE("games read from a JSON file") {
    const auto path = scratch("game.json");
    {
      std::ofstream f(path);
      f << R"({"space": {"type": "network", "nodes": ["a", "b"], "edges": [{"a": "a", "b": "b", "len": 1}]}, "m": 1})";
    }
    const auto r = call({"bounds", "--game", path.string()});
    REQUIRE(r.code == cli::kOk);
    const auto j = json::parse(r.out);
    // a single unit edge is patrolled by the back-and-forth tour of length 2
    CHECK(j["lower"].get<double>() <= 0.5 + 1e-9);
    CHECK(j["upper"].get<double>() >= 0.5 - 1e-9);
    std::filesystem::remove(path);
  }
}

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = entmax::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("entmax_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("bound") {
  const Run r = run({"bound", "--n", "4", "--r", "2"});
  REQUIRE(r.code == entmax::cli::kExitOk);
  const json doc = json::parse(r.out);
  CHECK(doc.at("w0").get<double>() == doctest::Approx(0.53793928875404227416).epsilon(1e-14));
  CHECK(doc.at("bound_bits").get<double>() ==
        doctest::Approx(2.9251237961488144511).epsilon(1e-14));

  const Run csv = run({"bound", "--n", "1", "--r", "2", "--output", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("n,r,w0,bound_bits\n1,2,", 0) == 0);
}

TEST_CASE("sum csv") {
  const std::string path = write_file("sum.json", R"({"r": 2, "pmfs": [[0.5,0.0,0.5],[0.25,0.5,0.25]]})");
  const Run r = run({"sum", "--input", path});
  REQUIRE(r.code == 0);
  CHECK(r.out ==
        "value,probability\n0,0.125\n1,0.25\n2,0.25\n3,0.25\n4,0.125\n");
}

TEST_CASE("attain and optimize round-trip through entropy") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"attain", "--n", "3"},
        std::vector<std::string>{"optimize", "--n", "3", "--r", "2", "--starts", "8"}}) {
    const Run produced = run(args);
    REQUIRE(produced.code == 0);
    const json doc = json::parse(produced.out);
    const std::string path = write_file(args[0] + ".json", produced.out);
    const Run measured = run({"entropy", "--input", path, "--backend", "float"});
    REQUIRE(measured.code == 0);
    const double h = json::parse(measured.out).at("entropy_bits").get<double>();
    CHECK(std::abs(h - doc.at("entropy_bits").get<double>()) <= 1e-12);
  }
}

TEST_CASE("split and figure") {
  const std::string path = write_file("split.json", R"({"r": 2, "pmfs": [["1/3","1/3","1/3"]]})");
  const Run split = run({"split", "--input", path});
  REQUIRE(split.code == 0);
  CHECK(split.out.rfind("value,probability,residue_class\n", 0) == 0);

  const Run figure = run({"figure"});
  REQUIRE(figure.code == 0);
  std::istringstream lines(figure.out);
  std::string line;
  std::size_t rows = 0;
  std::getline(lines, line);
  CHECK(line == "value,probability,residue_class");
  while (std::getline(lines, line)) {
    CHECK(line.substr(line.rfind(',') + 1) == (rows % 2 == 0 ? "even" : "odd"));
    ++rows;
  }
  CHECK(rows == 9);
}

TEST_CASE("check-ulc on coefficients") {
  const std::string good = write_file("b4.json", R"({"coeffs": [1, 4, 6, 4, 1], "m": 4})");
  const Run ok = run({"check-ulc", "--input", good});
  REQUIRE(ok.code == 0);
  const json doc = json::parse(ok.out);
  CHECK(doc.at("ulc").get<bool>());
  CHECK(doc.at("real_rooted").get<bool>());

  // Example part P0 from the cubed ternary counterexample.
  const std::string bad =
      write_file("p0.json", R"({"coeffs": ["0.003375", "0.044091", "0.369325", "0.000729"], "m": 3})");
  const Run fails = run({"check-ulc", "--input", bad});
  REQUIRE(fails.code == 0);
  const json verdict = json::parse(fails.out);
  CHECK_FALSE(verdict.at("ulc").get<bool>());
  CHECK(verdict.at("ulc_violations") == json::array({1}));
}

TEST_CASE("verify") {
  const Run r = run({"verify", "--claim", "example-r3"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc.size() == 1);
  CHECK(doc[0].at("claim_id") == "example-r3");
  CHECK(doc[0].at("passed").get<bool>());

  CHECK(run({"verify", "--claim", "no-such-claim"}).code == entmax::cli::kExitInvalid);
}

TEST_CASE("invalid input exits 2") {
  const std::string malformed = write_file("bad.json", "{\"r\": 2,\n \"pmfs\": [[0.5, 0.5,]]}");
  const Run m = run({"entropy", "--input", malformed});
  CHECK(m.code == entmax::cli::kExitInvalid);
  CHECK(m.err.find("line 2") != std::string::npos);

  const std::string unnormalized = write_file("mass.json", R"({"r": 1, "pmfs": [[0.5, 0.6]]})");
  const Run u = run({"sum", "--input", unnormalized, "--backend", "float"});
  CHECK(u.code == entmax::cli::kExitInvalid);
  CHECK(u.err.find("pmfs[0]") != std::string::npos);

  const std::string negative = write_file("neg.json", R"({"r": 1, "pmfs": [[1.5, -0.5]]})");
  CHECK(run({"sum", "--input", negative}).code == entmax::cli::kExitInvalid);

  CHECK(run({"bound", "--r", "2"}).code == entmax::cli::kExitInvalid);
  CHECK(run({"optimize", "--n", "8", "--r", "3", "--grid-step", "0.001"}).code ==
        entmax::cli::kExitInvalid);
  CHECK(run({"entropy", "--input", "/nonexistent/file.json"}).code == entmax::cli::kExitInvalid);
  CHECK(run({"frobnicate"}).code == entmax::cli::kExitInvalid);
}

TEST_CASE("ENTMAX_THREADS") {
  setenv("ENTMAX_THREADS", "two", 1);
  CHECK(run({"optimize", "--n", "2", "--r", "2", "--starts", "2"}).code == entmax::cli::kExitInvalid);
  setenv("ENTMAX_THREADS", "2", 1);
  const Run threaded = run({"optimize", "--n", "2", "--r", "2", "--starts", "4"});
  unsetenv("ENTMAX_THREADS");
  const Run serial = run({"optimize", "--n", "2", "--r", "2", "--starts", "4"});
  REQUIRE(threaded.code == 0);
  REQUIRE(serial.code == 0);
  CHECK(json::parse(threaded.out).at("numeric_best") == json::parse(serial.out).at("numeric_best"));
}

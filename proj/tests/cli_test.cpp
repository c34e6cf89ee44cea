#include <json.hpp>

#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "jetinv/cli.hpp"

using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "jetinv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = jetinv::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

std::string source(const char* rel) { return std::string(JETINV_SOURCE_DIR) + "/" + rel; }

double drift_of(const std::string& witness) {
  std::smatch m;
  static const std::regex re("drifts? by ([0-9.eE+-]+)|max drift ([0-9.eE+-]+)");
  REQUIRE(std::regex_search(witness, m, re));
  return std::stod(m[1].matched ? m[1].str() : m[2].str());
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("check one entry as JSON") {
  Run r = run({"check", "17", "--param", "b=0", "--json"});
  CHECK(r.code == 0);
  auto reports = lines(r.out);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0]["entry"] == "17 b=0");
  CHECK(reports[0]["params"]["b"] == "0");
  for (const char* c : {"closure", "inv", "independence", "iod", "liedet", "flow", "props"}) {
    CHECK_MESSAGE(reports[0]["checks"][c]["status"] == "PASS", c);
  }
}

TEST_CASE("symbolic parameter") {
  Run r = run({"check", "17", "--param", "b=b", "--only", "closure,inv,iod,liedet"});
  CHECK(r.code == 0);
}

TEST_CASE("file commands") {
  Run det = run({"liedet", source("realizations/n3.real")});
  CHECK(det.code == 0);
  CHECK(det.out.find("-y'^2") != std::string::npos);

  Run br = run({"bracket", source("realizations/n17.real"), "1", "3"});
  CHECK(br.code == 0);

  Run rank = run({"rank", source("realizations/n17.real"), "2"});
  CHECK(rank.code == 0);

  CHECK(run({"verify-inv", source("realizations/n3.real"), "y"}).code == 0);
  CHECK(run({"verify-inv", source("realizations/n3.real"), "y'"}).code == 1);
  CHECK(run({"transform", source("realizations/swap3.t2")}).code == 0);
  CHECK(run({"transform", "18"}).code == 0);
}

TEST_CASE("exit codes") {
  CHECK(run({"check", "999"}).code == 2);
  CHECK(run({"check", "14", "--param", "a=1"}).code == 2);
  CHECK(run({"check", "17", "--r", "9"}).code == 2);
  Run parse = run({"verify-inv", source("realizations/n3.real"), "y +"});
  CHECK(parse.code == 3);
  CHECK(parse.err.rfind("parse error: ", 0) == 0);
  CHECK(run({"flow-check", "9", "--invariant", "y'"}).code == 1);
}

TEST_CASE("reports do not depend on the thread count") {
  Run one = run({"check-all", "--only", "closure,inv", "--json", "--jobs", "1"});
  Run three = run({"check-all", "--only", "closure,inv", "--json", "--jobs", "3"});
  CHECK(one.code == 0);
  CHECK(one.out == three.out);
}

TEST_CASE("seed 42") {
  // At seed 42 one flow sample lands where the fixed RK4 step is too coarse
  // for the tolerance. Every other check passes, and each flow failure is
  // truncation error: halving the step cuts the drift by more than 8.
  Run r = run({"check-all", "--seed", "42", "--json"});
  int flow_failures = 0;
  for (const json& rep : lines(r.out)) {
    for (const auto& [name, check] : rep["checks"].items()) {
      if (name == "flow" && check["status"] == "FAIL") {
        ++flow_failures;
        const std::string label = rep["entry"];
        std::vector<std::string> args{"check", label.substr(0, label.find(' ')), "--seed", "42",
                                      "--only", "flow", "--json", "--step", "5e-4"};
        std::smatch m;
        if (std::regex_search(label, m, std::regex(" r=([0-9]+)"))) args.insert(args.end(), {"--r", m[1].str()});
        if (std::regex_search(label, m, std::regex("\\[(.*)\\]"))) args.insert(args.end(), {"--case", m[1].str()});
        for (const auto& [p, v] : rep["params"].items()) {
          args.push_back("--param");
          args.push_back(p + "=" + v.get<std::string>());
        }
        Run half = run(args);
        double coarse = drift_of(check["witness"]);
        double fine = drift_of(lines(half.out).at(0)["checks"]["flow"]["witness"]);
        INFO(rep["entry"], ": ", coarse, " -> ", fine);
        CHECK(coarse / fine > 8);
      } else {
        CHECK_MESSAGE(check["status"] == "PASS", rep["entry"], " ", name);
      }
    }
  }
  CHECK(r.code == (flow_failures == 0 ? 0 : 1));
}

}  // TEST_SUITE

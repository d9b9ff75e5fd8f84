#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "netequil/cli.hpp"
#include "netequil/demos.hpp"
#include "netequil/document.hpp"
#include "netequil/error.hpp"
#include "netequil/solver.hpp"

using namespace netequil;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json call_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  const Result r = call(args);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  return json::parse(r.out);
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("netequil-cli-" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

 private:
  fs::path path_;
};

double max_dev(const json& a, const Vector& b) {
  double d = 0;
  for (std::size_t i = 0; i < b.size(); ++i) d = std::max(d, std::fabs(a[i].get<double>() - b[i]));
  return d;
}

}  // namespace

TEST_CASE("seven-node demo") {
  const json j = call_json({"demo", "seven-node"});
  CHECK(max_dev(j["x"], demos::seven_node_expected()) <= 1e-4);
  CHECK(j["lp_verified"] == true);
  CHECK(j["oracle_points"] == 1);
}

TEST_CASE("comparative demos") {
  for (char v : {'a', 'b', 'c', 'd', 'e'}) {
    const json j = call_json({"demo", std::string("comparative-") + v});
    CHECK(max_dev(j["x"], demos::comparative_expected(v)) <= 1e-4);
  }
}

TEST_CASE("two-agent ring demo") {
  const json j = call_json({"demo", "example-3-1"});
  CHECK(max_dev(j["greatest"], {2, 1}) <= 1e-9);
  CHECK(max_dev(j["least"], {-1, -2}) <= 1e-9);
  CHECK(j["probe"]["result"] == "multiple");
  CHECK(j["linear_system"] == "underdetermined");
}

TEST_CASE("round trip through a document") {
  TempDir dir;
  for (const auto& name : demos::names()) {
    INFO(name);
    const Result doc = call({"--format", "json", "demo", name, "--document"});
    REQUIRE(doc.code == 0);
    const std::string path = dir.write(name + ".json", doc.out);

    const Network original = *demos::by_name(name);
    const Document parsed = load_document(path);
    CHECK(parsed.network.w() == original.w());
    CHECK(parsed.network.shock() == original.shock());
    CHECK(parsed.network.functions() == original.functions());
    CHECK(network_document(parsed.network).dump() == nlohmann::ordered_json::parse(doc.out).dump());

    for (const char* cmd : {"classify", "solve", "enumerate"}) {
      const Result a = call({"--format", "json", cmd, path});
      const Result b = call({"--format", "json", cmd, dir.write(name + "-again.json", network_document(parsed.network).dump())});
      CHECK(a.code == b.code);
      CHECK(a.out == b.out);
    }
    // the solve report matches a direct library solve bit for bit
    const json s = call_json({"solve", path, "--method", "tarski-above"});
    CHECK(s["x"].get<Vector>() == solve_tarski(original, Direction::Above).x);
  }
}

TEST_CASE("model documents") {
  TempDir dir;
  const std::string path = dir.write("io.json", R"({"schema_version": "1",
      "model": {"family": "input_output", "W": [[0.5]], "final_demand": [1]}})");
  const json j = call_json({"solve", path});
  CHECK(j["method"] == "Banach");
  CHECK(j["x"][0].get<double>() == doctest::Approx(2));

  const std::string en = dir.write("en.json", R"({"schema_version": "1",
      "model": {"family": "generalized_en", "W": [[0, 1], [1, 0]], "pbar": [2, 2], "epsilon": [0.5, 0]}})");
  const json c = call_json({"classify", en});
  CHECK(c["noncontracting"] == true);
  CHECK(c["certificate"]["kind"] == "ENPositiveCash");
  CHECK(call_json({"solve", en})["method"] == "Algorithm1");
}

TEST_CASE("exit codes and streams") {
  TempDir dir;
  const Result missing = call({"solve", "nonexistent.json"});
  CHECK(missing.code == 1);
  CHECK(missing.out.empty());
  CHECK_FALSE(missing.err.empty());

  CHECK(call({"frobnicate"}).code == 1);
  CHECK(call({"solve"}).code == 1);
  CHECK(call({"--format", "xml", "demo", "seven-node"}).code == 1);
  CHECK(call({"demo", "nope"}).code == 1);

  const std::string bad = dir.write("bad.json", R"({"schema_version": "1", "W": [[0]], "shock": [NaN]})");
  CHECK(call({"solve", bad}).code == 1);
  const std::string inf = dir.write("inf.json", R"({"schema_version": "1", "W": [[1e999]], "shock": [0],
      "functions": [{"kind": "clamped_affine"}]})");
  CHECK(call({"solve", inf}).code == 1);
  const std::string version = dir.write("v2.json", R"({"schema_version": "2", "W": [[0]], "shock": [0],
      "functions": [{"kind": "clamped_affine"}]})");
  CHECK(call({"solve", version}).code == 1);

  const std::string ex = dir.write("ex.json", call({"--format", "json", "demo", "example-3-1", "--document"}).out);
  const Result banach = call({"solve", ex, "--method", "banach"});
  CHECK(banach.code == 2);
  CHECK(banach.out.empty());

  const std::string lin = dir.write("lin.json", R"({"schema_version": "1", "W": [[0]], "shock": [1],
      "functions": [{"kind": "clamped_affine", "gain": 0.5}]})");
  const Result pre = call({"enumerate", lin});
  CHECK(pre.code == 3);
  CHECK(pre.out.empty());
  CHECK(call({"solve", lin}).code == 0);

  CHECK(cli::exit_code(ErrorCode::NoEquilibriumFound) == 2);
  CHECK(cli::exit_code(ErrorCode::PreconditionViolated) == 3);
  CHECK(cli::exit_code(ErrorCode::Parse) == 1);
}

TEST_CASE("csv headers") {
  TempDir dir;
  const std::string ex = dir.write("ex.json", call({"--format", "json", "demo", "example-3-1", "--document"}).out);
  const auto header = [](std::vector<std::string> args) {
    args.insert(args.begin(), {"--format", "csv"});
    const Result r = call(args);
    REQUIRE_MESSAGE(r.code == 0, r.err);
    return first_line(r.out);
  };
  CHECK(header({"solve", ex}) == "agent,x");
  CHECK(header({"classify", ex}) == "field,value");
  CHECK(header({"probe", ex}) == "agent,x,direction,witness");
  CHECK(header({"enumerate", ex}) == "kind,id,agent,value");
  CHECK(header({"rate", ex, "--sampler", "discrete", "--trials", "10", "--seed", "1", "--support", "1,-1",
                "--support", "1,1"}) == "trials,multiple,fraction,seed");
  CHECK(header({"demo", "seven-node"}) == "agent,x,expected");
  CHECK(header({"demo", "comparative-a"}) == "agent,x,expected");
  CHECK(header({"demo", "example-3-1"}) == "agent,greatest,least");
  CHECK(header({"demo", "spectral-tightness"}) == "point,agent,x");

  const std::string lin = dir.write("lin.json", R"({"schema_version": "1", "W": [[0, 0.5], [0.5, 0]],
      "shock": [1, 2], "functions": [{"kind": "clamped_affine", "gain": 0.5}, {"kind": "clamped_affine", "gain": 0.5}]})");
  CHECK(header({"keyplayer", lin, "--alpha", "0.5"}) == "agent,x,sigma,katz_hub,katz_authority");
}

TEST_CASE("rate command") {
  TempDir dir;
  const std::string ex = dir.write("ex.json", call({"--format", "json", "demo", "example-3-1", "--document"}).out);
  const json d = call_json({"rate", ex, "--sampler", "discrete", "--trials", "2000", "--seed", "7", "--support",
                            "1,-1", "--support", "-1,1", "--support", "1,1", "--support", "-1,-1"});
  CHECK(std::fabs(d["fraction"].get<double>() - 0.5) <= 0.05);
  CHECK(d["seed"] == 7);
  const json c = call_json({"rate", ex, "--sampler", "continuous", "--trials", "500", "--seed", "7"});
  CHECK(c["fraction"] == 0.0);
}

TEST_CASE("text output") {
  const Result r = call({"demo", "seven-node"});
  CHECK(r.code == 0);
  CHECK(r.out.find("seven-node") != std::string::npos);
  CHECK(r.err.empty());
}

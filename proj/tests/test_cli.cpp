#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"

#include "charur/cli.hpp"
#include "charur/serialize.hpp"

using namespace charur;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / ("charur_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

// Numbers compare to 1e-10 relative; everything else exactly.
bool close(const json& a, const json& b, std::string& where, const std::string& path = "$") {
  if (a.is_number() && b.is_number()) {
    const double x = a.get<double>(), y = b.get<double>();
    if (std::abs(x - y) <= 1e-10 * std::max({1.0, std::abs(x), std::abs(y)})) return true;
    where = path;
    return false;
  }
  if (a.type() != b.type() || a.size() != b.size()) {
    where = path;
    return false;
  }
  if (a.is_array()) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!close(a[i], b[i], where, path + "[" + std::to_string(i) + "]")) return false;
    }
    return true;
  }
  if (a.is_object()) {
    for (const auto& [k, v] : a.items()) {
      if (!b.contains(k) || !close(v, b.at(k), where, path + "." + k)) {
        if (where.empty()) where = path + "." + k;
        return false;
      }
    }
    return true;
  }
  if (a == b) return true;
  where = path;
  return false;
}

json csv_as_json(const std::string& text) {
  json rows = json::array();
  std::stringstream ss(text);
  std::string line;
  std::getline(ss, line);
  rows.push_back(line);
  while (std::getline(ss, line)) {
    json row = json::array();
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Compares against tests/golden/<name>; CHARUR_UPDATE_GOLDEN=1 rewrites it.
void golden(const std::string& name, const json& actual) {
  const fs::path file = fs::path(CHARUR_GOLDEN_DIR) / name;
  if (std::getenv("CHARUR_UPDATE_GOLDEN")) {
    write(file, actual.dump(2) + "\n");
    return;
  }
  REQUIRE_MESSAGE(fs::exists(file), "missing golden file " << file);
  std::string where;
  CHECK_MESSAGE(close(json::parse(slurp(file)), actual, where), name << " differs at " << where);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("state and report golden output") {
    const fs::path dir = scratch();
    const Run s = run({"state", "--family", "su11-cs", "--xi", "0.5", "--k", "0.5", "--cutoff", "96"});
    REQUIRE(s.code == 0);
    const json state = json::parse(s.out);
    CHECK(state["tail_mass"].get<double>() < 1e-12);
    golden("state_su11_cs.json", state);
    write(dir / "cs.json", s.out);

    const Run r = run({"report", "--state", (dir / "cs.json").string(), "--orders", "1,2,3"});
    REQUIRE(r.code == 0);
    const json report = json::parse(r.out);
    CHECK(report["orders"]["2"]["saturated"] == true);
    CHECK(report["orders"]["3"]["saturated"] == true);
    golden("report_su11_cs.json", report);

    // The CLI report is the library report of the same state.
    const StateVector psi = state_from_json(state);
    const json direct = to_json(char_ur_report(su11_set(0.5, 96), psi), {1, 2, 3});
    std::string where;
    json cli_part = report;
    cli_part.erase("moments");
    CHECK_MESSAGE(close(direct, cli_part, where), "differs at " << where);
  }

  TEST_CASE("evolve golden output") {
    const fs::path dir = scratch();
    write(dir / "step.json", R"j({"kind": "omega", "omega0": 1, "expressions": {"omega": "1 + step(t)"}})j");
    const Run e = run({"evolve", "--profile", (dir / "step.json").string(), "--t1", "3", "--steps", "31"});
    REQUIRE(e.code == 0);
    const json rows = csv_as_json(e.out);
    CHECK(rows.size() == 32);
    golden("evolve_step.json", rows);
    const Run f = run({"evolve", "--profile", (dir / "step.json").string(), "--t1", "3", "--steps", "31", "--route", "flow"});
    REQUIRE(f.code == 0);
    std::string where;
    CHECK(close(rows, csv_as_json(f.out), where));
  }

  TEST_CASE("distance golden output") {
    const fs::path dir = scratch();
    write(dir / "a.json", run({"state", "--family", "glauber", "--alpha", "0.5", "--cutoff", "40"}).out);
    write(dir / "b.json", run({"state", "--family", "canonical-ss", "--alpha", "0.5", "--r", "0.3", "--theta", "0", "--cutoff", "40"}).out);
    const Run d = run({"distance", "--state", (dir / "a.json").string(), "--state2", (dir / "b.json").string(), "--observable", "n+1"});
    REQUIRE(d.code == 0);
    const json out = json::parse(d.out);
    CHECK(out["D2"].get<double>() == doctest::Approx(2.0 * (1.0 - out["g"].get<double>())));
    golden("distance_n1.json", out);
  }

  TEST_CASE("exit codes") {
    CHECK(run({}).code == 64);
    CHECK(run({"state"}).code == 64);
    CHECK(run({"state", "--family", "nope"}).code == 64);
    CHECK(run({"--help"}).code == 0);

    const Run bad = run({"state", "--family", "su11-cs", "--xi", "1.5"});
    CHECK(bad.code == 2);
    const json e = json::parse(bad.err);
    CHECK(e.contains("error"));
    CHECK(e.contains("message"));
    CHECK(e["error"] == "invalid-input");

    const fs::path dir = scratch();
    write(dir / "broken.json", "{ not json");
    CHECK(run({"report", "--state", (dir / "broken.json").string()}).code == 2);

    // A tail above 1e-8 is refused unless allowed.
    json wide = {{"basis", {{"kind", "fock"}, {"N", 10}}}, {"amplitudes", json::array()}};
    for (int n = 0; n < 10; ++n) wide["amplitudes"].push_back(json::array({n == 0 ? 0.6 : n == 9 ? 0.8 : 0.0, 0.0}));
    write(dir / "wide.json", wide.dump());
    CHECK(run({"state", "--family", "glauber", "--alpha", "4", "--cutoff", "24"}).code == 2);
    const Run tail = run({"report", "--state", (dir / "wide.json").string()});
    CHECK(tail.code == 2);
    CHECK(json::parse(tail.err)["error"] == "truncation");
    CHECK(run({"report", "--state", (dir / "wide.json").string(), "--allow-tail"}).code == 0);

    // Frequency growing like e^t exhausts the step budget: a numeric failure.
    write(dir / "blowup.json", R"j({"kind": "omega", "expressions": {"omega": "exp(t)"}})j");
    const Run blow = run({"evolve", "--profile", (dir / "blowup.json").string(), "--t1", "40", "--steps", "3"});
    CHECK(blow.code == 1);
    CHECK(json::parse(blow.err)["error"] == "step-size");
  }

  TEST_CASE("scan output does not depend on the thread count") {
    const std::vector<std::string> grid = {"scan", "--family", "canonical-ss", "--param", "r=0:1:5", "--param", "theta=0:3:4",
                                           "--alpha", "0.5", "--cutoff", "64"};
    auto with_jobs = [&](std::vector<std::string> args, const char* jobs) {
      args.push_back("--jobs");
      args.push_back(jobs);
      return run(args);
    };
    const Run a = with_jobs(grid, "1"), b = with_jobs(grid, "3");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 21);

    const std::vector<std::string> random = {"scan", "--random", "40", "--observables", "su11:0.5", "--complementary", "2"};
    const Run c = with_jobs(random, "1"), d = with_jobs(random, "4");
    REQUIRE(c.code == 0);
    CHECK(c.out == d.out);
    CHECK(c.out.find(",alpha_2,P2,V2") != std::string::npos);
  }

  TEST_CASE("selftest subset") {
    const Run s = run({"selftest", "--only", "5"});
    CHECK(s.code == 0);
    CHECK(s.out.find("1/1 criteria passed") != std::string::npos);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "atlas/model_io.hpp"
#include "doctest.h"
#include "json.hpp"

// End-to-end checks that spawn the installed binary (path in ATLAS_BIN) the
// way a user would, asserting on exit codes, files, and reproducibility.

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string& bin_path() {
  static const std::string path = [] {
    const char* env = std::getenv("ATLAS_BIN");
    REQUIRE_MESSAGE(env != nullptr, "ATLAS_BIN must point at the cli binary");
    return std::string(env);
  }();
  return path;
}

const std::string& work_dir() {
  static const std::string dir = [] {
    fs::path d = fs::temp_directory_path() / "atlas_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d.string();
  }();
  return dir;
}

struct CmdResult {
  int code = -1;
  std::string output;  // stdout and stderr combined
};

CmdResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  const std::string capture = work_dir() + "/cmd_" + std::to_string(counter++) + ".log";
  std::string cmd = env_prefix + bin_path() + " " + args + " >" + capture + " 2>&1";
  const int raw = std::system(cmd.c_str());
  CmdResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(capture);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  return r;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

long count_lines(const std::string& path) {
  std::ifstream in(path);
  long n = 0;
  std::string line;
  while (std::getline(in, line)) ++n;
  return n;
}

json smooth_config(const std::string& out_dir, double delta, int p) {
  return json{{"system", {{"name", "double-well-smooth"}}},
              {"atlas", {{"delta", delta}, {"d", 1}, {"p", p}}},
              {"seed", 5},
              {"out_dir", out_dir}};
}

std::string write_config(const std::string& name, const json& cfg) {
  const std::string path = work_dir() + "/" + name;
  write_text(path, cfg.dump(2) + "\n");
  return path;
}

// Learns a small smooth double-well model in `dir` and returns the model path.
std::string quick_model(const std::string& dir, double delta = 0.2) {
  const std::string cfg = write_config("quick_" + std::to_string(int(delta * 10)) + ".json",
                                       smooth_config(dir, delta, 400));
  CmdResult r = run_cli("learn --config " + cfg);
  REQUIRE_MESSAGE(r.code == 0, r.output);
  return dir + "/model.json";
}

}  // namespace

TEST_CASE("list-systems names every registered system") {
  CmdResult r = run_cli("list-systems");
  CHECK(r.code == 0);
  for (const char* name :
       {"double-well-smooth", "double-well-rough", "three-well-smooth",
        "three-well-rough", "image-three-well-smooth", "image-three-well-rough",
        "string", "lorenz96"})
    CHECK(r.output.find(name) != std::string::npos);
}

TEST_CASE("learn writes a model with provenance and reruns byte-identically") {
  const std::string dir = work_dir() + "/learn_run";
  const std::string cfg = write_config("learn.json", smooth_config(dir, 0.1, 400));

  CmdResult r = run_cli("learn --config " + cfg);
  REQUIRE_MESSAGE(r.code == 0, r.output);

  const std::string model_path = dir + "/model.json";
  atlas::AtlasModel model = atlas::load_model(model_path);
  CHECK(model.net.size() >= 15);
  CHECK(model.net.size() <= 30);
  CHECK(model.delta == 0.1);

  json meta = json::parse(slurp(dir + "/learn_meta.json"));
  CHECK(meta.at("command") == "learn");
  CHECK(meta.at("seed") == 5);
  CHECK(meta.at("chart_count") == model.net.size());
  CHECK(meta.at("config_hash").get<std::string>().size() == 16);
  CHECK(meta.at("wall_seconds").get<double>() >= 0.0);
  bool lists_model = false;
  for (const auto& out : meta.at("outputs"))
    lists_model |= out.get<std::string>().find("model.json") != std::string::npos;
  CHECK(lists_model);

  // The model artifact itself records which config produced it.
  json model_doc = json::parse(slurp(model_path));
  CHECK(model_doc.at("config_hash") == meta.at("config_hash"));

  const std::string bytes = slurp(model_path);
  CmdResult again = run_cli("learn --config " + cfg);
  REQUIRE(again.code == 0);
  CHECK(slurp(model_path) == bytes);
}

TEST_CASE("environment variables override seed and output directory") {
  const std::string dir = work_dir() + "/env_run";
  const std::string moved = work_dir() + "/env_moved";
  const std::string cfg = write_config("env.json", smooth_config(dir, 0.2, 300));

  CmdResult r = run_cli("learn --config " + cfg,
                        "ATLAS_SEED=41 ATLAS_OUT_DIR=" + moved + " ");
  REQUIRE_MESSAGE(r.code == 0, r.output);
  CHECK(!fs::exists(dir + "/model.json"));
  REQUIRE(fs::exists(moved + "/model.json"));
  json meta = json::parse(slurp(moved + "/learn_meta.json"));
  CHECK(meta.at("seed") == 41);

  // Same seed through the config file gives the same bytes.
  json cfg41 = smooth_config(dir, 0.2, 300);
  cfg41["seed"] = 41;
  CmdResult direct = run_cli("learn --config " + write_config("env41.json", cfg41));
  REQUIRE(direct.code == 0);
  CHECK(slurp(dir + "/model.json") == slurp(moved + "/model.json"));
}

TEST_CASE("config errors exit with code 2 and name the problem") {
  const std::string dir = work_dir() + "/bad_runs";

  json bad_delta = smooth_config(dir, -1.0, 100);
  CmdResult r = run_cli("learn --config " + write_config("bad_delta.json", bad_delta));
  CHECK(r.code == 2);
  CHECK(r.output.find("delta") != std::string::npos);

  json no_system = bad_delta;
  no_system["atlas"]["delta"] = 0.2;
  no_system.erase("system");
  r = run_cli("learn --config " + write_config("no_system.json", no_system));
  CHECK(r.code == 2);
  CHECK(r.output.find("system") != std::string::npos);

  json unknown_system = smooth_config(dir, 0.2, 100);
  unknown_system["system"]["name"] = "pendulum";
  r = run_cli("learn --config " + write_config("unknown_system.json", unknown_system));
  CHECK(r.code == 2);
  CHECK(r.output.find("unknown system") != std::string::npos);

  json typo = smooth_config(dir, 0.2, 100);
  typo["ouput_dir"] = dir;
  r = run_cli("learn --config " + write_config("typo.json", typo));
  CHECK(r.code == 2);
  CHECK(r.output.find("ouput_dir") != std::string::npos);

  write_text(work_dir() + "/mangled.json", "{\"system\": ");
  r = run_cli("learn --config " + work_dir() + "/mangled.json");
  CHECK(r.code == 2);

  r = run_cli("learn --config " + work_dir() + "/does_not_exist.json");
  CHECK(r.code == 2);

  r = run_cli("learn");
  CHECK(r.code == 2);
}

TEST_CASE("simulate emits reproducible trajectories") {
  const std::string dir = work_dir() + "/sim_run";
  const std::string cfg_path = write_config("sim.json", smooth_config(dir, 0.2, 400));
  REQUIRE(run_cli("learn --config " + cfg_path).code == 0);
  const std::string model = dir + "/model.json";

  // Zero steps: header plus exactly one row.
  CmdResult r = run_cli("simulate --config " + cfg_path + " --model " + model +
                        " --steps 0 --out " + dir + "/t0.csv");
  REQUIRE_MESSAGE(r.code == 0, r.output);
  CHECK(count_lines(dir + "/t0.csv") == 2);

  r = run_cli("simulate --config " + cfg_path + " --model " + model +
              " --steps 200 --chart 3 --out " + dir + "/t1.csv");
  REQUIRE_MESSAGE(r.code == 0, r.output);
  CmdResult again = run_cli("simulate --config " + cfg_path + " --model " + model +
                            " --steps 200 --chart 3 --out " + dir + "/t2.csv");
  REQUIRE(again.code == 0);
  CHECK(slurp(dir + "/t1.csv") == slurp(dir + "/t2.csv"));

  atlas::AtlasTrajectory traj = atlas::read_trajectory_csv(dir + "/t1.csv");
  REQUIRE(traj.states.size() == 201);
  CHECK(traj.states[0].chart == 3);
  CHECK(traj.times[0] == 0.0);
  atlas::AtlasModel m = atlas::load_model(model);
  CHECK(traj.times[200] == doctest::Approx(200 * m.dt).epsilon(1e-12));

  r = run_cli("simulate --config " + cfg_path + " --model " + dir +
              "/missing_model.json --steps 5");
  CHECK(r.code == 2);

  r = run_cli("simulate --config " + cfg_path + " --model " + model +
              " --steps 5 --chart 99999");
  CHECK(r.code == 2);
  CHECK(r.output.find("chart") != std::string::npos);
}

TEST_CASE("a million surrogate steps finish within a minute") {
  const std::string dir = work_dir() + "/speed_run";
  const std::string model = quick_model(dir);
  const std::string cfg = work_dir() + "/quick_2.json";

  const auto start = std::chrono::steady_clock::now();
  CmdResult r = run_cli("simulate --config " + cfg + " --model " + model +
                        " --steps 1000000 --out " + dir + "/long.csv");
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  REQUIRE_MESSAGE(r.code == 0, r.output);
  CHECK(seconds < 60.0);
  CHECK(count_lines(dir + "/long.csv") == 1000002);
  fs::remove(dir + "/long.csv");
}

TEST_CASE("compare reports the configured step-size ratio on the rough well") {
  const std::string dir = work_dir() + "/rough_run";
  json cfg{{"system", {{"name", "double-well-rough"}}},
           {"atlas", {{"delta", 0.1}, {"d", 1}, {"p", 150}, {"t0", 0.02}}},
           {"seed", 9},
           {"out_dir", dir},
           {"compare",
            {{"n_ics", 1}, {"n_paths", 10}, {"times", json::array({0.01})}}}};
  const std::string cfg_path = write_config("rough.json", cfg);
  REQUIRE(run_cli("learn --config " + cfg_path).code == 0);

  CmdResult r = run_cli("compare --config " + cfg_path + " --model " + dir +
                        "/model.json");
  REQUIRE_MESSAGE(r.code == 0, r.output);

  json report = json::parse(slurp(dir + "/comparison.json"));
  CHECK(report.at("dt_ratio").get<double>() == doctest::Approx(80.0).epsilon(1e-9));
  CHECK(report.at("times").size() == 1);
  CHECK(report.at("l1").size() == 1);
  CHECK(report.at("config_hash").get<std::string>().size() == 16);
  CHECK(r.output.find("80") != std::string::npos);

  // Slice rows land in the csv flavor too.
  const std::string csv = slurp(dir + "/comparison.csv");
  CHECK(csv.rfind("time,mean_l1,std_l1", 0) == 0);
  CHECK(count_lines(dir + "/comparison.csv") == 2);
  CHECK(fs::exists(dir + "/histograms.csv"));
}

TEST_CASE("self comparison of the original simulator stays under 0.05") {
  const std::string dir = work_dir() + "/self_run";
  json cfg = smooth_config(dir, 0.2, 400);
  cfg["compare"] = {{"n_ics", 2},
                    {"n_paths", 10000},
                    {"horizon", 4.0},
                    {"delta_c", 0.2},
                    {"self_test", true}};
  const std::string cfg_path = write_config("self.json", cfg);
  REQUIRE(run_cli("learn --config " + cfg_path).code == 0);

  CmdResult r = run_cli("compare --config " + cfg_path + " --model " + dir +
                        "/model.json");
  REQUIRE_MESSAGE(r.code == 0, r.output);
  json report = json::parse(slurp(dir + "/comparison.json"));
  REQUIRE(report.at("times") == json::array({1.0, 2.0, 4.0}));
  for (const auto& v : report.at("mean_l1")) {
    CHECK(v.get<double>() < 0.05);
    CHECK(v.get<double>() > 0.0);
  }
}

TEST_CASE("transition-times writes matched statistics for both simulators") {
  const std::string dir = work_dir() + "/trans_run";
  json cfg = smooth_config(dir, 0.2, 400);
  cfg["transitions"] = {
      {"n_paths", 4},
      {"path_time", 100.0},
      {"regions",
       json::array({{{"label", 1}, {"type", "ball"}, {"center", {0.0}}, {"radius", 0.25}},
                    {{"label", 2}, {"type", "ball"}, {"center", {1.0}}, {"radius", 0.25}}})}};
  const std::string cfg_path = write_config("trans.json", cfg);
  REQUIRE(run_cli("learn --config " + cfg_path).code == 0);

  CmdResult r = run_cli("transition-times --config " + cfg_path + " --model " +
                        dir + "/model.json");
  REQUIRE_MESSAGE(r.code == 0, r.output);

  json report = json::parse(slurp(dir + "/transition_times.json"));
  CHECK(report.at("config_hash").get<std::string>().size() == 16);
  CHECK(report.at("overlaps") == 0);
  bool saw_12_original = false, saw_12_atlas = false;
  for (const auto& e : report.at("entries")) {
    CHECK(e.at("count").get<int>() > 0);
    CHECK(e.at("mean_time").get<double>() > 0.0);
    if (e.at("from") == 1 && e.at("to") == 2) {
      if (e.at("side") == "original") saw_12_original = true;
      if (e.at("side") == "atlas") saw_12_atlas = true;
    }
  }
  CHECK(saw_12_original);
  CHECK(saw_12_atlas);

  const std::string csv = slurp(dir + "/transition_times.csv");
  CHECK(csv.rfind("from,to,side,count,mean_time,total_time", 0) == 0);

  // Same seed, same statistics.
  CmdResult again = run_cli("transition-times --config " + cfg_path + " --model " +
                            dir + "/model.json");
  REQUIRE(again.code == 0);
  CHECK(json::parse(slurp(dir + "/transition_times.json")) == report);
}

TEST_CASE("sample-stationary draws a reproducible ensemble") {
  const std::string dir = work_dir() + "/qhat_run";
  const std::string model = quick_model(dir);
  const std::string cfg = work_dir() + "/quick_2.json";

  CmdResult r = run_cli("sample-stationary --config " + cfg + " --model " + model +
                        " --samples 50 --steps 100 --out " + dir + "/q1.csv");
  REQUIRE_MESSAGE(r.code == 0, r.output);
  CHECK(count_lines(dir + "/q1.csv") == 51);
  const std::string head = slurp(dir + "/q1.csv").substr(0, 15);
  CHECK(head.rfind("sample,chart,x1", 0) == 0);

  CmdResult again = run_cli("sample-stationary --config " + cfg + " --model " +
                            model + " --samples 50 --steps 100 --out " + dir +
                            "/q2.csv");
  REQUIRE(again.code == 0);
  CHECK(slurp(dir + "/q1.csv") == slurp(dir + "/q2.csv"));
}

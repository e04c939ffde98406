#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "atlas/experiment.hpp"
#include "atlas/learn.hpp"
#include "atlas/model_io.hpp"
#include "atlas/simulate.hpp"
#include "atlas/systems/registry.hpp"
#include "json.hpp"

// Command-line front end. One JSON config file describes the system, the
// atlas parameters, and the experiment blocks; subcommands wire it to the
// library. Every artifact carries the config hash so a run directory is
// self-describing, and all randomness flows from the single config seed.
//
// Exit codes: 0 success, 2 usage or config error, 3 numerical failure.
// Environment: ATLAS_SEED overrides the config seed, ATLAS_OUT_DIR the
// output directory.

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace atlas;

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void reject_unknown_keys(const json& obj, const char* where,
                         std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* name : allowed) known |= key == name;
    if (!known)
      throw std::invalid_argument(std::string("config: unknown ") + where +
                                  " key '" + key + "'");
  }
}

struct Config {
  json doc;
  std::string hash;
  std::string system_name;
  json system_params = json::object();
  LearnParams lp;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out_dir = ".";
  CompareParams compare;
  TransitionParams transitions;
  json regions = json::array();
};

Config load_config(const std::string& path) {
  if (!fs::exists(path))
    throw std::invalid_argument("config file not found: " + path);
  std::ifstream in(path);
  Config cfg;
  try {
    cfg.doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("config: " + path + ": " + e.what());
  }
  if (!cfg.doc.is_object())
    throw std::invalid_argument("config: top level must be an object");

  try {
    reject_unknown_keys(cfg.doc, "config",
                        {"system", "atlas", "seed", "threads", "out_dir",
                         "compare", "transitions"});
    if (!cfg.doc.contains("system") || !cfg.doc["system"].is_object())
      throw std::invalid_argument("config: a system object is required");
    const json& system = cfg.doc["system"];
    reject_unknown_keys(system, "system", {"name", "params"});
    cfg.system_name = system.at("name").get<std::string>();
    if (system.contains("params")) cfg.system_params = system["params"];

    if (!cfg.doc.contains("atlas") || !cfg.doc["atlas"].is_object())
      throw std::invalid_argument("config: an atlas object is required");
    const json& a = cfg.doc["atlas"];
    reject_unknown_keys(a, "atlas", {"delta", "d", "m", "p", "t0", "dt"});
    if (!a.contains("delta") || !a.contains("d"))
      throw std::invalid_argument("config: atlas.delta and atlas.d are required");
    cfg.lp.delta = a["delta"].get<double>();
    cfg.lp.d = a["d"].get<int>();
    if (a.contains("m")) cfg.lp.m = a["m"].get<int>();
    if (a.contains("p")) cfg.lp.p = a["p"].get<int>();
    if (a.contains("t0")) cfg.lp.t0 = a["t0"].get<double>();
    if (a.contains("dt")) cfg.lp.dt = a["dt"].get<double>();

    if (cfg.doc.contains("seed")) cfg.seed = cfg.doc["seed"].get<std::uint64_t>();
    if (cfg.doc.contains("threads")) cfg.threads = cfg.doc["threads"].get<int>();
    if (cfg.doc.contains("out_dir"))
      cfg.out_dir = cfg.doc["out_dir"].get<std::string>();

    if (cfg.doc.contains("compare")) {
      const json& c = cfg.doc["compare"];
      reject_unknown_keys(c, "compare",
                          {"n_ics", "n_paths", "horizon", "times", "delta_c",
                           "self_test"});
      if (c.contains("n_ics")) cfg.compare.n_ics = c["n_ics"].get<int>();
      if (c.contains("n_paths")) cfg.compare.n_paths = c["n_paths"].get<int>();
      if (c.contains("horizon")) cfg.compare.horizon = c["horizon"].get<double>();
      if (c.contains("delta_c")) cfg.compare.delta_c = c["delta_c"].get<double>();
      if (c.contains("self_test")) cfg.compare.self_test = c["self_test"].get<bool>();
      if (c.contains("times"))
        cfg.compare.times = c["times"].get<std::vector<double>>();
    }

    if (cfg.doc.contains("transitions")) {
      const json& t = cfg.doc["transitions"];
      reject_unknown_keys(t, "transitions", {"n_paths", "path_time", "regions"});
      if (t.contains("n_paths")) cfg.transitions.n_paths = t["n_paths"].get<int>();
      if (t.contains("path_time"))
        cfg.transitions.path_time = t["path_time"].get<double>();
      if (t.contains("regions")) cfg.regions = t["regions"];
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }

  if (const char* env = std::getenv("ATLAS_SEED")) {
    char* end = nullptr;
    cfg.seed = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
      throw std::invalid_argument(std::string("ATLAS_SEED is not a number: ") + env);
  }
  if (const char* env = std::getenv("ATLAS_OUT_DIR")) cfg.out_dir = env;

  // The hash identifies the effective recipe: the parsed config with the
  // final seed applied, minus the keys that cannot change any result
  // (where files land, how many workers run).
  json canonical = cfg.doc;
  canonical["seed"] = cfg.seed;
  canonical.erase("out_dir");
  canonical.erase("threads");
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(hash_label(canonical.dump())));
  cfg.hash = hex;
  return cfg;
}

systems::SystemBundle build_system(const Config& cfg) {
  Rng rng = Rng(cfg.seed).child("system");
  return systems::make_system(cfg.system_name, cfg.system_params, rng);
}

AtlasModel load_model_checked(const std::string& path) {
  if (!fs::exists(path))
    throw std::invalid_argument("model file not found: " + path);
  return load_model(path);
}

void write_text_file(const std::string& path, const std::string& text) {
  fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_meta(const Config& cfg, const std::string& command, double wall_seconds,
                const std::string& started_at, json extra,
                const std::vector<std::string>& outputs) {
  extra["command"] = command;
  extra["config_hash"] = cfg.hash;
  extra["seed"] = cfg.seed;
  extra["system"] = cfg.system_name;
  extra["started_at"] = started_at;
  extra["wall_seconds"] = wall_seconds;
  extra["outputs"] = outputs;
  std::string name = command;
  for (char& c : name)
    if (c == '-') c = '_';
  write_text_file(cfg.out_dir + "/" + name + "_meta.json", extra.dump() + "\n");
}

Vector parse_number_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
      throw std::invalid_argument(std::string("could not parse ") + what + ": " + tok);
    values.push_back(v);
  }
  if (values.empty())
    throw std::invalid_argument(std::string(what) + " must not be empty");
  Vector v(static_cast<long>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i)
    v[static_cast<long>(i)] = values[i];
  return v;
}

struct StartSpec {
  int chart = 0;
  std::string coords;   // comma list in chart coordinates, default origin
  std::string ambient;  // comma list in ambient coordinates
};

AtlasState resolve_start(const StartSpec& spec, const AtlasModel& model,
                         const Config& cfg) {
  if (!spec.ambient.empty()) {
    Vector y = parse_number_list(spec.ambient, "--ambient");
    systems::SystemBundle bundle = build_system(cfg);
    return state_from_ambient(model, y, bundle.space.distance);
  }
  if (spec.chart < 0 || spec.chart >= model.net.size())
    throw std::invalid_argument("chart index out of range (model has " +
                                std::to_string(model.net.size()) + " charts)");
  AtlasState s{spec.chart, Vector::Zero(model.d)};
  if (!spec.coords.empty()) {
    s.x = parse_number_list(spec.coords, "--coords");
    if (s.x.size() != model.d)
      throw std::invalid_argument("--coords needs exactly " +
                                  std::to_string(model.d) + " entries");
  }
  return s;
}

int cmd_list_systems() {
  for (const std::string& name : systems::system_names()) std::cout << name << "\n";
  return 0;
}

int cmd_learn(const std::string& config_path, const std::string& model_out,
              int threads) {
  Stopwatch watch;
  const std::string started = utc_now();
  Config cfg = load_config(config_path);
  if (threads > 0) cfg.threads = threads;
  LearnParams lp = cfg.lp;
  lp.threads = cfg.threads;
  lp = lp.resolved();

  systems::SystemBundle bundle = build_system(cfg);
  AtlasModel model = learn_atlas(bundle.space, lp, cfg.seed);

  const std::string model_path =
      model_out.empty() ? cfg.out_dir + "/model.json" : model_out;
  json doc = json::parse(model_to_json(model));
  doc["config_hash"] = cfg.hash;
  write_text_file(model_path, doc.dump() + "\n");

  write_meta(cfg, "learn", watch.seconds(), started,
             json{{"chart_count", model.net.size()},
                  {"micro_dt", bundle.micro_dt},
                  {"dt_ratio", bundle.micro_dt > 0 ? model.dt / bundle.micro_dt : 0.0},
                  {"system_params", bundle.params_used},
                  {"warnings", model.warnings}},
             {model_path});

  std::cout << "learned " << model.net.size() << " charts (delta "
            << format_double(model.delta) << ", d " << model.d << ", dt "
            << format_double(model.dt) << ") -> " << model_path << "\n";
  for (const std::string& w : model.warnings) std::cout << "warning: " << w << "\n";
  return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& model_path,
                 long steps, const StartSpec& start, const std::string& out_path) {
  Stopwatch watch;
  const std::string started = utc_now();
  Config cfg = load_config(config_path);
  if (steps < 0) throw std::invalid_argument("--steps must be nonnegative");
  AtlasModel model = load_model_checked(model_path);
  AtlasState s0 = resolve_start(start, model, cfg);

  Rng rng = Rng(cfg.seed).child("simulate");
  AtlasTrajectory traj = run(model, s0, steps, rng);

  const std::string out =
      out_path.empty() ? cfg.out_dir + "/trajectory.csv" : out_path;
  fs::path parent = fs::path(out).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  write_trajectory_csv(out, traj, &model);
  write_meta(cfg, "simulate", watch.seconds(), started,
             json{{"steps", steps}, {"model", model_path}}, {out});
  std::cout << "wrote " << traj.states.size() << " states -> " << out << "\n";
  return 0;
}

int cmd_sample_stationary(const std::string& config_path,
                          const std::string& model_path, long samples, long steps,
                          const StartSpec& start, const std::string& out_path) {
  Stopwatch watch;
  const std::string started = utc_now();
  Config cfg = load_config(config_path);
  if (samples < 1) throw std::invalid_argument("--samples must be positive");
  if (steps < 1) throw std::invalid_argument("--steps must be positive");
  AtlasModel model = load_model_checked(model_path);
  AtlasState s0 = resolve_start(start, model, cfg);

  std::ostringstream csv;
  csv << "sample,chart";
  for (int i = 1; i <= model.d; ++i) csv << ",x" << i;
  csv << "\n";
  for (long s = 0; s < samples; ++s) {
    Rng rng = Rng(cfg.seed).child("qhat", static_cast<std::uint64_t>(s));
    AtlasState q = sample_qhat(model, s0, steps, rng);
    csv << s << ',' << q.chart;
    for (long i = 0; i < q.x.size(); ++i) csv << ',' << format_double(q.x[i]);
    csv << "\n";
  }

  const std::string out =
      out_path.empty() ? cfg.out_dir + "/stationary.csv" : out_path;
  write_text_file(out, csv.str());
  write_meta(cfg, "sample-stationary", watch.seconds(), started,
             json{{"samples", samples}, {"steps", steps}, {"model", model_path}},
             {out});
  std::cout << "wrote " << samples << " stationary samples -> " << out << "\n";
  return 0;
}

int cmd_compare(const std::string& config_path, const std::string& model_path,
                bool self_flag, int threads) {
  Stopwatch watch;
  const std::string started = utc_now();
  Config cfg = load_config(config_path);
  if (threads > 0) cfg.threads = threads;
  AtlasModel model = load_model_checked(model_path);
  systems::SystemBundle bundle = build_system(cfg);

  CompareParams cp = cfg.compare;
  cp.micro_dt = bundle.micro_dt;
  cp.self_test |= self_flag;
  cp.threads = cfg.threads;
  ComparisonReport rep = run_comparison(bundle.space, model, cp, cfg.seed);

  const auto n_ics = rep.start_charts.size();
  const auto n_times = rep.times.size();

  json l1 = json::array();
  for (std::size_t ic = 0; ic < n_ics; ++ic) {
    json row = json::array();
    for (std::size_t k = 0; k < n_times; ++k)
      row.push_back(rep.l1(static_cast<long>(ic), static_cast<long>(k)));
    l1.push_back(std::move(row));
  }
  json mean = json::array(), sd = json::array();
  for (std::size_t k = 0; k < n_times; ++k) {
    mean.push_back(rep.mean_l1[static_cast<long>(k)]);
    sd.push_back(rep.std_l1[static_cast<long>(k)]);
  }
  json report{{"config_hash", cfg.hash},     {"system", bundle.name},
              {"self_test", cp.self_test},   {"dt_ratio", rep.dt_ratio},
              {"times", rep.times},          {"start_charts", rep.start_charts},
              {"l1", std::move(l1)},         {"mean_l1", std::move(mean)},
              {"std_l1", std::move(sd)},     {"coarse_bins", rep.coarse_centers.size()}};
  const std::string json_path = cfg.out_dir + "/comparison.json";
  write_text_file(json_path, report.dump() + "\n");

  std::ostringstream csv;
  csv << "time,mean_l1,std_l1";
  for (std::size_t ic = 0; ic < n_ics; ++ic) csv << ",l1_ic" << ic;
  csv << "\n";
  for (std::size_t k = 0; k < n_times; ++k) {
    csv << format_double(rep.times[k]) << ','
        << format_double(rep.mean_l1[static_cast<long>(k)]) << ','
        << format_double(rep.std_l1[static_cast<long>(k)]);
    for (std::size_t ic = 0; ic < n_ics; ++ic)
      csv << ',' << format_double(rep.l1(static_cast<long>(ic), static_cast<long>(k)));
    csv << "\n";
  }
  const std::string csv_path = cfg.out_dir + "/comparison.csv";
  write_text_file(csv_path, csv.str());

  std::ostringstream hist;
  hist << "ic,time,side,bin,weight\n";
  for (std::size_t ic = 0; ic < n_ics; ++ic)
    for (std::size_t k = 0; k < n_times; ++k) {
      const Vector& p = rep.original_hist[ic][k];
      const Vector& q = rep.atlas_hist[ic][k];
      for (long b = 0; b < p.size(); ++b)
        hist << ic << ',' << format_double(rep.times[k]) << ",original," << b
             << ',' << format_double(p[b]) << "\n";
      for (long b = 0; b < q.size(); ++b)
        hist << ic << ',' << format_double(rep.times[k])
             << (cp.self_test ? ",self," : ",atlas,") << b << ','
             << format_double(q[b]) << "\n";
    }
  const std::string hist_path = cfg.out_dir + "/histograms.csv";
  write_text_file(hist_path, hist.str());

  write_meta(cfg, "compare", watch.seconds(), started,
             json{{"model", model_path},
                  {"n_ics", cp.n_ics},
                  {"n_paths", cp.n_paths},
                  {"self_test", cp.self_test}},
             {json_path, csv_path, hist_path});

  std::cout << "step-size ratio " << format_double(rep.dt_ratio) << " (surrogate dt "
            << format_double(model.dt) << " / micro dt "
            << format_double(bundle.micro_dt) << ")\n";
  for (std::size_t k = 0; k < n_times; ++k)
    std::cout << "t=" << format_double(rep.times[k]) << ": mean L1 "
              << format_double(rep.mean_l1[static_cast<long>(k)]) << " +/- "
              << format_double(rep.std_l1[static_cast<long>(k)]) << "\n";
  return 0;
}

std::vector<Region> parse_regions(const json& regions) {
  if (!regions.is_array() || regions.empty())
    throw std::invalid_argument(
        "config: transitions.regions must be a nonempty array");
  std::vector<Region> out;
  for (const json& r : regions) {
    reject_unknown_keys(r, "region", {"label", "type", "center", "radius"});
    const int label = r.at("label").get<int>();
    const std::string type = r.at("type").get<std::string>();
    const auto center_values = r.at("center").get<std::vector<double>>();
    Vector center(static_cast<long>(center_values.size()));
    for (std::size_t i = 0; i < center_values.size(); ++i)
      center[static_cast<long>(i)] = center_values[i];
    const double radius = r.at("radius").get<double>();
    if (radius <= 0) throw std::invalid_argument("config: region radius must be positive");
    if (type == "ball")
      out.push_back(ball_region(label, center, radius));
    else if (type == "outside")
      out.push_back(outside_region(label, center, radius));
    else
      throw std::invalid_argument("config: region type must be ball or outside");
  }
  return out;
}

int cmd_transition_times(const std::string& config_path,
                         const std::string& model_path, int threads) {
  Stopwatch watch;
  const std::string started = utc_now();
  Config cfg = load_config(config_path);
  if (threads > 0) cfg.threads = threads;
  AtlasModel model = load_model_checked(model_path);
  systems::SystemBundle bundle = build_system(cfg);
  std::vector<Region> regions = parse_regions(cfg.regions);

  TransitionParams tp = cfg.transitions;
  tp.micro_dt = bundle.micro_dt;
  tp.threads = cfg.threads;
  TransitionReport rep = run_transition_times(bundle.space, model, regions, tp,
                                              cfg.seed);

  json entries = json::array();
  std::ostringstream csv;
  csv << "from,to,side,count,mean_time,total_time\n";
  auto emit = [&](const TransitionStats& stats, const char* side) {
    for (int i = 1; i <= stats.n_regions(); ++i)
      for (int j = 1; j <= stats.n_regions(); ++j) {
        if (i == j || !stats.has(i, j)) continue;
        entries.push_back(json{{"from", i},
                               {"to", j},
                               {"side", side},
                               {"count", stats.count(i, j)},
                               {"mean_time", stats.mean(i, j)},
                               {"total_time", stats.total_time(i, j)}});
        csv << i << ',' << j << ',' << side << ',' << stats.count(i, j) << ','
            << format_double(stats.mean(i, j)) << ','
            << format_double(stats.total_time(i, j)) << "\n";
      }
  };
  emit(rep.original, "original");
  emit(rep.atlas, "atlas");

  json report{{"config_hash", cfg.hash},
              {"system", bundle.name},
              {"micro_dt", rep.micro_dt},
              {"atlas_dt", rep.atlas_dt},
              {"n_paths", tp.n_paths},
              {"path_time", tp.path_time},
              {"overlaps", rep.overlaps},
              {"entries", std::move(entries)}};
  const std::string json_path = cfg.out_dir + "/transition_times.json";
  write_text_file(json_path, report.dump() + "\n");
  const std::string csv_path = cfg.out_dir + "/transition_times.csv";
  write_text_file(csv_path, csv.str());
  write_meta(cfg, "transition-times", watch.seconds(), started,
             json{{"model", model_path}}, {json_path, csv_path});

  for (const auto& e : report["entries"])
    std::cout << e["from"] << " -> " << e["to"] << " (" << e["side"].get<std::string>()
              << "): mean " << format_double(e["mean_time"].get<double>()) << " over "
              << e["count"] << " samples\n";
  if (rep.overlaps > 0)
    std::cout << "warning: " << rep.overlaps
              << " points matched more than one region\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Atlas surrogate toolkit: learn chart-based surrogate simulators from "
      "short bursts of an expensive stochastic system, run them, and compare "
      "both simulators across timescales.\n"
      "Environment: ATLAS_SEED overrides the config seed; ATLAS_OUT_DIR "
      "overrides the output directory."};
  app.require_subcommand(1);

  std::string config_path, model_path, model_out, out_path;
  StartSpec start;
  long steps = 0, samples = 0;
  int threads = 0;
  bool self_flag = false;

  CLI::App* learn = app.add_subcommand(
      "learn",
      "Learn a surrogate model from the configured system. The surrogate "
      "step defaults to dt = t0/5; theory permits up to order "
      "delta/log(1/delta).");
  learn->add_option("--config", config_path, "JSON config file")->required();
  learn->add_option("--model-out", model_out,
                    "Model path (default <out_dir>/model.json)");
  learn->add_option("--threads", threads, "Worker pool size (0 = config value)");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run the learned surrogate and write a trajectory CSV.");
  simulate->add_option("--config", config_path, "JSON config file")->required();
  simulate->add_option("--model", model_path, "Learned model file")->required();
  simulate->add_option("--steps", steps, "Number of surrogate steps")->required();
  simulate->add_option("--chart", start.chart, "Start chart index (default 0)");
  simulate->add_option("--coords", start.coords,
                       "Start chart coordinates, comma separated (default origin)");
  simulate->add_option("--ambient", start.ambient,
                       "Ambient start point, comma separated (overrides --chart)");
  simulate->add_option("--out", out_path,
                       "Trajectory path (default <out_dir>/trajectory.csv)");

  CLI::App* qhat = app.add_subcommand(
      "sample-stationary",
      "Draw approximate stationary samples: each sample runs the surrogate "
      "for --steps moves plus one uniformly shortened move.");
  qhat->add_option("--config", config_path, "JSON config file")->required();
  qhat->add_option("--model", model_path, "Learned model file")->required();
  qhat->add_option("--samples", samples, "Number of samples")->required();
  qhat->add_option("--steps", steps, "Surrogate steps per sample")->required();
  qhat->add_option("--chart", start.chart, "Start chart index (default 0)");
  qhat->add_option("--coords", start.coords, "Start chart coordinates");
  qhat->add_option("--out", out_path, "CSV path (default <out_dir>/stationary.csv)");

  CLI::App* compare = app.add_subcommand(
      "compare",
      "Simulate path ensembles with both simulators from shared initial "
      "conditions and report coarse-binned L1 distances per time slice.");
  compare->add_option("--config", config_path, "JSON config file")->required();
  compare->add_option("--model", model_path, "Learned model file")->required();
  compare->add_flag("--self", self_flag,
                    "Compare the original simulator against itself (noise floor)");
  compare->add_option("--threads", threads, "Worker pool size (0 = config value)");

  CLI::App* transition = app.add_subcommand(
      "transition-times",
      "Estimate mean metastable transition times from long runs of both "
      "simulators, using the regions in the config.");
  transition->add_option("--config", config_path, "JSON config file")->required();
  transition->add_option("--model", model_path, "Learned model file")->required();
  transition->add_option("--threads", threads, "Worker pool size (0 = config value)");

  app.add_subcommand("list-systems", "List the built-in example systems.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand("list-systems")) return cmd_list_systems();
    if (app.got_subcommand(learn)) return cmd_learn(config_path, model_out, threads);
    if (app.got_subcommand(simulate))
      return cmd_simulate(config_path, model_path, steps, start, out_path);
    if (app.got_subcommand(qhat))
      return cmd_sample_stationary(config_path, model_path, samples, steps, start,
                                   out_path);
    if (app.got_subcommand(compare))
      return cmd_compare(config_path, model_path, self_flag, threads);
    if (app.got_subcommand(transition))
      return cmd_transition_times(config_path, model_path, threads);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

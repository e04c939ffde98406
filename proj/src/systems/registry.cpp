#include "atlas/systems/registry.hpp"

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>

#include "atlas/systems/image.hpp"
#include "atlas/systems/lorenz96.hpp"
#include "atlas/systems/potentials.hpp"
#include "atlas/systems/sde.hpp"
#include "atlas/systems/string_system.hpp"

namespace atlas::systems {

namespace {

void check_keys(const nlohmann::json& params,
                std::initializer_list<const char*> allowed,
                const std::string& system) {
  if (!params.is_object())
    throw std::invalid_argument("system '" + system +
                                "': params must be a JSON object");
  for (auto it = params.begin(); it != params.end(); ++it) {
    bool known = false;
    for (const char* key : allowed)
      if (it.key() == key) known = true;
    if (!known)
      throw std::invalid_argument("system '" + system + "': unknown parameter '" +
                                  it.key() + "'");
  }
}

double num(const nlohmann::json& params, const char* key, double fallback,
           const std::string& system, bool positive = true) {
  if (!params.contains(key)) return fallback;
  const nlohmann::json& v = params.at(key);
  if (!v.is_number())
    throw std::invalid_argument("system '" + system + "': parameter '" + key +
                                "' must be numeric");
  double x = v.get<double>();
  if (positive && x <= 0.0)
    throw std::invalid_argument("system '" + system + "': parameter '" + key +
                                "' must be positive");
  return x;
}

int integer(const nlohmann::json& params, const char* key, int fallback,
            const std::string& system, int min_value) {
  if (!params.contains(key)) return fallback;
  const nlohmann::json& v = params.at(key);
  if (!v.is_number_integer())
    throw std::invalid_argument("system '" + system + "': parameter '" + key +
                                "' must be an integer");
  int x = v.get<int>();
  if (x < min_value)
    throw std::invalid_argument("system '" + system + "': parameter '" + key +
                                "' must be at least " + std::to_string(min_value));
  return x;
}

PointList heal_all(const SdeSystem& sys, PointList pts, double heal_time,
                   Rng& rng) {
  if (heal_time <= 0.0) return pts;
  for (Vector& p : pts) p = euler_maruyama(sys, std::move(p), heal_time, rng);
  return pts;
}

// Grid over the covered rectangle, dropping high-energy points the dynamics
// would essentially never visit.
PointList three_well_grid(double spacing, double cutoff) {
  const double x_lo = -1.5, x_hi = 3.5, y_lo = -1.5, y_hi = 2.5;
  auto nx = static_cast<long long>(std::llround((x_hi - x_lo) / spacing)) + 1;
  auto ny = static_cast<long long>(std::llround((y_hi - y_lo) / spacing)) + 1;
  PointList pts;
  Vector p(2);
  for (long long ix = 0; ix < nx; ++ix) {
    p[0] = x_lo + spacing * static_cast<double>(ix);
    for (long long iy = 0; iy < ny; ++iy) {
      p[1] = y_lo + spacing * static_cast<double>(iy);
      if (u2(p) < cutoff) pts.push_back(p);
    }
  }
  return pts;
}

SystemBundle make_double_well(const std::string& name,
                              const nlohmann::json& params, Rng& rng,
                              bool rough) {
  check_keys(params, {"micro_dt", "grid_lo", "grid_hi", "grid_spacing", "heal_time"},
             name);
  SdeSystem sys = rough ? double_well_rough() : double_well_smooth();
  sys.micro_dt = num(params, "micro_dt", sys.micro_dt, name);
  double lo = num(params, "grid_lo", -0.5, name, false);
  double hi = num(params, "grid_hi", 1.5, name, false);
  double spacing = num(params, "grid_spacing", 0.01, name);
  double heal_time = num(params, "heal_time", rough ? 0.01 : 0.0, name, false);

  PointList pts = heal_all(sys, grid_1d(lo, hi, spacing), heal_time, rng);
  SystemBundle bundle;
  bundle.name = name;
  bundle.micro_dt = sys.micro_dt;
  bundle.params_used = {{"micro_dt", sys.micro_dt}, {"grid_lo", lo},
                        {"grid_hi", hi},           {"grid_spacing", spacing},
                        {"heal_time", heal_time}};
  bundle.space = sde_space(std::move(sys), std::move(pts));
  return bundle;
}

SystemBundle make_three_well(const std::string& name,
                             const nlohmann::json& params, Rng& rng, bool rough,
                             const char* spacing_key, double default_spacing) {
  check_keys(params, {"micro_dt", spacing_key, "energy_cutoff", "heal_time"}, name);
  SdeSystem sys = rough ? three_well_rough() : three_well_smooth();
  sys.micro_dt = num(params, "micro_dt", sys.micro_dt, name);
  double spacing = num(params, spacing_key, default_spacing, name);
  double cutoff = num(params, "energy_cutoff", 10.0, name);
  double heal_time = num(params, "heal_time", rough ? 0.01 : 0.0, name, false);

  PointList pts = heal_all(sys, three_well_grid(spacing, cutoff), heal_time, rng);
  SystemBundle bundle;
  bundle.name = name;
  bundle.micro_dt = sys.micro_dt;
  bundle.params_used = {{"micro_dt", sys.micro_dt},
                        {spacing_key, spacing},
                        {"energy_cutoff", cutoff},
                        {"heal_time", heal_time}};
  bundle.space = sde_space(std::move(sys), std::move(pts));
  return bundle;
}

}  // namespace

std::vector<std::string> system_names() {
  return {"double-well-smooth",      "double-well-rough",
          "three-well-smooth",       "three-well-rough",
          "image-three-well-smooth", "image-three-well-rough",
          "string",                  "lorenz96"};
}

SystemBundle make_system(const std::string& name, const nlohmann::json& params,
                         Rng& rng) {
  if (name == "double-well-smooth") return make_double_well(name, params, rng, false);
  if (name == "double-well-rough") return make_double_well(name, params, rng, true);
  if (name == "three-well-smooth")
    return make_three_well(name, params, rng, false, "grid_spacing", 0.01);
  if (name == "three-well-rough")
    return make_three_well(name, params, rng, true, "grid_spacing", 0.01);

  if (name == "image-three-well-smooth" || name == "image-three-well-rough") {
    // The planar sampler defaults to a coarser grid here: every initial point
    // becomes a 12,500-pixel image, so 0.01 spacing would not fit in memory.
    bool rough = name == "image-three-well-rough";
    SystemBundle base =
        make_three_well(name, params, rng, rough, "init_spacing", 0.05);
    base.space = image_space(std::move(base.space));
    return base;
  }

  if (name == "string") {
    check_keys(params, {"n_init", "heal_steps"}, name);
    int n_init = integer(params, "n_init", 2000, name, 1);
    int heal_steps = integer(params, "heal_steps", 250, name, 0);
    SystemBundle bundle;
    bundle.name = name;
    bundle.micro_dt = 1.0;  // one application of the map
    bundle.params_used = {{"n_init", n_init}, {"heal_steps", heal_steps}};
    bundle.space = string_space(n_init, heal_steps, rng);
    return bundle;
  }

  if (name == "lorenz96") {
    check_keys(params,
               {"eps", "forcing", "rk_h", "jitter", "y_scale", "n_init",
                "heal_time"},
               name);
    Lorenz96Params p;
    p.eps = num(params, "eps", p.eps, name);
    p.forcing = num(params, "forcing", p.forcing, name);
    p.rk_h = num(params, "rk_h", p.rk_h, name);
    p.jitter = num(params, "jitter", p.jitter, name, false);
    p.y_scale = num(params, "y_scale", p.y_scale, name);
    int n_init = integer(params, "n_init", 1500, name, 1);
    double heal_time = num(params, "heal_time", 5.0, name, false);
    SystemBundle bundle;
    bundle.name = name;
    bundle.micro_dt = p.rk_h;
    bundle.params_used = {{"eps", p.eps},       {"forcing", p.forcing},
                          {"rk_h", p.rk_h},     {"jitter", p.jitter},
                          {"y_scale", p.y_scale}, {"n_init", n_init},
                          {"heal_time", heal_time}};
    bundle.space = lorenz96_space(p, n_init, heal_time, rng);
    return bundle;
  }

  std::string known;
  for (const std::string& n : system_names()) {
    if (!known.empty()) known += ", ";
    known += n;
  }
  throw std::invalid_argument("unknown system '" + name + "' (known: " + known + ")");
}

}  // namespace atlas::systems

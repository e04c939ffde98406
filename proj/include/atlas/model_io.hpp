#pragma once

#include <string>

#include "atlas/delta_net.hpp"
#include "atlas/model.hpp"
#include "atlas/simulate.hpp"
#include "json.hpp"

namespace atlas {

// Shortest decimal string that parses back to exactly `x`. Every CSV this
// toolkit writes goes through it.
std::string format_double(double x);

// Serialization keeps every double bit-exact (shortest round-trip repr) and
// emits keys in a fixed order, so identical models produce identical bytes.
// Non-finite values are rejected rather than silently written.
std::string model_to_json(const AtlasModel& model);
AtlasModel model_from_json(const std::string& text);

void save_model(const std::string& path, const AtlasModel& model);
AtlasModel load_model(const std::string& path);

std::string net_to_json(const DeltaNet& net);
DeltaNet net_from_json(const std::string& text);

// Columns: time, chart, x1..xd, then the lifted ambient block y1..yD when a
// model is supplied (the lift is the current chart's net point).
void write_trajectory_csv(const std::string& path, const AtlasTrajectory& traj,
                          const AtlasModel* lift_model = nullptr);

// Reads back time/chart/x columns, ignoring any lifted block.
AtlasTrajectory read_trajectory_csv(const std::string& path);

}  // namespace atlas

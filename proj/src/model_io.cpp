#include "atlas/model_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace atlas {

namespace {

using nlohmann::json;

json vec_json(const Vector& v, const char* what) {
  if (!v.allFinite())
    throw std::invalid_argument(std::string("model json: non-finite value in ") +
                                what);
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json mat_json(const Matrix& m, const char* what) {
  if (!m.allFinite())
    throw std::invalid_argument(std::string("model json: non-finite value in ") +
                                what);
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Vector vec_from(const json& arr, long expected, const std::string& what) {
  if (!arr.is_array())
    throw std::invalid_argument("model json: " + what + " must be an array");
  if (expected >= 0 && static_cast<long>(arr.size()) != expected)
    throw std::invalid_argument("model json: " + what + " has wrong length");
  Vector v(static_cast<int>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i)
    v[static_cast<int>(i)] = arr[i].get<double>();
  return v;
}

Matrix mat_from(const json& rows, long expect_rows, long expect_cols,
                const std::string& what) {
  if (!rows.is_array() || rows.empty())
    throw std::invalid_argument("model json: " + what + " must be a matrix");
  const auto r = static_cast<long>(rows.size());
  const auto c = static_cast<long>(rows[0].size());
  if ((expect_rows >= 0 && r != expect_rows) || (expect_cols >= 0 && c != expect_cols))
    throw std::invalid_argument("model json: " + what + " has wrong shape");
  Matrix m(r, c);
  for (long i = 0; i < r; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<long>(row.size()) != c)
      throw std::invalid_argument("model json: " + what + " is ragged");
    for (long j = 0; j < c; ++j)
      m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
  }
  return m;
}

json net_json_body(const DeltaNet& net) {
  json points = json::array();
  for (const Vector& p : net.points) points.push_back(vec_json(p, "net point"));
  json neighbors = json::array();
  for (const std::vector<int>& nbrs : net.neighbors) neighbors.push_back(nbrs);
  return json{{"delta", net.delta}, {"points", std::move(points)},
              {"neighbors", std::move(neighbors)}};
}

DeltaNet net_from_body(const json& doc) {
  DeltaNet net;
  net.delta = doc.at("delta").get<double>();
  if (!(net.delta > 0.0))
    throw std::invalid_argument("model json: net delta must be positive");
  const json& points = doc.at("points");
  if (!points.is_array() || points.empty())
    throw std::invalid_argument("model json: net needs at least one point");
  const auto n = static_cast<long>(points.size());
  long dim = -1;
  for (const json& p : points) {
    Vector v = vec_from(p, dim, "net point");
    dim = v.size();
    net.points.push_back(std::move(v));
  }
  const json& neighbors = doc.at("neighbors");
  if (static_cast<long>(neighbors.size()) != n)
    throw std::invalid_argument("model json: one neighbor list per net point");
  for (const json& lst : neighbors) {
    std::vector<int> nbrs;
    for (const json& j : lst) {
      int idx = j.get<int>();
      if (idx < 0 || idx >= n)
        throw std::invalid_argument("model json: neighbor index out of range");
      nbrs.push_back(idx);
    }
    net.neighbors.push_back(std::move(nbrs));
  }
  return net;
}

void ensure_finite(double x, const char* what) {
  if (!std::isfinite(x))
    throw std::invalid_argument(std::string("model json: non-finite ") + what);
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string model_to_json(const AtlasModel& model) {
  ensure_finite(model.delta, "delta");
  ensure_finite(model.t0, "t0");
  ensure_finite(model.dt, "dt");

  json charts = json::array();
  for (const Chart& chart : model.charts) {
    json centers = json::array();
    for (const auto& [j, c] : chart.centers)
      centers.push_back(json{{"j", j}, {"c", vec_json(c, "chart center")}});
    charts.push_back(json{{"k", chart.index},
                          {"b", vec_json(chart.drift, "chart drift")},
                          {"sigma", mat_json(chart.diffusion, "chart diffusion")},
                          {"centers", std::move(centers)}});
  }

  json transitions = json::array();
  for (const auto& [key, map] : model.transitions)
    transitions.push_back(json{{"from", key.first},
                               {"to", key.second},
                               {"mu_from", vec_json(map.mu_from, "transition mean")},
                               {"mu_to", vec_json(map.mu_to, "transition mean")},
                               {"T", mat_json(map.T, "transition matrix")}});

  json doc{{"format", "atlas-model"}, {"version", 1},
           {"delta", model.delta},     {"d", model.d},
           {"t0", model.t0},           {"dt", model.dt},
           {"net", net_json_body(model.net)},
           {"charts", std::move(charts)},
           {"transitions", std::move(transitions)}};
  return doc.dump();
}

AtlasModel model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("model json: parse failed: ") +
                                e.what());
  }
  try {
    if (!doc.is_object() || doc.value("format", std::string()) != "atlas-model")
      throw std::invalid_argument("model json: missing or wrong format tag");
    if (doc.value("version", 0) != 1)
      throw std::invalid_argument("model json: unsupported version");

    AtlasModel model;
    model.delta = doc.at("delta").get<double>();
    model.d = doc.at("d").get<int>();
    model.t0 = doc.at("t0").get<double>();
    model.dt = doc.at("dt").get<double>();
    if (!(model.delta > 0.0) || model.d < 1 || !(model.t0 > 0.0) ||
        !(model.dt > 0.0))
      throw std::invalid_argument("model json: parameters out of range");

    model.net = net_from_body(doc.at("net"));
    const auto n = static_cast<long>(model.net.points.size());

    const json& charts = doc.at("charts");
    if (static_cast<long>(charts.size()) != n)
      throw std::invalid_argument("model json: one chart per net point required");
    for (long k = 0; k < n; ++k) {
      const json& cj = charts[static_cast<std::size_t>(k)];
      Chart chart;
      chart.index = cj.at("k").get<int>();
      if (chart.index != k)
        throw std::invalid_argument("model json: chart order corrupt");
      chart.drift = vec_from(cj.at("b"), model.d, "chart drift");
      chart.diffusion = mat_from(cj.at("sigma"), model.d, model.d, "chart diffusion");
      for (const json& entry : cj.at("centers")) {
        int j = entry.at("j").get<int>();
        if (j < 0 || j >= n)
          throw std::invalid_argument("model json: center index out of range");
        if (chart.centers.count(j))
          throw std::invalid_argument("model json: duplicate center");
        chart.centers[j] = vec_from(entry.at("c"), model.d, "chart center");
      }
      if (chart.centers.count(chart.index) == 0)
        throw std::invalid_argument("model json: chart lacks its own center");
      model.charts.push_back(std::move(chart));
    }

    for (const json& tj : doc.at("transitions")) {
      int from = tj.at("from").get<int>();
      int to = tj.at("to").get<int>();
      if (from < 0 || from >= n || to < 0 || to >= n || from == to)
        throw std::invalid_argument("model json: transition endpoints invalid");
      TransitionMap map;
      map.mu_from = vec_from(tj.at("mu_from"), model.d, "transition mean");
      map.mu_to = vec_from(tj.at("mu_to"), model.d, "transition mean");
      map.T = mat_from(tj.at("T"), model.d, model.d, "transition matrix");
      if (!model.transitions.emplace(std::make_pair(from, to), std::move(map)).second)
        throw std::invalid_argument("model json: duplicate transition");
    }
    return model;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("model json: ") + e.what());
  }
}

void save_model(const std::string& path, const AtlasModel& model) {
  std::string text = model_to_json(model);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

AtlasModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

std::string net_to_json(const DeltaNet& net) {
  json doc = net_json_body(net);
  doc["format"] = "atlas-net";
  doc["version"] = 1;
  return doc.dump();
}

DeltaNet net_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("net json: parse failed: ") + e.what());
  }
  try {
    if (doc.value("format", std::string()) != "atlas-net")
      throw std::invalid_argument("net json: missing or wrong format tag");
    return net_from_body(doc);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("net json: ") + e.what());
  }
}

void write_trajectory_csv(const std::string& path, const AtlasTrajectory& traj,
                          const AtlasModel* lift_model) {
  if (traj.times.size() != traj.states.size())
    throw std::invalid_argument("trajectory: one time per state required");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);

  const long d = traj.states.empty() ? 0 : traj.states.front().x.size();
  out << "time,chart";
  for (long i = 1; i <= d; ++i) out << ",x" << i;
  if (lift_model) {
    const long ambient = lift_model->net.points.front().size();
    for (long i = 1; i <= ambient; ++i) out << ",y" << i;
  }
  out << '\n';

  for (std::size_t row = 0; row < traj.states.size(); ++row) {
    const AtlasState& s = traj.states[row];
    if (s.x.size() != d)
      throw std::invalid_argument("trajectory: inconsistent state dimension");
    out << format_double(traj.times[row]) << ',' << s.chart;
    for (long i = 0; i < d; ++i) out << ',' << format_double(s.x[i]);
    if (lift_model) {
      const Vector& y = lift(*lift_model, s);
      for (long i = 0; i < y.size(); ++i) out << ',' << format_double(y[i]);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

AtlasTrajectory read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trajectory file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("trajectory csv: empty file: " + path);

  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) header.push_back(tok);
  }
  if (header.size() < 2 || header[0] != "time" || header[1] != "chart")
    throw std::runtime_error("trajectory csv: unexpected header: " + line);
  std::size_t d = 0;
  while (2 + d < header.size() && header[2 + d].size() > 1 && header[2 + d][0] == 'x')
    ++d;

  AtlasTrajectory traj;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) cells.push_back(tok);
    if (cells.size() < 2 + d)
      throw std::runtime_error("trajectory csv: too few columns at line " +
                               std::to_string(line_no));
    auto parse = [&](const std::string& cell) {
      const char* begin = cell.c_str();
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end != begin + cell.size())
        throw std::runtime_error("trajectory csv: bad number at line " +
                                 std::to_string(line_no));
      return v;
    };
    AtlasState s;
    traj.times.push_back(parse(cells[0]));
    s.chart = static_cast<int>(std::strtol(cells[1].c_str(), nullptr, 10));
    s.x = Vector(static_cast<int>(d));
    for (std::size_t i = 0; i < d; ++i)
      s.x[static_cast<int>(i)] = parse(cells[2 + i]);
    traj.states.push_back(std::move(s));
  }
  return traj;
}

}  // namespace atlas

#include "core/dataset_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "core/errors.hpp"
#include "core/tracker.hpp"

namespace eotrack {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  out << content;
  if (!out) throw IoError("failed writing file: " + path);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(context + ": bad numeric field '" + s + "'");
  }
}

int parse_int(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(context + ": bad integer field '" + s + "'");
  }
}

}  // namespace

std::string dataset_to_csv(const Dataset& ds, const Scenario& s) {
  std::string out = "n,type,j,jp,d,u\n";
  for (const auto& frame : ds.frames) {
    const std::string n = std::to_string(frame.step);
    for (std::size_t k = 0; k < frame.active.size(); ++k) {
      const int id = s.anchors[k].id;
      for (const auto& z : frame.active[k]) {
        out += n + ",A," + std::to_string(id) + ",-1," + fmt(z.distance) +
               "," + fmt(z.amplitude) + "\n";
      }
    }
    for (const auto& bucket : frame.passive) {
      const int rx_id = s.anchors[bucket.rx].id;
      const int tx_id = s.anchors[bucket.tx].id;
      for (const auto& z : bucket.items) {
        out += n + ",P," + std::to_string(rx_id) + "," + std::to_string(tx_id) +
               "," + fmt(z.distance) + "," + fmt(z.amplitude) + "\n";
      }
    }
  }
  return out;
}

std::string truth_to_csv(const GroundTruth& gt) {
  std::string out = "n,p_x,p_y,v_x,v_y,m_x,m_y\n";
  for (std::size_t k = 0; k < gt.steps.size(); ++k) {
    const auto& st = gt.steps[k];
    out += std::to_string(k + 1) + "," + fmt(st.kin.position.x()) + "," +
           fmt(st.kin.position.y()) + "," + fmt(st.kin.velocity.x()) + "," +
           fmt(st.kin.velocity.y()) + "," + fmt(st.device.x()) + "," +
           fmt(st.device.y()) + "\n";
  }
  return out;
}

void save_dataset(const Dataset& ds, const Scenario& s,
                  const std::string& measurements_path,
                  const std::string& truth_path) {
  write_file(measurements_path, dataset_to_csv(ds, s));
  write_file(truth_path, truth_to_csv(ds.truth));
}

Dataset load_dataset(const std::string& measurements_path,
                     const std::string& truth_path, const Scenario& s) {
  Dataset ds;

  {
    std::ifstream in(truth_path);
    if (!in) throw IoError("cannot open truth file: " + truth_path);
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line).size() != 7) {
      throw ParseError(truth_path + ": expected header n,p_x,p_y,v_x,v_y,m_x,m_y");
    }
    int expected = 1;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto f = split_csv_line(line);
      if (f.size() != 7) throw ParseError(truth_path + ": expected 7 fields");
      if (parse_int(f[0], truth_path) != expected) {
        throw ParseError(truth_path + ": time steps must be contiguous from 1");
      }
      TruthStep st;
      st.kin.position = Vec2(parse_double(f[1], truth_path), parse_double(f[2], truth_path));
      st.kin.velocity = Vec2(parse_double(f[3], truth_path), parse_double(f[4], truth_path));
      st.device = Vec2(parse_double(f[5], truth_path), parse_double(f[6], truth_path));
      ds.truth.steps.push_back(st);
      ++expected;
    }
  }

  const int num_steps = static_cast<int>(ds.truth.steps.size());
  const int j_count = static_cast<int>(s.anchors.size());
  const auto pairs = s.passive_pairs();
  std::map<std::pair<int, int>, int> bucket_index;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    bucket_index[pairs[i]] = static_cast<int>(i);
  }

  ds.frames.resize(num_steps);
  for (int n = 1; n <= num_steps; ++n) {
    auto& frame = ds.frames[n - 1];
    frame.step = n;
    frame.active.resize(j_count);
    frame.passive.clear();
    for (const auto& [rx, tx] : pairs) frame.passive.push_back({rx, tx, {}});
  }

  std::ifstream in(measurements_path);
  if (!in) throw IoError("cannot open measurement file: " + measurements_path);
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line).size() != 6) {
    throw ParseError(measurements_path + ": expected header n,type,j,jp,d,u");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 6) throw ParseError(measurements_path + ": expected 6 fields");

    const int n = parse_int(f[0], measurements_path);
    if (n < 1 || n > num_steps) {
      throw ParseError(measurements_path + ": step " + f[0] + " outside the truth range");
    }
    const int rx = s.anchor_index(parse_int(f[2], measurements_path));
    if (rx < 0) throw ParseError(measurements_path + ": unknown anchor id " + f[2]);

    Measurement z;
    z.distance = parse_double(f[4], measurements_path);
    z.amplitude = parse_double(f[5], measurements_path);
    if (!(z.distance >= 0.0) || z.distance > s.constants.max_distance ||
        !(z.amplitude >= s.constants.detection_threshold)) {
      throw ParseError(measurements_path + ": measurement outside the valid support");
    }

    if (f[1] == "A") {
      if (f[3] != "-1") throw ParseError(measurements_path + ": active records need jp = -1");
      ds.frames[n - 1].active[rx].push_back(z);
    } else if (f[1] == "P") {
      const int tx = s.anchor_index(parse_int(f[3], measurements_path));
      if (tx < 0) throw ParseError(measurements_path + ": unknown anchor id " + f[3]);
      const auto it = bucket_index.find({rx, tx});
      if (it == bucket_index.end()) {
        throw ParseError(measurements_path + ": pair (" + f[2] + "," + f[3] +
                         ") not in the scenario pair set");
      }
      ds.frames[n - 1].passive[it->second].items.push_back(z);
    } else {
      throw ParseError(measurements_path + ": unknown record type '" + f[1] + "'");
    }
  }
  return ds;
}

std::string track_to_csv(const TrackOutput& track) {
  std::string out =
      "n,m_x,m_y,p_x,p_y,v_x,v_y,b_rho,b_phi,r,w,ess,step_seconds\n";
  for (const auto& st : track.steps) {
    char buf[320];
    std::snprintf(buf, sizeof(buf),
                  "%d,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.6e\n",
                  st.step, st.device.x(), st.device.y(),
                  st.state.kin.position.x(), st.state.kin.position.y(),
                  st.state.kin.velocity.x(), st.state.kin.velocity.y(),
                  st.state.bias.range, st.state.bias.angle,
                  st.state.extent.radius, st.state.extent.width, st.ess,
                  st.seconds);
    out += buf;
  }
  return out;
}

void save_track(const TrackOutput& track, const std::string& path) {
  write_file(path, track_to_csv(track));
}

}  // namespace eotrack

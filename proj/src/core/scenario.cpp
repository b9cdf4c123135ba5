#include "core/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "core/errors.hpp"

namespace eotrack {

using nlohmann::json;

bool Scenario::anchor_blocked(int step, int anchor_id) const {
  for (const auto& w : blockage) {
    if (step < w.from || step > w.to) continue;
    for (int id : w.anchor_ids) {
      if (id == anchor_id) return true;
    }
  }
  return false;
}

int Scenario::anchor_index(int anchor_id) const {
  for (std::size_t k = 0; k < anchors.size(); ++k) {
    if (anchors[k].id == anchor_id) return static_cast<int>(k);
  }
  return -1;
}

std::vector<std::pair<int, int>> Scenario::passive_pairs() const {
  std::vector<std::pair<int, int>> pairs;
  const int j_count = static_cast<int>(anchors.size());
  for (int rx = 0; rx < j_count; ++rx) {
    for (int tx = 0; tx < j_count; ++tx) {
      if (tx == rx && !monostatic_pairs) continue;
      pairs.emplace_back(rx, tx);
    }
  }
  return pairs;
}

Scenario default_scenario() {
  Scenario s;
  s.seed = 1;
  s.num_steps = 180;
  s.dt = 0.1;
  s.anchors = {{1, Vec2(4.0, 4.5)}, {2, Vec2(-4.0, 4.5)}, {3, Vec2(0.0, -5.0)}};

  s.trajectory.start = Vec2(-3.2, -1.0);
  s.trajectory.heading = 0.0;
  s.trajectory.speed = 0.5;
  s.trajectory.segments = {
      {TrajectorySegment::Kind::Straight, 40, 0.0},
      {TrajectorySegment::Kind::Turn, 30, 0.5 * kPi},
      {TrajectorySegment::Kind::Straight, 40, 0.0},
      {TrajectorySegment::Kind::Turn, 30, -0.5 * kPi},
      {TrajectorySegment::Kind::Straight, 40, 0.0},
  };

  s.truth.bias = BiasState(0.32, -kPi / 3.0);
  s.truth.extent = ExtentIdeal{0.3, 0.2, 0.1};

  s.constants.max_distance = 18.6;  // 1.5x the anchor bounding-box diagonal
  s.constants.detection_threshold = std::pow(10.0, 6.0 / 20.0);
  s.constants.rms_bandwidth = 1.0e8;
  s.constants.propagation_speed = 299792458.0;
  s.constants.opening_angle = 2.0 * kPi / 3.0;
  s.constants.mean_object_rate = 5.0;
  s.constants.mean_clutter_rate = 5.0;
  s.ref_amplitude_db = 30.0;

  s.blockage = {
      {31, 60, {1, 2, 3}},
      {61, 80, {1, 2}},
      {81, 110, {2}},
      {111, 130, {1, 2, 3}},
  };
  s.blockage_mode = BlockageMode::Full;
  s.aspect_sign = AspectSign::Facing;
  s.monostatic_pairs = false;

  s.motion = MotionParams{};
  s.motion.dt = s.dt;
  s.prior = PriorParams{};
  s.tracker = TrackerParams{};
  return s;
}

namespace {

Vec2 parse_vec2(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError(std::string("scenario: ") + what + " must be [x, y]");
  }
  return Vec2(j[0].get<double>(), j[1].get<double>());
}

json vec2_json(const Vec2& v) { return json::array({v.x(), v.y()}); }

}  // namespace

Scenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario: invalid JSON: ") + e.what());
  }

  Scenario s = default_scenario();
  try {
    s.schema_version = j.value("schema_version", s.schema_version);
    if (s.schema_version != 1) {
      throw ParseError("scenario: unsupported schema_version " +
                       std::to_string(s.schema_version));
    }
    s.seed = j.value("seed", s.seed);
    s.num_steps = j.value("num_steps", s.num_steps);
    s.dt = j.value("step_seconds", s.dt);

    if (j.contains("anchors")) {
      s.anchors.clear();
      int next_id = 1;
      for (const auto& a : j.at("anchors")) {
        Anchor anchor;
        if (a.is_array()) {
          anchor.id = next_id;
          anchor.position = parse_vec2(a, "anchor");
        } else {
          anchor.id = a.value("id", next_id);
          anchor.position = parse_vec2(a.at("position"), "anchor position");
        }
        next_id = anchor.id + 1;
        s.anchors.push_back(anchor);
      }
    }

    if (j.contains("trajectory")) {
      const auto& t = j.at("trajectory");
      if (t.contains("start")) s.trajectory.start = parse_vec2(t.at("start"), "trajectory start");
      s.trajectory.heading = deg_to_rad(t.value("heading_deg", rad_to_deg(s.trajectory.heading)));
      s.trajectory.speed = t.value("speed_mps", s.trajectory.speed);
      if (t.contains("segments")) {
        s.trajectory.segments.clear();
        for (const auto& seg : t.at("segments")) {
          TrajectorySegment ts;
          const std::string kind = seg.value("kind", "straight");
          if (kind == "straight") {
            ts.kind = TrajectorySegment::Kind::Straight;
          } else if (kind == "turn") {
            ts.kind = TrajectorySegment::Kind::Turn;
            ts.turn_angle = deg_to_rad(seg.value("turn_deg", 0.0));
          } else {
            throw ParseError("scenario: unknown segment kind '" + kind + "'");
          }
          ts.steps = seg.value("steps", 1);
          s.trajectory.segments.push_back(ts);
        }
      }
    }

    if (j.contains("truth")) {
      const auto& t = j.at("truth");
      s.truth.bias = BiasState(t.value("bias_range_m", s.truth.bias.range),
                               t.value("bias_angle_rad", s.truth.bias.angle));
      s.truth.extent.semi_major = t.value("extent_semi_major_m", s.truth.extent.semi_major);
      s.truth.extent.semi_minor = t.value("extent_semi_minor_m", s.truth.extent.semi_minor);
      s.truth.extent.width = t.value("extent_width_m", s.truth.extent.width);
    }

    if (j.contains("constants")) {
      const auto& c = j.at("constants");
      s.constants.max_distance = c.value("max_distance_m", s.constants.max_distance);
      if (c.contains("detection_threshold_db")) {
        s.constants.detection_threshold =
            std::pow(10.0, c.at("detection_threshold_db").get<double>() / 20.0);
      }
      s.constants.rms_bandwidth = c.value("rms_bandwidth_hz", s.constants.rms_bandwidth);
      s.constants.propagation_speed =
          c.value("propagation_speed_mps", s.constants.propagation_speed);
      s.constants.opening_angle = c.value("opening_angle_rad", s.constants.opening_angle);
      s.constants.mean_object_rate =
          c.value("mean_object_measurements", s.constants.mean_object_rate);
      s.constants.mean_clutter_rate =
          c.value("mean_clutter_measurements", s.constants.mean_clutter_rate);
    }
    s.ref_amplitude_db = j.value("ref_amplitude_db_at_1m", s.ref_amplitude_db);

    if (j.contains("blockage")) {
      s.blockage.clear();
      for (const auto& w : j.at("blockage")) {
        BlockageWindow bw;
        bw.from = w.at("from").get<int>();
        bw.to = w.at("to").get<int>();
        bw.anchor_ids = w.at("anchors").get<std::vector<int>>();
        s.blockage.push_back(bw);
      }
    }

    const std::string mode = j.value("blockage_mode", std::string("full"));
    if (mode == "full") {
      s.blockage_mode = BlockageMode::Full;
    } else if (mode == "los_only") {
      s.blockage_mode = BlockageMode::LosOnly;
    } else {
      throw ParseError("scenario: unknown blockage_mode '" + mode + "'");
    }

    const std::string sign = j.value("aspect_sign", std::string("facing"));
    if (sign == "facing") {
      s.aspect_sign = AspectSign::Facing;
    } else if (sign == "literal") {
      s.aspect_sign = AspectSign::Literal;
    } else {
      throw ParseError("scenario: unknown aspect_sign '" + sign + "'");
    }

    s.monostatic_pairs = j.value("monostatic_pairs", s.monostatic_pairs);

    if (j.contains("motion")) {
      const auto& m = j.at("motion");
      s.motion.accel_std = m.value("accel_std_mps2", s.motion.accel_std);
      s.motion.bias_range_walk_std =
          m.value("bias_range_walk_std_m", s.motion.bias_range_walk_std);
      s.motion.bias_angle_walk_std =
          m.value("bias_angle_walk_std_rad", s.motion.bias_angle_walk_std);
      s.motion.radius_walk_std = m.value("radius_walk_std_m", s.motion.radius_walk_std);
      s.motion.width_walk_std = m.value("width_walk_std_m", s.motion.width_walk_std);
    }
    s.motion.dt = s.dt;

    if (j.contains("prior")) {
      const auto& p = j.at("prior");
      s.prior.position_halfwidth = p.value("position_halfwidth_m", s.prior.position_halfwidth);
      s.prior.velocity_std = p.value("velocity_std_mps", s.prior.velocity_std);
      s.prior.bias_range_max = p.value("bias_range_max_m", s.prior.bias_range_max);
      s.prior.radius_min = p.value("radius_min_m", s.prior.radius_min);
      s.prior.radius_max = p.value("radius_max_m", s.prior.radius_max);
      s.prior.width_min = p.value("width_min_m", s.prior.width_min);
      s.prior.width_max = p.value("width_max_m", s.prior.width_max);
    }

    if (j.contains("tracker")) {
      const auto& t = j.at("tracker");
      s.tracker.ess_threshold = t.value("ess_threshold", s.tracker.ess_threshold);
      s.tracker.ideal_samples = t.value("ideal_samples", s.tracker.ideal_samples);
      s.tracker.mu_los = t.value("mu_los", s.tracker.mu_los);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }

  validate_scenario(s);
  return s;
}

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["schema_version"] = s.schema_version;
  j["seed"] = s.seed;
  j["num_steps"] = s.num_steps;
  j["step_seconds"] = s.dt;

  json anchors = json::array();
  for (const auto& a : s.anchors) {
    anchors.push_back({{"id", a.id}, {"position", vec2_json(a.position)}});
  }
  j["anchors"] = anchors;

  json segments = json::array();
  for (const auto& seg : s.trajectory.segments) {
    json sj;
    sj["kind"] = seg.kind == TrajectorySegment::Kind::Straight ? "straight" : "turn";
    sj["steps"] = seg.steps;
    if (seg.kind == TrajectorySegment::Kind::Turn) {
      sj["turn_deg"] = rad_to_deg(seg.turn_angle);
    }
    segments.push_back(sj);
  }
  j["trajectory"] = {{"start", vec2_json(s.trajectory.start)},
                     {"heading_deg", rad_to_deg(s.trajectory.heading)},
                     {"speed_mps", s.trajectory.speed},
                     {"segments", segments}};

  j["truth"] = {{"bias_range_m", s.truth.bias.range},
                {"bias_angle_rad", s.truth.bias.angle},
                {"extent_semi_major_m", s.truth.extent.semi_major},
                {"extent_semi_minor_m", s.truth.extent.semi_minor},
                {"extent_width_m", s.truth.extent.width}};

  j["constants"] = {
      {"max_distance_m", s.constants.max_distance},
      {"detection_threshold_db", 20.0 * std::log10(s.constants.detection_threshold)},
      {"rms_bandwidth_hz", s.constants.rms_bandwidth},
      {"propagation_speed_mps", s.constants.propagation_speed},
      {"opening_angle_rad", s.constants.opening_angle},
      {"mean_object_measurements", s.constants.mean_object_rate},
      {"mean_clutter_measurements", s.constants.mean_clutter_rate}};
  j["ref_amplitude_db_at_1m"] = s.ref_amplitude_db;

  json blockage = json::array();
  for (const auto& w : s.blockage) {
    blockage.push_back({{"from", w.from}, {"to", w.to}, {"anchors", w.anchor_ids}});
  }
  j["blockage"] = blockage;
  j["blockage_mode"] = s.blockage_mode == BlockageMode::Full ? "full" : "los_only";
  j["aspect_sign"] = s.aspect_sign == AspectSign::Facing ? "facing" : "literal";
  j["monostatic_pairs"] = s.monostatic_pairs;

  j["motion"] = {{"accel_std_mps2", s.motion.accel_std},
                 {"bias_range_walk_std_m", s.motion.bias_range_walk_std},
                 {"bias_angle_walk_std_rad", s.motion.bias_angle_walk_std},
                 {"radius_walk_std_m", s.motion.radius_walk_std},
                 {"width_walk_std_m", s.motion.width_walk_std}};

  j["prior"] = {{"position_halfwidth_m", s.prior.position_halfwidth},
                {"velocity_std_mps", s.prior.velocity_std},
                {"bias_range_max_m", s.prior.bias_range_max},
                {"radius_min_m", s.prior.radius_min},
                {"radius_max_m", s.prior.radius_max},
                {"width_min_m", s.prior.width_min},
                {"width_max_m", s.prior.width_max}};

  j["tracker"] = {{"ess_threshold", s.tracker.ess_threshold},
                  {"ideal_samples", s.tracker.ideal_samples},
                  {"mu_los", s.tracker.mu_los}};

  return j.dump(2) + "\n";
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write scenario file: " + path);
  out << scenario_to_json(s);
  if (!out) throw IoError("failed writing scenario file: " + path);
}

void validate_scenario(const Scenario& s) {
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument("scenario: " + msg);
  };

  if (s.num_steps < 0) fail("num_steps must be >= 0");
  if (!(s.dt > 0.0)) fail("step_seconds must be positive");
  if (s.anchors.size() < 2) fail("at least two anchors are required");

  std::set<int> ids;
  for (const auto& a : s.anchors) {
    if (a.id <= 0) fail("anchor ids must be positive");
    if (!ids.insert(a.id).second) fail("anchor ids must be unique");
    if (!a.position.allFinite()) fail("anchor positions must be finite");
  }
  for (std::size_t i = 0; i < s.anchors.size(); ++i) {
    for (std::size_t k = i + 1; k < s.anchors.size(); ++k) {
      if ((s.anchors[i].position - s.anchors[k].position).norm() < 1e-9) {
        fail("anchor positions must be pairwise distinct");
      }
    }
  }

  if (!(s.trajectory.speed > 0.0)) fail("trajectory speed must be positive");
  for (const auto& seg : s.trajectory.segments) {
    if (seg.steps < 1) fail("trajectory segments need steps >= 1");
  }

  for (const auto& w : s.blockage) {
    if (w.from < 1 || w.to > s.num_steps || w.from > w.to) {
      fail("blockage window [" + std::to_string(w.from) + ", " +
           std::to_string(w.to) + "] outside [1, num_steps]");
    }
    for (int id : w.anchor_ids) {
      if (s.anchor_index(id) < 0) fail("blockage references unknown anchor id " + std::to_string(id));
    }
  }

  const auto& c = s.constants;
  if (!(c.max_distance > 0.0)) fail("max_distance_m must be positive");
  if (!(c.detection_threshold > 0.0)) fail("detection threshold must be positive");
  if (!(c.rms_bandwidth > 0.0)) fail("rms_bandwidth_hz must be positive");
  if (!(c.propagation_speed > 0.0)) fail("propagation_speed_mps must be positive");
  if (!(c.opening_angle > 0.0) || c.opening_angle > kPi) {
    fail("opening_angle_rad must lie in (0, pi]");
  }
  if (!(c.mean_object_rate > 0.0)) fail("mean_object_measurements must be positive");
  if (!(c.mean_clutter_rate > 0.0)) fail("mean_clutter_measurements must be positive");

  if (!(s.truth.bias.range >= 0.0)) fail("truth bias range must be >= 0");
  const auto& e = s.truth.extent;
  if (!(e.semi_major >= e.semi_minor) || !(e.semi_minor > 0.0) || !(e.width > 0.0)) {
    fail("truth extent requires a >= b > 0 and w > 0");
  }

  const auto& m = s.motion;
  if (!(m.accel_std > 0.0) || !(m.bias_range_walk_std > 0.0) ||
      !(m.bias_angle_walk_std > 0.0) || !(m.radius_walk_std > 0.0) ||
      !(m.width_walk_std > 0.0)) {
    fail("motion noise standard deviations must be positive");
  }

  const auto& p = s.prior;
  if (!(p.position_halfwidth > 0.0) || !(p.velocity_std > 0.0) ||
      !(p.bias_range_max > 0.0)) {
    fail("prior widths must be positive");
  }
  if (!(p.radius_min > 0.0) || !(p.radius_max > p.radius_min) ||
      !(p.width_min > 0.0) || !(p.width_max > p.width_min)) {
    fail("prior extent supports must satisfy 0 < min < max");
  }

  const auto& t = s.tracker;
  if (!(t.ess_threshold >= 0.0) || t.ess_threshold > 1.0) {
    fail("tracker ess_threshold must lie in [0, 1]");
  }
  if (t.ideal_samples < 1) fail("tracker ideal_samples must be >= 1");
  if (!(t.mu_los > 0.0)) fail("tracker mu_los must be positive");
}

const std::string& scenario_schema_help() {
  static const std::string help = R"(Scenario JSON schema (version 1). All fields are optional and default to
the committed reference scenario.

  schema_version          int, must be 1
  seed                    uint64 master seed; every random stream derives from it
  num_steps               number of time steps N
  step_seconds            observation period [s]
  anchors                 list of {id, position:[x,y]} or bare [x,y] pairs
  trajectory.start        [x,y] start position [m]
  trajectory.heading_deg  initial heading [deg]
  trajectory.speed_mps    constant ground speed [m/s]
  trajectory.segments     list of {kind:"straight"|"turn", steps, turn_deg}
  truth.bias_range_m      fixed device offset range [m]
  truth.bias_angle_rad    fixed device offset angle [rad]
  truth.extent_*          generative ellipse semi-axes and scattering width [m]
  constants.max_distance_m            measurable distance ceiling d_max [m]
  constants.detection_threshold_db    amplitude detection threshold [dB]
  constants.rms_bandwidth_hz          root-mean-square signal bandwidth [Hz]
  constants.propagation_speed_mps     propagation speed [m/s]
  constants.opening_angle_rad         scattering sector opening angle, (0, pi]
  constants.mean_object_measurements  Poisson mean of object returns per link
  constants.mean_clutter_measurements Poisson mean of clutter returns per link
  ref_amplitude_db_at_1m  amplitude of a 1 m path [dB]; free-space decay elsewhere
  blockage                list of {from, to, anchors:[ids]} step windows
  blockage_mode           "full" (drop whole active frame) | "los_only"
  aspect_sign             "facing" (scatter side toward receiver) | "literal"
  monostatic_pairs        include (j,j) passive pairs (default false)
  motion.*                transition noise: accel_std_mps2 and the four walk stds
  prior.*                 initial-state supports around the first true position
  tracker.ess_threshold   resample when ESS < threshold * particle count
  tracker.ideal_samples   Monte-Carlo draws for the boundary-arc likelihood
  tracker.mu_los          LOS existence weight in the active ratio
)";
  return help;
}

}  // namespace eotrack

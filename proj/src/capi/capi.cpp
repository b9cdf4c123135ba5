#include "eotrack/eotrack.h"

#include <cstring>
#include <string>

#include "core/dataset_io.hpp"
#include "core/errors.hpp"
#include "core/pipeline.hpp"

struct eot_scenario {
  eotrack::Scenario impl;
};
struct eot_dataset {
  eotrack::Dataset impl;
  eotrack::Scenario scenario;  // anchor layout and support for (de)serialization
};
struct eot_track {
  eotrack::TrackOutput impl;
};
struct eot_report {
  eotrack::Report impl;
};

namespace {

thread_local std::string g_last_error;

eot_status fail(eot_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

/// Runs the body, translating exceptions into status codes.
template <typename Fn>
eot_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return EOT_OK;
  } catch (const eotrack::ParseError& e) {
    return fail(EOT_ERR_PARSE, e.what());
  } catch (const eotrack::IoError& e) {
    return fail(EOT_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(EOT_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(EOT_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(EOT_ERR_RUNTIME, "unknown error");
  }
}

bool require(bool cond, const char* message) {
  if (!cond) g_last_error = message;
  return cond;
}

}  // namespace

extern "C" {

const char* eot_version(void) { return "0.1.0"; }

const char* eot_status_name(eot_status status) {
  switch (status) {
    case EOT_OK: return "ok";
    case EOT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case EOT_ERR_PARSE: return "parse error";
    case EOT_ERR_IO: return "io error";
    case EOT_ERR_RUNTIME: return "runtime error";
  }
  return "unknown";
}

const char* eot_last_error(void) { return g_last_error.c_str(); }

eot_status eot_scenario_create_default(eot_scenario** out) {
  if (!require(out != nullptr, "null output pointer")) return EOT_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new eot_scenario{eotrack::default_scenario()}; });
}

eot_status eot_scenario_load(const char* json_path, eot_scenario** out) {
  if (!require(json_path && out, "null argument")) return EOT_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new eot_scenario{eotrack::load_scenario(json_path)}; });
}

eot_status eot_scenario_save(const eot_scenario* s, const char* json_path) {
  if (!require(s && json_path, "null argument")) return EOT_ERR_INVALID_ARGUMENT;
  return guarded([&] { eotrack::save_scenario(s->impl, json_path); });
}

void eot_scenario_destroy(eot_scenario* s) { delete s; }

eot_status eot_scenario_set_seed(eot_scenario* s, uint64_t seed) {
  if (!require(s != nullptr, "null scenario")) return EOT_ERR_INVALID_ARGUMENT;
  s->impl.seed = seed;
  return EOT_OK;
}

uint64_t eot_scenario_seed(const eot_scenario* s) { return s ? s->impl.seed : 0; }

int eot_scenario_num_steps(const eot_scenario* s) {
  return s ? s->impl.num_steps : 0;
}

int eot_scenario_num_anchors(const eot_scenario* s) {
  return s ? static_cast<int>(s->impl.anchors.size()) : 0;
}

const char* eot_scenario_schema_help(void) {
  return eotrack::scenario_schema_help().c_str();
}

eot_status eot_simulate(const eot_scenario* s, eot_dataset** out) {
  if (!require(s && out, "null argument")) return EOT_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new eot_dataset{eotrack::simulate(s->impl), s->impl};
  });
}

eot_status eot_dataset_save(const eot_dataset* d, const char* measurements_csv,
                            const char* truth_csv) {
  if (!require(d && measurements_csv && truth_csv, "null argument")) {
    return EOT_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    eotrack::save_dataset(d->impl, d->scenario, measurements_csv, truth_csv);
  });
}

eot_status eot_dataset_load(const char* measurements_csv,
                            const char* truth_csv, const eot_scenario* s,
                            eot_dataset** out) {
  if (!require(measurements_csv && truth_csv && s && out, "null argument")) {
    return EOT_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    *out = new eot_dataset{
        eotrack::load_dataset(measurements_csv, truth_csv, s->impl), s->impl};
  });
}

int eot_dataset_num_steps(const eot_dataset* d) {
  return d ? static_cast<int>(d->impl.frames.size()) : 0;
}

long eot_dataset_num_measurements(const eot_dataset* d) {
  return d ? static_cast<long>(d->impl.measurement_count()) : 0;
}

void eot_dataset_destroy(eot_dataset* d) { delete d; }

void eot_track_options_init(eot_track_options* opts) {
  if (!opts) return;
  opts->variant = "geo";
  opts->particles = 1000;
  opts->ideal_samples = 50;
  opts->ess_threshold = 0.5;
  opts->run_index = 0;
  opts->seed = 0;
}

eot_status eot_track_run(const eot_scenario* s, const eot_dataset* d,
                         const eot_track_options* opts, eot_track** out) {
  if (!require(s && d && opts && out && opts->variant, "null argument")) {
    return EOT_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const auto method = eotrack::parse_method(opts->variant);
    if (!method) {
      throw std::invalid_argument(std::string("unknown variant '") +
                                  opts->variant + "'");
    }
    eotrack::TrackerConfig cfg;
    cfg.method = *method;
    cfg.particle_count = opts->particles;
    cfg.ideal_samples = opts->ideal_samples;
    cfg.ess_threshold = opts->ess_threshold;
    cfg.mu_los = s->impl.tracker.mu_los;
    cfg.seed = opts->seed != 0
                   ? opts->seed
                   : eotrack::derive_seed(
                         s->impl.seed, "filter",
                         static_cast<std::uint64_t>(*method),
                         static_cast<std::uint64_t>(opts->run_index));
    *out = new eot_track{eotrack::run_filter(d->impl, s->impl, cfg)};
  });
}

eot_status eot_track_save(const eot_track* t, const char* csv_path) {
  if (!require(t && csv_path, "null argument")) return EOT_ERR_INVALID_ARGUMENT;
  return guarded([&] { eotrack::save_track(t->impl, csv_path); });
}

int eot_track_num_steps(const eot_track* t) {
  return t ? static_cast<int>(t->impl.steps.size()) : 0;
}

int eot_track_degeneracy_events(const eot_track* t) {
  return t ? static_cast<int>(t->impl.degeneracy_steps.size()) : 0;
}

eot_status eot_track_position(const eot_track* t, int step_index, double* x,
                              double* y) {
  if (!require(t && x && y, "null argument")) return EOT_ERR_INVALID_ARGUMENT;
  if (step_index < 0 || step_index >= static_cast<int>(t->impl.steps.size())) {
    return fail(EOT_ERR_INVALID_ARGUMENT, "step index out of range");
  }
  *x = t->impl.steps[step_index].device.x();
  *y = t->impl.steps[step_index].device.y();
  return EOT_OK;
}

void eot_track_destroy(eot_track* t) { delete t; }

void eot_compare_options_init(eot_compare_options* opts) {
  if (!opts) return;
  opts->variants = "geo,ideal,active-only,point";
  opts->particles = 1000;
  opts->ideal_samples = 50;
  opts->runs = 20;
  opts->jobs = 0;
  opts->progress = nullptr;
  opts->progress_user = nullptr;
}

eot_status eot_compare_run(const eot_scenario* s,
                           const eot_compare_options* opts,
                           const char* out_dir, eot_report** out) {
  if (!require(s && opts && out && opts->variants, "null argument")) {
    return EOT_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    eotrack::CompareConfig cfg;
    cfg.methods = eotrack::parse_method_list(opts->variants);
    cfg.particle_count = opts->particles;
    cfg.ideal_samples = opts->ideal_samples;
    cfg.runs = opts->runs;
    cfg.jobs = opts->jobs;
    if (out_dir) cfg.out_dir = out_dir;
    if (opts->progress) {
      auto fn = opts->progress;
      auto user = opts->progress_user;
      cfg.progress = [fn, user](const std::string& msg) { fn(msg.c_str(), user); };
    }
    *out = new eot_report{eotrack::run_compare(s->impl, cfg)};
  });
}

eot_status eot_report_save(const eot_report* r, const char* json_path) {
  if (!require(r && json_path, "null argument")) return EOT_ERR_INVALID_ARGUMENT;
  return guarded([&] { eotrack::save_report(r->impl, json_path); });
}

eot_status eot_report_avg_rmse(const eot_report* r, const char* variant,
                               double* out) {
  if (!require(r && variant && out, "null argument")) return EOT_ERR_INVALID_ARGUMENT;
  const auto it = r->impl.variants.find(variant);
  if (it == r->impl.variants.end()) {
    return fail(EOT_ERR_INVALID_ARGUMENT,
                std::string("variant not in report: ") + variant);
  }
  *out = it->second.avg_rmse;
  return EOT_OK;
}

eot_status eot_report_mean_step_seconds(const eot_report* r,
                                        const char* variant, double* out) {
  if (!require(r && variant && out, "null argument")) return EOT_ERR_INVALID_ARGUMENT;
  const auto it = r->impl.variants.find(variant);
  if (it == r->impl.variants.end()) {
    return fail(EOT_ERR_INVALID_ARGUMENT,
                std::string("variant not in report: ") + variant);
  }
  *out = it->second.mean_step_seconds;
  return EOT_OK;
}

long eot_report_render_table(const eot_report* r, char* buffer, size_t size) {
  if (!r) return -1;
  const std::string table = eotrack::report_table(r->impl);
  if (buffer && size > 0) {
    const size_t n = std::min(size - 1, table.size());
    std::memcpy(buffer, table.data(), n);
    buffer[n] = '\0';
  }
  return static_cast<long>(table.size());
}

void eot_report_destroy(eot_report* r) { delete r; }

}  // extern "C"

/* eotrack — multistatic extended-object tracking: scenario simulation,
 * particle-filter tracking and Monte-Carlo method comparison.
 *
 * All functionality is exposed through opaque handles and status codes.
 * Functions returning eot_status never throw across the boundary; on
 * failure eot_last_error() carries a human-readable message for the
 * calling thread.
 */

#ifndef EOTRACK_H
#define EOTRACK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum eot_status {
  EOT_OK = 0,
  EOT_ERR_INVALID_ARGUMENT = 1,
  EOT_ERR_PARSE = 2,
  EOT_ERR_IO = 3,
  EOT_ERR_RUNTIME = 4
} eot_status;

const char* eot_version(void);
const char* eot_status_name(eot_status status);

/* Message of the last failure on the calling thread; empty string if none. */
const char* eot_last_error(void);

/* ---- scenario ---------------------------------------------------------- */

typedef struct eot_scenario eot_scenario;

/* The committed reference scenario: 3 anchors, 180 steps, staged blockage. */
eot_status eot_scenario_create_default(eot_scenario** out);
eot_status eot_scenario_load(const char* json_path, eot_scenario** out);
eot_status eot_scenario_save(const eot_scenario* s, const char* json_path);
void eot_scenario_destroy(eot_scenario* s);

eot_status eot_scenario_set_seed(eot_scenario* s, uint64_t seed);
uint64_t eot_scenario_seed(const eot_scenario* s);
int eot_scenario_num_steps(const eot_scenario* s);
int eot_scenario_num_anchors(const eot_scenario* s);

/* Plain-text description of the scenario JSON schema. */
const char* eot_scenario_schema_help(void);

/* ---- dataset ----------------------------------------------------------- */

typedef struct eot_dataset eot_dataset;

/* Synthesizes measurements and ground truth from the scenario seed. */
eot_status eot_simulate(const eot_scenario* s, eot_dataset** out);

eot_status eot_dataset_save(const eot_dataset* d, const char* measurements_csv,
                            const char* truth_csv);
eot_status eot_dataset_load(const char* measurements_csv,
                            const char* truth_csv, const eot_scenario* s,
                            eot_dataset** out);
int eot_dataset_num_steps(const eot_dataset* d);
long eot_dataset_num_measurements(const eot_dataset* d);
void eot_dataset_destroy(eot_dataset* d);

/* ---- tracking ---------------------------------------------------------- */

typedef struct eot_track eot_track;

typedef struct eot_track_options {
  /* one of "geo", "ideal", "active-only", "point" */
  const char* variant;
  int particles;
  int ideal_samples;    /* Monte-Carlo draws for the "ideal" variant */
  double ess_threshold; /* resample when ESS < threshold * particles */
  int run_index;        /* distinguishes repeated runs in seed derivation */
  uint64_t seed;        /* 0: derive from (scenario seed, variant, run_index) */
} eot_track_options;

void eot_track_options_init(eot_track_options* opts);

eot_status eot_track_run(const eot_scenario* s, const eot_dataset* d,
                         const eot_track_options* opts, eot_track** out);
eot_status eot_track_save(const eot_track* t, const char* csv_path);
int eot_track_num_steps(const eot_track* t);
int eot_track_degeneracy_events(const eot_track* t);
/* Estimated device position of step_index in [0, num_steps). */
eot_status eot_track_position(const eot_track* t, int step_index, double* x,
                              double* y);
void eot_track_destroy(eot_track* t);

/* ---- comparison -------------------------------------------------------- */

typedef struct eot_report eot_report;

typedef void (*eot_progress_fn)(const char* message, void* user);

typedef struct eot_compare_options {
  const char* variants; /* comma-separated variant list */
  int particles;
  int ideal_samples;
  int runs;
  int jobs; /* 0: hardware concurrency */
  eot_progress_fn progress;
  void* progress_user;
} eot_compare_options;

void eot_compare_options_init(eot_compare_options* opts);

/* Runs the full simulate->track->summarize pipeline. With out_dir non-NULL,
 * writes scenario.json, per-run dataset and track CSVs, report.json and
 * per-variant rmse_/cdf_ CSV exports into it. */
eot_status eot_compare_run(const eot_scenario* s,
                           const eot_compare_options* opts,
                           const char* out_dir, eot_report** out);

eot_status eot_report_save(const eot_report* r, const char* json_path);
eot_status eot_report_avg_rmse(const eot_report* r, const char* variant,
                               double* out);
eot_status eot_report_mean_step_seconds(const eot_report* r,
                                        const char* variant, double* out);
/* Fixed-width text table of the per-variant headline numbers; returns the
 * number of bytes that would have been written (snprintf semantics). */
long eot_report_render_table(const eot_report* r, char* buffer, size_t size);
void eot_report_destroy(eot_report* r);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EOTRACK_H */

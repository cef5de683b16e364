/* plasmon.h: C interface of the plasmon library.
 *
 * All objects are opaque handles created by *_new / plasmon_compute_* and
 * released with the matching *_free. Every fallible call returns a
 * plasmon_status; on failure, plasmon_last_error() and
 * plasmon_last_error_json() describe the most recent error on the calling
 * thread. Strings returned through char** out-parameters are owned by the
 * caller and must be released with plasmon_string_free().
 */
#ifndef PLASMON_PLASMON_H
#define PLASMON_PLASMON_H

#include <stddef.h>

#if defined(PLASMON_BUILDING_LIBRARY)
#define PLASMON_API __attribute__((visibility("default")))
#else
#define PLASMON_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum plasmon_status {
    PLASMON_OK = 0,
    PLASMON_ERR_DOMAIN = 1,
    PLASMON_ERR_CONFIG = 2,
    PLASMON_ERR_NUMERICAL = 3,
    PLASMON_ERR_GEOMETRY = 4,
    PLASMON_ERR_IO = 5,
    PLASMON_ERR_INVALID_ARGUMENT = 6,
    PLASMON_ERR_INTERNAL = 7,
    PLASMON_VALIDATION_FAILED = 8
} plasmon_status;

typedef struct plasmon_config plasmon_config;
typedef struct plasmon_modes plasmon_modes;
typedef struct plasmon_dressed plasmon_dressed;
typedef struct plasmon_spectrum plasmon_spectrum;
typedef struct plasmon_trace plasmon_trace;

PLASMON_API const char* plasmon_version(void);
PLASMON_API const char* plasmon_status_name(plasmon_status status);

/* Thread-local; valid until the next failing call on the same thread. */
PLASMON_API const char* plasmon_last_error(void);
/* {"status": "...", "code": n, "kind": "...", "message": "..."} */
PLASMON_API const char* plasmon_last_error_json(void);

PLASMON_API void plasmon_string_free(char* str);

/* ---- configuration ---------------------------------------------------- */

PLASMON_API plasmon_status plasmon_config_new(plasmon_config** out);
PLASMON_API void plasmon_config_free(plasmon_config* cfg);
/* Merges a `key = value` document; later keys override earlier ones. */
PLASMON_API plasmon_status plasmon_config_parse(plasmon_config* cfg, const char* text);
PLASMON_API plasmon_status plasmon_config_load_file(plasmon_config* cfg, const char* path);
PLASMON_API plasmon_status plasmon_config_set(plasmon_config* cfg, const char* key, const char* value);
/* "key=value" form, as given to --set on the command line. */
PLASMON_API plasmon_status plasmon_config_set_assignment(plasmon_config* cfg, const char* assignment);
/* Resolves defaults, validates, and returns the configuration as JSON. */
PLASMON_API plasmon_status plasmon_config_to_json(const plasmon_config* cfg, char** json_out);

/* ---- commands --------------------------------------------------------- */

/* Runs one of modes, dressed, spectrum-near, spectrum-far, pattern, dynamics,
 * validate. `output_dir` overrides the configured directory when non-NULL.
 * `report_out` (optional) receives the text summary. A `validate` run whose
 * checks fail returns PLASMON_VALIDATION_FAILED with the table in the report. */
PLASMON_API plasmon_status plasmon_run(const plasmon_config* cfg, const char* command, const char* output_dir,
                                       char** report_out);

/* ---- in-memory results ------------------------------------------------ */

PLASMON_API plasmon_status plasmon_compute_modes(const plasmon_config* cfg, plasmon_modes** out);
PLASMON_API size_t plasmon_modes_count(const plasmon_modes* modes);
PLASMON_API plasmon_status plasmon_modes_get(const plasmon_modes* modes, size_t index, int* order, double* energy_ev,
                                             double* width_ev, double* coupling_ev, double* fit_residual);
PLASMON_API void plasmon_modes_free(plasmon_modes* modes);

/* Dressed states of the configured mode set (mode_subset honoured). */
PLASMON_API plasmon_status plasmon_compute_dressed(const plasmon_config* cfg, plasmon_dressed** out);
PLASMON_API size_t plasmon_dressed_count(const plasmon_dressed* states);
PLASMON_API plasmon_status plasmon_dressed_get(const plasmon_dressed* states, size_t index, double* energy_ev,
                                               double* width_ev);
/* Fraction of state `index` on basis state `component` (0 = emitter). */
PLASMON_API plasmon_status plasmon_dressed_weight(const plasmon_dressed* states, size_t index, size_t component,
                                                  double* weight);
PLASMON_API void plasmon_dressed_free(plasmon_dressed* states);

/* kind: "near", "far" or "pattern". */
PLASMON_API plasmon_status plasmon_compute_spectrum(const plasmon_config* cfg, const char* kind,
                                                    plasmon_spectrum** out);
PLASMON_API size_t plasmon_spectrum_length(const plasmon_spectrum* spectrum);
PLASMON_API plasmon_status plasmon_spectrum_get(const plasmon_spectrum* spectrum, size_t index, double* abscissa,
                                                double* value);
/* Forward/backward asymmetry; patterns only. */
PLASMON_API plasmon_status plasmon_spectrum_asymmetry(const plasmon_spectrum* spectrum, double* asymmetry);
PLASMON_API void plasmon_spectrum_free(plasmon_spectrum* spectrum);

PLASMON_API plasmon_status plasmon_compute_dynamics(const plasmon_config* cfg, plasmon_trace** out);
PLASMON_API size_t plasmon_trace_length(const plasmon_trace* trace);
PLASMON_API size_t plasmon_trace_mode_count(const plasmon_trace* trace);
/* mode_populations may be NULL; otherwise it must hold plasmon_trace_mode_count() values. */
PLASMON_API plasmon_status plasmon_trace_get(const plasmon_trace* trace, size_t index, double* time_fs,
                                             double* emitter_population, double* mode_populations, double* norm);
PLASMON_API void plasmon_trace_free(plasmon_trace* trace);

/* ---- primitives ------------------------------------------------------- */

PLASMON_API plasmon_status plasmon_drude_permittivity(double eps_inf, double plasma_energy_ev, double damping_ev,
                                                      double energy_ev, double* re, double* im);
PLASMON_API plasmon_status plasmon_debye_to_si(double dipole_debye, double* out_si);

#ifdef __cplusplus
}
#endif

#endif /* PLASMON_PLASMON_H */

#ifndef PLQ_PLQ_H
#define PLQ_PLQ_H

/*
 * C interface of the plq library: Pauli channels, Pauli-Lindblad models,
 * twirling, Markovianity classification, phase-diagram sweeps, fitting and
 * quasi-probability sampling.
 *
 * Conventions:
 *  - Documents cross the boundary as JSON strings (UTF-8, NUL-terminated).
 *  - Output strings are allocated by the library; release them with
 *    plq_string_free.
 *  - Every fallible call returns a plq_status; on failure the thread-local
 *    plq_last_error()/plq_last_error_field() describe what went wrong.
 */

#if defined(_WIN32)
#define PLQ_API __declspec(dllexport)
#else
#define PLQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum plq_status {
  PLQ_OK = 0,
  PLQ_ERR_PARSE = 1,            /* malformed input document */
  PLQ_ERR_INVALID_ARGUMENT = 2, /* contract violation */
  PLQ_ERR_SIZE_LIMIT = 3,       /* dense caps exceeded */
  PLQ_ERR_ILL_DEFINED = 4,      /* vanishing Pauli eigenvalue */
  PLQ_ERR_INCONCLUSIVE = 5,     /* principal branch unavailable */
  PLQ_ERR_RANK_DEFICIENT = 6,   /* fit system underdetermined */
  PLQ_ERR_NUMERIC = 7,
  PLQ_ERR_INTERNAL = 8
} plq_status;

PLQ_API const char* plq_status_name(plq_status status);

/* Thread-local message/field of the last failing call on this thread. */
PLQ_API const char* plq_last_error(void);
PLQ_API const char* plq_last_error_field(void);

PLQ_API void plq_string_free(char* s);

/* ---- channels (opaque handles) ---- */

typedef struct plq_channel plq_channel;

PLQ_API plq_status plq_channel_parse(const char* json, plq_channel** out);
/* repr: "transfer" | "kraus" | "choi" | "pauli_basis"; NULL = transfer. */
PLQ_API plq_status plq_channel_to_json(const plq_channel* ch,
                                       const char* repr, char** json_out);
PLQ_API void plq_channel_free(plq_channel* ch);
PLQ_API int plq_channel_num_qubits(const plq_channel* ch);

PLQ_API plq_status plq_channel_twirl(const plq_channel* ch,
                                     plq_channel** out);
PLQ_API plq_status plq_channel_compose(const plq_channel* a,
                                       const plq_channel* b,
                                       plq_channel** out);
/* ok: 1 when CPTP within tolerances. Pass tolerances <= 0 for defaults. */
PLQ_API plq_status plq_channel_is_cptp(const plq_channel* ch, double cp_tol,
                                       double tp_tol, int* ok,
                                       char** report_json);

/* ---- Markovianity classification ----
 *
 * Dispatches on the shape of the channel: diagonal transfer matrices take
 * the Pauli route (sign test on the PL parameters), everything else the
 * channel-logarithm route. verdict: 1 = CSM, 0 = non-CSM. Ill-defined and
 * inconclusive inputs surface as their error codes, never as a verdict.
 * tol <= 0 selects the default 1e-10. */
PLQ_API plq_status plq_classify(const char* channel_json, double tol,
                                int* verdict, char** verdict_json);

/* ---- worked scenarios ---- */

PLQ_API plq_status plq_demo_hadamard(double gphi_t, char** report_json);
PLQ_API plq_status plq_demo_hadamard_relaxation(double gphi_t, double g_t,
                                                char** report_json);
/* theta <= 0 selects pi/2 (the sqrt(X) gate). */
PLQ_API plq_status plq_demo_sqrtx(double g_tg, double gphi_tg, double theta,
                                  char** report_json);

/* Phase-diagram sweep; returns the CSV document. workers <= 0 uses the
 * hardware concurrency. */
PLQ_API plq_status plq_sweep_csv(int nx, int ny, double gmax, double gpmax,
                                 int workers, char** csv_out);

/* ---- fitting and sampling ---- */

/* request: {"f": [{"word": "X", "value": 0.8, "sigma": 0.01}, ...],
 *           "support": ["X", ...], "allow_negative": true}
 * result:  {"params": {...}, "residual": ...} */
PLQ_API plq_status plq_fit(const char* request_json, char** result_json);

/* request: {"pl": {...}, "beta": -1, "shots": 100000, "seed": 7,
 *           "observable": "Z", "state": "plus",
 *           "channel": {...optional...}, "workers": 0}
 * The channel under test defaults to the PL channel of "pl".
 * result: {"estimate": ..., "stderr": ..., "total_gamma": ..., "shots": ...}
 */
PLQ_API plq_status plq_sample(const char* request_json, char** result_json);

#ifdef __cplusplus
}
#endif

#endif

/* C interface to the netstress analysis core.
 *
 * All functions returning int use status codes:
 *   0  success
 *   3  validation failure (malformed input, contract violation)
 *   4  runtime failure (I/O, internal error)
 *
 * On failure, *errmsg (when non-NULL) receives a malloc'd message that the
 * caller frees with ns_string_free. Handles are opaque and freed with their
 * matching *_close function; every handle is safe to share across threads
 * for concurrent reads once built.
 */

#ifndef NETSTRESS_H_
#define NETSTRESS_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ns_dataset_t ns_dataset_t;
typedef struct ns_lexicon_t ns_lexicon_t;
typedef struct ns_archive_t ns_archive_t;

enum {
    NS_OK = 0,
    NS_ERR_VALIDATION = 3,
    NS_ERR_RUNTIME = 4
};

const char* ns_version(void);
void ns_string_free(char* s);

/* Loads messages/prices/trades/vix/industry/directory CSVs from a directory.
 * Validation warnings (if any) are returned as a newline-joined string. */
ns_dataset_t* ns_dataset_open(const char* dir, char** warnings, char** errmsg);
void ns_dataset_close(ns_dataset_t* ds);

ns_lexicon_t* ns_lexicon_open(const char* path, char** errmsg);
void ns_lexicon_close(ns_lexicon_t* lex);

/* orientation: 0 = incidence counting, 1 = either-endpoint. */
ns_archive_t* ns_archive_build(const ns_dataset_t* ds, double alpha, int min_nodes,
                               int orientation, char** errmsg);
void ns_archive_close(ns_archive_t* archive);

int ns_metrics_write(const ns_dataset_t* ds, const ns_archive_t* archive, const char* path,
                     char** errmsg);
int ns_shocks_write(const ns_dataset_t* ds, double x, const char* path, char** errmsg);
int ns_curve_write(const ns_dataset_t* ds, const ns_archive_t* archive,
                   const ns_lexicon_t* lexicon_or_null, const char* feature, double grid_lo,
                   double grid_hi, double grid_step, const char* path, char** errmsg);
int ns_response_write(const ns_dataset_t* ds, const ns_archive_t* archive, const char* feature,
                      double x, int horizon, double band, const char* path, char** errmsg);
int ns_conformance_write(const ns_dataset_t* ds, const ns_lexicon_t* lexicon, const char* path,
                         char** errmsg);

/* fixed_effects: "stock" or "industry". */
int ns_regress_write(const ns_dataset_t* ds, const ns_archive_t* archive,
                     const char* fixed_effects, const char* feature, const char* path,
                     char** errmsg);

int ns_trades_label_write(const ns_dataset_t* ds, const char* path, char** errmsg);
int ns_trades_baseline_write(const ns_dataset_t* ds, uint64_t seed, const char* path,
                             char** errmsg);
/* next_price: "close" or "open". */
int ns_trades_loss_write(const ns_dataset_t* ds, uint64_t seed, const char* next_price,
                         const char* path, char** errmsg);

/* task: "conformance" | "optimality" | "sudden".
 * feature_sets: comma-separated ("network,price,network+price"); empty or
 * NULL selects the task's defaults. categories: comma-separated lexicon
 * categories (conformance only); empty selects all. */
int ns_predict_write(const ns_dataset_t* ds, const ns_archive_t* archive,
                     const ns_lexicon_t* lexicon_or_null, const char* task,
                     const char* feature_sets, const char* categories, int k_min, int k_max,
                     uint64_t seed, int bin_size, double lambda, int jobs, const char* path,
                     char** errmsg);

/* config_path may be NULL for defaults; the seed argument overrides any
 * seed in the config file. */
int ns_synth_generate(const char* config_path, uint64_t seed, const char* outdir, char** errmsg);

int ns_tag_mentions(const char* messages_csv, const char* prices_csv, const char* out_csv,
                    char** errmsg);

/* Runs the full pipeline with defaults; *files receives a newline-joined
 * list of the files written (relative to outdir). */
int ns_report_run(const char* datadir, const char* outdir, double alpha, int min_nodes,
                  double x, int horizon, double band, uint64_t seed, int bin_size,
                  double lambda, int jobs, char** files, char** errmsg);

char* ns_file_sha256(const char* path, char** errmsg);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NETSTRESS_H_ */

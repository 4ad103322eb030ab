/*
 * bovw - weakly supervised visual vocabulary construction for
 * bag-of-features image classification.
 *
 * C API of the shared library. All functions returning a pointer yield NULL
 * on failure; all functions returning int yield a BOVW_* status code. In
 * both cases bovw_last_error() describes the most recent failure on the
 * calling thread. Objects are opaque handles owned by the caller and
 * released with the matching *_free function.
 */

#ifndef BOVW_H
#define BOVW_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define BOVW_OK 0
/* Fatal failure; bovw_last_error() has the message. */
#define BOVW_ERROR 1
/* An experiment finished but some sweep cells failed (see failures.csv). */
#define BOVW_PARTIAL 2

const char* bovw_version(void);

/* Message for the last failure on this thread; empty string if none. The
 * pointer stays valid until the next failing call on the same thread. */
const char* bovw_last_error(void);

/* ------------------------------------------------------------------ */
/* Flat key=value configuration.                                       */

typedef struct bovw_config bovw_config;

bovw_config* bovw_config_new(void);
bovw_config* bovw_config_load(const char* path);
int bovw_config_set(bovw_config* cfg, const char* key, const char* value);
/* NULL when the key is absent; pointer valid until the config changes. */
const char* bovw_config_get(const bovw_config* cfg, const char* key);
void bovw_config_free(bovw_config* cfg);

/* ------------------------------------------------------------------ */
/* Datasets: a directory of .boff feature files plus a label CSV.      */

typedef struct bovw_dataset bovw_dataset;

/* labels_csv may be NULL for an unlabeled dataset (encode-only use). */
bovw_dataset* bovw_dataset_open(const char* features_dir, const char* labels_csv);
void bovw_dataset_free(bovw_dataset* dataset);

int64_t bovw_dataset_image_count(const bovw_dataset* dataset);
int64_t bovw_dataset_labeled_count(const bovw_dataset* dataset);
int64_t bovw_dataset_label_count(const bovw_dataset* dataset);
int64_t bovw_dataset_feature_dim(const bovw_dataset* dataset);
/* Total feature count of one image; index in [0, image_count). */
int64_t bovw_dataset_feature_count(const bovw_dataset* dataset, int64_t image);
const char* bovw_dataset_image_id(const bovw_dataset* dataset, int64_t image);

/* ------------------------------------------------------------------ */
/* Vocabularies.                                                       */

typedef struct bovw_vocabulary bovw_vocabulary;

/* strategy: "random", "random_km", "model" or "filt_model". cfg may be NULL
 * for defaults; recognised keys: alpha, max_files, kmeans_max_iterations,
 * kmeans_tol. */
bovw_vocabulary* bovw_vocab_build(const bovw_dataset* dataset, const char* strategy, uint32_t size,
                                  const bovw_config* cfg, uint64_t seed);
bovw_vocabulary* bovw_vocab_read(const char* path);
int bovw_vocab_write(const bovw_vocabulary* vocab, const char* path);
void bovw_vocab_free(bovw_vocabulary* vocab);

uint32_t bovw_vocab_size(const bovw_vocabulary* vocab);
uint32_t bovw_vocab_dim(const bovw_vocabulary* vocab);
const char* bovw_vocab_strategy(const bovw_vocabulary* vocab);
/* Source label index of a word, -1 for generic words or out-of-range. */
int32_t bovw_vocab_provenance(const bovw_vocabulary* vocab, uint32_t word);

/* tf histogram of one image against the vocabulary; weights must hold
 * bovw_vocab_size(vocab) doubles. */
int bovw_encode_image(const bovw_dataset* dataset, int64_t image, const bovw_vocabulary* vocab,
                      double* weights);
/* Encode every image and write the encoding CSV. */
int bovw_encode_csv(const bovw_dataset* dataset, const bovw_vocabulary* vocab, const char* out_csv);

/* ------------------------------------------------------------------ */
/* Config-driven commands; these back the CLI one to one.              */

/* images_dir + out_dir (+ grid_step, patch_size, min_image_side). */
int bovw_cmd_extract(const bovw_config* cfg);
/* synth_* keys + out_dir. */
int bovw_cmd_synth(const bovw_config* cfg);
/* features_dir, labels_csv, strategy, vocab_size, seed -> vocab_file. */
int bovw_cmd_vocab(const bovw_config* cfg);
/* features_dir, vocab_file -> encoding_csv. */
int bovw_cmd_encode(const bovw_config* cfg);
/* features_dir, labels_csv, encoding_csv -> results under out_dir. */
int bovw_cmd_eval(const bovw_config* cfg);
/* Full sweep; returns BOVW_PARTIAL when some cells failed. */
int bovw_cmd_experiment(const bovw_config* cfg);

#ifdef __cplusplus
}
#endif

#endif /* BOVW_H */

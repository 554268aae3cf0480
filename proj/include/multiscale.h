#ifndef MULTISCALE_H
#define MULTISCALE_H

/* C interface to the multiscale library. All computation routines return a
 * newly allocated JSON string (release with ms_free) or NULL on failure, in
 * which case ms_last_error / ms_last_error_code on the context describe the
 * problem. Contexts are not thread-safe; use one per thread. */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ms_context ms_context;

#define MS_OK 0
#define MS_ERR_VALIDATION 1
#define MS_ERR_SIZE 2
#define MS_ERR_USAGE 64
#define MS_ERR_INTERNAL 70

ms_context *ms_context_new(void);
void ms_context_free(ms_context *ctx);

/* Overrides every size guard process-wide; 0 restores the defaults. */
void ms_context_set_max_n(ms_context *ctx, int max_n);

const char *ms_last_error(const ms_context *ctx); /* empty string if none */
int ms_last_error_code(const ms_context *ctx);    /* MS_OK if none */

void ms_free(char *s);

/* Enumeration. max_dim < 0 means no filter. */
char *ms_trees(ms_context *ctx, int n);
char *ms_chains(ms_context *ctx, int n, int max_dim);
char *ms_strata(ms_context *ctx, int n);
char *ms_blowup_schedule(ms_context *ctx, int n);

/* Degeneration limits of Laurent families. */
char *ms_limit(ms_context *ctx, const char *family_json);

/* Chart points. Levels to contract and permutations/translations are
 * comma-separated lists; pair is two marks i,j. */
char *ms_point_validate(ms_context *ctx, const char *point_json);
char *ms_transition(ms_context *ctx, const char *point_json, const char *levels_csv);
char *ms_period(ms_context *ctx, const char *point_json, int i, int j);
char *ms_act_sigma(ms_context *ctx, const char *point_json, const char *sigma_csv);
char *ms_act_translate(ms_context *ctx, const char *point_json, const char *a_csv);
char *ms_xi(ms_context *ctx, const char *point_json);
char *ms_kappa(ms_context *ctx, const char *point_json, const char *rho_json);

/* Chow ring of the blowup model. */
char *ms_chow(ms_context *ctx, int n, int want_hilbert, int want_relations);

/* Level structures on an unleveled rooted marked tree. */
char *ms_level_structures(ms_context *ctx, const char *tree_json);

#ifdef __cplusplus
}
#endif

#endif /* MULTISCALE_H */

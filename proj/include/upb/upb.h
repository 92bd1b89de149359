/*
 * upb — unextendible product bases: construction, verification, strength,
 * complement states, and strength optimization.
 *
 * C interface of the shared library. All domain objects live behind opaque
 * handles; structured results are returned as JSON strings allocated by the
 * library (release with upb_string_free). Functions return UPB_OK on success;
 * on failure upb_last_error() carries a thread-local message.
 *
 * Angles are radians. Boolean outputs are ints (0/1).
 */
#ifndef UPB_H
#define UPB_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum upb_status {
    UPB_OK = 0,
    UPB_ERR_INVALID_ARGUMENT = 1, /* bad handle, shape mismatch, unknown name */
    UPB_ERR_PRECONDITION = 2,     /* domain precondition violated (degenerate normalizer, ...) */
    UPB_ERR_PARSE = 3,            /* malformed JSON document or spec */
    UPB_ERR_NUMERIC = 4,          /* eigensolver nonconvergence or similar */
    UPB_ERR_TOO_LARGE = 5,        /* enumeration exceeds the configured member cap */
    UPB_ERR_IO = 6,               /* file system failure */
    UPB_ERR_INTERNAL = 7
} upb_status;

/* Opaque product-basis handle. */
typedef struct upb_basis upb_basis;

typedef struct upb_config {
    double tol_zero;        /* zero classification of scalar products (default 1e-9) */
    double tol_rank;        /* relative rank cutoff (default 1e-8) */
    double tol_ppt;         /* PPT eigenvalue floor (default 1e-10) */
    int max_members;        /* unextendibility enumeration cap (default 20) */
    int threads;            /* scan workers; 1 = sequential (default 1) */
    unsigned long seed;     /* randomized-helper seed (default 0) */
} upb_config;

const char* upb_version(void);
/* Message of the last failure on this thread; empty string if none. */
const char* upb_last_error(void);

void upb_config_init(upb_config* cfg);

void upb_basis_free(upb_basis* b);
void upb_string_free(char* s);

/* ---- constructors ---- */
upb_status upb_construct_pyramid(upb_basis** out);
upb_status upb_construct_tiles(upb_basis** out);
upb_status upb_construct_six_param(double theta_a, double gamma_a, double phi_a,
                                   double theta_b, double gamma_b, double phi_b,
                                   upb_basis** out);
/* m in {2, 3}; m = 2 is the Sept. */
upb_status upb_construct_gen_pyramid7(int m, upb_basis** out);
/* params: three blocks of (theta1..theta4, lambda, mu, chi), 21 doubles.
 * prenorms_out, when non-NULL, receives the pre-normalization norm of each
 * block's index-1 recipe vector (the one the family's printed normalizer does
 * not fix in closed form). */
upb_status upb_construct_tripartite(const double params[21], double prenorms_out[3],
                                    upb_basis** out);
upb_status upb_construct_subfamily(double theta, double alpha, upb_basis** out);
upb_status upb_construct_tensor(const upb_basis* a, const upb_basis* b, upb_basis** out);

/* ---- queries ---- */
int upb_basis_parties(const upb_basis* b);
int upb_basis_members(const upb_basis* b);
int upb_basis_dim(const upb_basis* b, int party);
upb_status upb_basis_label(const upb_basis* b, char** out);

/* ---- document serialization ---- */
upb_status upb_basis_to_json(const upb_basis* b, char** out_json);
upb_status upb_basis_from_json(const char* json_text, upb_basis** out);

/* ---- verification ----
 * Verdict: *is_upb_out = 1 iff orthogonal and unextendible. Sets larger than
 * max_members verify through their embedded tensor factors when present;
 * otherwise UPB_ERR_TOO_LARGE. */
upb_status upb_verify(const upb_basis* b, const upb_config* cfg, int* is_upb_out,
                      char** report_json);

/* ---- strength ----
 * pattern_mode: "measured"  pattern classified from the set itself
 *               "reference" pattern taken from ref_a (a set of the same shape)
 *               "product"   product reference pattern from factors ref_a and
 *                           ref_b; both may be NULL when the basis carries
 *                           embedded tensor factors
 * closed_value: closed-form value to compare against, or NaN for none. */
upb_status upb_strength(const upb_basis* b, const char* pattern_mode, const upb_basis* ref_a,
                        const upb_basis* ref_b, double closed_value, const upb_config* cfg,
                        char** report_json);

/* Closed forms. Phases of the six-parameter form are accepted and ignored
 * (the expression contains none). */
upb_status upb_closed_form_sixparam(double theta_a, double gamma_a, double phi_a,
                                    double theta_b, double gamma_b, double phi_b, double* out);
upb_status upb_closed_form_tri_f(double x, double y, double* out);
upb_status upb_closed_form_tri_strength(double x, double y, double* out);

/* ---- complement state ----
 * *ppt_out = 1 iff every single-party partial transpose is positive within
 * tol_ppt. include_pair_cuts adds two-party groupings for k >= 3. */
upb_status upb_state_report(const upb_basis* b, const upb_config* cfg, int include_pair_cuts,
                            int* ppt_out, char** report_json);

/* Built-in negative fixture: PPT check of the two-qubit Bell projector
 * (min partial-transpose eigenvalue -1/2, verdict false). */
upb_status upb_state_selftest_bell(const upb_config* cfg, int* ppt_out, char** report_json);

/* ---- scans and optimization ----
 * scan spec: {"objective": id, "fixed": {...}, "axes": [{"name","lo","hi","steps"}...]}
 * optimize spec: {"objective": id, "fixed": {...}, "box": [{"name","lo","hi"}...],
 *                 "start": {...}, "step0": s, "tol": t, "max_iter": n}
 *                 or "from_grid": true with "axes" as in a scan spec.
 * Objectives: sixparam_closed, sixparam_generic, tri_f, tri_closed,
 * subfamily_generic; optimizer also accepts quadratic_selftest. */
upb_status upb_scan(const char* spec_json, const char* csv_path, const upb_config* cfg,
                    char** summary_json);
upb_status upb_optimize(const char* spec_json, const upb_config* cfg, char** result_json);

/* Named-family metadata table (names, spaces, member counts). */
upb_status upb_family_catalog(char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* UPB_H */

/* C interface to the quincunx framelet library.  Every handle is opaque; every call that can
 * fail returns a qfk_status and leaves a message retrievable with qfk_last_error() on the
 * calling thread.  Strings returned through char** are owned by the caller and released with
 * qfk_string_free. */
#ifndef QFK_QFRAMELET_H
#define QFK_QFRAMELET_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define QFK_API __declspec(dllexport)
#else
#define QFK_API __attribute__((visibility("default")))
#endif

typedef enum qfk_status {
  QFK_OK = 0,
  QFK_ERR_INVALID_ARGUMENT = 1,
  QFK_ERR_BAD_DILATION = 2,
  QFK_ERR_NON_INTEGER_SPECTRUM = 3,
  QFK_ERR_NEGATIVE_POLY = 4,
  QFK_ERR_ROOT_CLUSTER = 5,
  QFK_ERR_ODD_REAL_ROOT = 6,
  QFK_ERR_NOT_PARTITION = 7,
  QFK_ERR_BAD_SHIFT = 8,
  QFK_ERR_NOT_CANONICAL = 9,
  QFK_ERR_SINGULAR_SYSTEM = 10,
  QFK_ERR_NOT_LOWPASS = 11,
  QFK_ERR_INCOMPATIBLE_CENTER = 12,
  QFK_ERR_SPECTRUM_REMOVAL = 13,
  QFK_ERR_BAD_DIMENSIONS = 14,
  QFK_ERR_METADATA_MISMATCH = 15,
  QFK_ERR_DIMENSION_MISMATCH = 16,
  QFK_ERR_PARSE = 17,
  QFK_ERR_IO = 18,
  QFK_ERR_NULL_POINTER = 19,
  QFK_ERR_INTERNAL = 20
} qfk_status;

typedef struct qfk_bank qfk_bank;
typedef struct qfk_image qfk_image;
typedef struct qfk_pyramid qfk_pyramid;

QFK_API const char* qfk_version(void);
QFK_API const char* qfk_status_name(qfk_status status);
/* Message of the last failed call on this thread; empty after a successful one. */
QFK_API const char* qfk_last_error(void);
QFK_API void qfk_string_free(char* s);

/* ---- banks ---------------------------------------------------------------------------------- */

/* family: "a2d" {n}, "thm22" {n}, "complex-dc" {n, root: "negative"|"positive"}, "tensor" {n, m},
 * "six-multiple" {a: "interp2"|"six-tap", phase: "match"|"conjugate"}, "general" {j, k, dilation:
 * "M_sqrt2"|"N_sqrt2", g1, g2, g3, g4: [x, y]}.  params_json may be NULL for defaults.
 * "a2d" yields a bank holding only the low-pass filter. */
QFK_API qfk_status qfk_bank_generate(const char* family, const char* params_json, qfk_bank** out);
QFK_API qfk_status qfk_bank_load(const char* path, qfk_bank** out);
QFK_API qfk_status qfk_bank_from_json(const char* text, qfk_bank** out);
/* with_report embeds the verification report computed at the given tolerance. */
QFK_API qfk_status qfk_bank_save(const qfk_bank* bank, const char* path, int with_report, double tol);
QFK_API qfk_status qfk_bank_to_json(const qfk_bank* bank, int with_report, double tol, char** out);
QFK_API void qfk_bank_free(qfk_bank* bank);

QFK_API qfk_status qfk_bank_filter_count(const qfk_bank* bank, int* count);
QFK_API qfk_status qfk_bank_family(const qfk_bank* bank, char** out);
/* Construction parameter by name; an empty string when the bank does not record it. */
QFK_API qfk_status qfk_bank_param(const qfk_bank* bank, const char* key, char** out);
/* dilation[2 * row + col] */
QFK_API qfk_status qfk_bank_dilation(const qfk_bank* bank, int dilation[4]);
/* Support box of filter i: first index (min1, min2), extent n1 x n2. */
QFK_API qfk_status qfk_bank_filter_extent(const qfk_bank* bank, int i, int* min1, int* min2, int* n1, int* n2);
/* Copies n1 * n2 coefficients, row-major over k1; im may be NULL. */
QFK_API qfk_status qfk_bank_filter_coeffs(const qfk_bank* bank, int i, double* re, double* im);

/* ---- verification --------------------------------------------------------------------------- */

typedef struct qfk_verify_result {
  double tolerance;
  double tight_residual;
  int tight_pass;
  double canonical_max_deviation; /* 0 without recorded pairs */
  int canonical_pass;
  int sum_rules;                  /* -1 when filter 0 is not low-pass */
  int linear_phase_moments;
  int min_vanishing_moments;      /* over the high-pass filters; -1 without any */
  int order_relation_pass;        /* min vmo == min(sr, lpm / 2) */
  int symmetric_filters;          /* filters with a detected symmetry */
  int pass;                       /* tight_pass, canonical_pass and filter 0 low-pass */
} qfk_verify_result;

/* report_json may be NULL. */
QFK_API qfk_status qfk_bank_verify(const qfk_bank* bank, double tol, qfk_verify_result* out, char** report_json);

/* ---- smoothness ----------------------------------------------------------------------------- */

typedef enum qfk_smoothness_method { QFK_TRANSITION_SPECTRUM = 0, QFK_SUBDIVISION = 1 } qfk_smoothness_method;

typedef struct qfk_smoothness {
  double sm;           /* Sobolev exponent sm_2 */
  double rho;          /* rho_m(a, M)_2 */
  int method;          /* qfk_smoothness_method actually used */
  int sum_rules;
  int matrix_size;     /* |K| for the transition route */
  int iterations;      /* subdivision steps */
  char note[192];      /* fallback reason, empty if none */
} qfk_smoothness;

/* Smoothness of the bank's low-pass filter with the bank's dilation. */
QFK_API qfk_status qfk_smoothness_bank(const qfk_bank* bank, qfk_smoothness_method method, qfk_smoothness* out);
/* a^{2D}_{2n,2n} with M_sqrt2 (quincunx != 0) or a^I_{2n} with dilation 2. */
QFK_API qfk_status qfk_smoothness_family(int n, int quincunx, qfk_smoothness_method method, qfk_smoothness* out);

/* ---- images and transforms ------------------------------------------------------------------ */

QFK_API qfk_status qfk_image_create(int width, int height, const double* re, const double* im, qfk_image** out);
QFK_API qfk_status qfk_image_load_pgm(const char* path, qfk_image** out);
QFK_API qfk_status qfk_image_save_pgm(const qfk_image* img, const char* path, int maxval);
QFK_API qfk_status qfk_image_size(const qfk_image* img, int* width, int* height);
/* Copies width * height samples row-major; im may be NULL. */
QFK_API qfk_status qfk_image_samples(const qfk_image* img, double* re, double* im);
QFK_API void qfk_image_free(qfk_image* img);
QFK_API qfk_status qfk_max_abs_error(const qfk_image* a, const qfk_image* b, double* out);

QFK_API qfk_status qfk_analyze(const qfk_bank* bank, const qfk_image* img, int levels, qfk_pyramid** out);
QFK_API qfk_status qfk_synthesize(const qfk_bank* bank, const qfk_pyramid* pyr, qfk_image** out);
QFK_API qfk_status qfk_frame_energy_residual(const qfk_pyramid* pyr, const qfk_image* img, double* out);
QFK_API qfk_status qfk_pyramid_levels(const qfk_pyramid* pyr, int* levels, int* high_bands);
/* Largest |v| in high band b (1-based filter index) of level j (1-based); b = 0 selects the low
 * band, which exists only at the deepest level. */
QFK_API qfk_status qfk_pyramid_band_max_abs(const qfk_pyramid* pyr, int level, int band, double* out);
QFK_API qfk_status qfk_pyramid_redundancy(const qfk_pyramid* pyr, double* out);
/* base.json header plus base.bin payload. */
QFK_API qfk_status qfk_pyramid_save(const qfk_pyramid* pyr, const char* base);
QFK_API qfk_status qfk_pyramid_load(const char* base, qfk_pyramid** out);
QFK_API void qfk_pyramid_free(qfk_pyramid* pyr);

#ifdef __cplusplus
}
#endif

#endif

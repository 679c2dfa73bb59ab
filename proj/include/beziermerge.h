/* SPDX-License-Identifier: Apache-2.0
 *
 * beziermerge — C API for merging composite Bezier curves.
 *
 * The library approximates a piecewise Bezier curve by a single Bezier curve
 * of a chosen degree, minimizing the exact L2 distance subject to endpoint
 * derivative constraints and optional per-coordinate box bounds on the free
 * control points.
 *
 * All functions returning bm_status set a thread-local message retrievable
 * via bm_last_error() on failure. Handles are opaque; every *_create has a
 * matching *_destroy, and destroy functions accept NULL.
 */
#ifndef BEZIERMERGE_H
#define BEZIERMERGE_H

#if defined(_WIN32)
#if defined(BEZIERMERGE_BUILD)
#define BM_API __declspec(dllexport)
#else
#define BM_API __declspec(dllimport)
#endif
#else
#define BM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bm_status {
    BM_OK = 0,
    BM_ERR_INVALID_ARGUMENT = 1, /* malformed sizes, ranges, null pointers */
    BM_ERR_CONSTRAINT = 2,       /* valid data violating a documented precondition */
    BM_ERR_SOLVER = 3,           /* iteration cap exceeded */
    BM_ERR_NUMERIC = 4           /* loss of positive definiteness, overflow, non-finite data */
} bm_status;

/* How endpoint derivative constraints read the input curve (see README). */
typedef enum bm_derivative_frame {
    BM_DERIVATIVES_SEGMENT_LOCAL = 0, /* match the end segments' local-parameter derivatives */
    BM_DERIVATIVES_GLOBAL_CURVE = 1   /* match d^j P/dt^j in the global parameter */
} bm_derivative_frame;

typedef struct bm_curve bm_curve;
typedef struct bm_options bm_options;
typedef struct bm_result bm_result;

BM_API const char* bm_version(void);
/* Message for the most recent failure on this thread; empty string if none. */
BM_API const char* bm_last_error(void);

/* ---- composite curve ---------------------------------------------------- */

BM_API bm_status bm_curve_create(int dimension, bm_curve** out);
BM_API void bm_curve_destroy(bm_curve* curve);

/* points: (degree+1) x dimension coordinates, row-major (one point per row). */
BM_API bm_status bm_curve_add_segment(bm_curve* curve, int degree, const double* points);

/* knots: segment_count + 1 values, 0 = t_0 < ... < t_s = 1. */
BM_API bm_status bm_curve_set_partition(bm_curve* curve, const double* knots, int count);

/* Computes and stores the partition proportional to accumulated arc length. */
BM_API bm_status bm_curve_arc_length_partition(bm_curve* curve);

BM_API int bm_curve_dimension(const bm_curve* curve);
BM_API int bm_curve_segment_count(const bm_curve* curve);
/* Degree of segment `index`, or -1 on bad arguments. */
BM_API int bm_curve_segment_degree(const bm_curve* curve, int index);
/* out: (degree+1) x dimension values, row-major. */
BM_API bm_status bm_curve_get_segment_points(const bm_curve* curve, int index, double* out);
/* 1 if a partition is set or computed, else 0. */
BM_API int bm_curve_has_partition(const bm_curve* curve);
/* out: segment_count + 1 values. Requires a set or computed partition. */
BM_API bm_status bm_curve_get_partition(const bm_curve* curve, double* out);
/* point_out: dimension values. Requires a partition. */
BM_API bm_status bm_curve_evaluate(const bm_curve* curve, double t, double* point_out);

/* Non-fatal diagnostics from curve assembly (e.g. segments that do not meet).
 * Count is 0 until enough data is present to assemble the curve. */
BM_API int bm_curve_warning_count(const bm_curve* curve);
BM_API const char* bm_curve_warning(const bm_curve* curve, int index);

/* ---- merge options ------------------------------------------------------ */

BM_API bm_status bm_options_create(bm_options** out);
BM_API void bm_options_destroy(bm_options* options);
BM_API bm_status bm_options_set_degree(bm_options* options, int m);
/* k: control points pinned at t=0 (continuity order k-1); l: same at t=1. */
BM_API bm_status bm_options_set_continuity(bm_options* options, int k, int l);
/* lower/upper: `dimension` values each. */
BM_API bm_status bm_options_set_box(bm_options* options, int dimension, const double* lower,
                                    const double* upper);
BM_API bm_status bm_options_clear_box(bm_options* options);
/* Sampling density for the reported max error (default 500). */
BM_API bm_status bm_options_set_samples(bm_options* options, int samples);
BM_API bm_status bm_options_set_derivative_frame(bm_options* options, bm_derivative_frame frame);

/* ---- merging ------------------------------------------------------------ */

/* Runs the merge (box-constrained when the options carry a box). The curve
 * must have a partition set or computed. */
BM_API bm_status bm_merge(const bm_curve* curve, const bm_options* options, bm_result** out);

BM_API void bm_result_destroy(bm_result* result);
BM_API int bm_result_degree(const bm_result* result);
BM_API int bm_result_dimension(const bm_result* result);
/* out: (degree+1) x dimension values, row-major. */
BM_API bm_status bm_result_get_control_points(const bm_result* result, double* out);
/* Exact L2 error of the merge. */
BM_API double bm_result_error_l2(const bm_result* result);
/* Max Euclidean error over the sampling grid. */
BM_API double bm_result_error_max(const bm_result* result);
/* Largest KKT residual over the per-coordinate solves (0 when unconstrained). */
BM_API double bm_result_kkt_residual(const bm_result* result);
/* out: `dimension` per-coordinate solver iteration counts. */
BM_API bm_status bm_result_iterations(const bm_result* result, int* out);
/* Control point indices at a bound for one coordinate; upper_side: 0 = lower,
 * 1 = upper. Count is -1 on bad arguments. */
BM_API int bm_result_active_count(const bm_result* result, int coordinate, int upper_side);
BM_API bm_status bm_result_active_indices(const bm_result* result, int coordinate, int upper_side,
                                          int* out);
BM_API int bm_result_warning_count(const bm_result* result);
BM_API const char* bm_result_warning(const bm_result* result, int index);
/* Evaluate the merged curve at t in [0, 1]; point_out: dimension values. */
BM_API bm_status bm_result_evaluate(const bm_result* result, double t, double* point_out);

/* ---- box suggestion ----------------------------------------------------- */

/* Smallest box containing all control points. lower_out/upper_out:
 * `dimension` values each. */
BM_API bm_status bm_suggest_box(const bm_curve* curve, double* lower_out, double* upper_out);

/* Expands the previous box: each listed face moves outward by step times the
 * previous box's diagonal. Faces are encoded 2*axis for the lower face of an
 * axis and 2*axis+1 for the upper face. Pass faces = NULL (face_count 0)
 * with non-NULL options to pick the faces automatically: those most violated
 * by the unconstrained merge under the given options. */
BM_API bm_status bm_expand_box(const bm_curve* curve, const double* lower, const double* upper,
                               double step, const int* faces, int face_count,
                               const bm_options* options_or_null, double* lower_out,
                               double* upper_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BEZIERMERGE_H */

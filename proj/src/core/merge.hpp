// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/bezier.hpp"
#include "core/matrix.hpp"
#include "core/qpbox.hpp"

namespace bm::merge {

// How the endpoint-derivative constraints read the input curve's derivatives.
//
// segment_local (default): the merged curve's derivatives at t=0 / t=1 match
// the first/last segment's derivatives with respect to that segment's own
// local parameter. This is the convention the reference error figures were
// produced with.
//
// global_curve: the constraints carry the (delta t)^-j chain-rule factors, so
// the match is against d^j P / dt^j in the shared global parameter. Stronger
// reading, selectable when true global-parameter continuity is wanted.
enum class derivative_frame { segment_local, global_curve };

// Axis-aligned per-coordinate bounds c_h <= x <= C_h.
struct box_bounds {
    std::vector<double> lower;
    std::vector<double> upper;
};

// One face of a box: an axis index plus which side.
struct face {
    int axis = 0;
    bool upper_side = false;
};

struct options {
    int degree = 3;      // m: degree of the merged curve
    int left_order = 1;  // k: number of control points pinned at t=0 (C^{k-1})
    int right_order = 1; // l: number pinned at t=1 (C^{l-1})
    std::optional<box_bounds> box;
    int samples = 500; // sampling density for the max-error report
    derivative_frame frame = derivative_frame::segment_local;
};

// The constraint elimination: indices 0..k-1 and m-l+1..m are forced by the
// endpoint conditions, the rest stay free.
struct eliminated {
    std::vector<int> fixed_ids; // ascending
    std::vector<int> free_ids;  // ascending
    matrix fixed_values;        // |fixed_ids| x d, rows aligned with fixed_ids
};

struct result {
    matrix control_points; // (m+1) x d
    double e2 = 0.0;       // exact L2 error
    double e_inf = 0.0;    // sampled max Euclidean error
    std::vector<int> iterations;                 // per coordinate; 0 when unconstrained
    std::vector<std::vector<int>> active_lower;  // per coordinate: control point indices
    std::vector<std::vector<int>> active_upper;  //   at their bounds
    double kkt_residual = 0.0;                   // max over coordinates
    options spec;
    std::vector<std::string> warnings;
};

// Checks the option invariants against the curve: m at least the largest
// segment degree and within the supported cap, 0 <= k <= n_1 + 1,
// 0 <= l <= n_s + 1, k + l <= m, box (when present) d-dimensional with
// lower <= upper, samples >= 1.
void validate(const composite_curve& p, const options& spec);

// Values of the endpoint-constrained control points.
[[nodiscard]] eliminated fixed_endpoint_points(const composite_curve& p, const options& spec);

// The quadratic objective for one coordinate h over the free control values:
// 1/2 x^T Q x + d^T x + a equals the exact squared L2 distance between P_h
// and the merged coordinate polynomial. `restrictions` holds one interval
// restriction matrix per segment (degree m, built over p's partition). The
// box bounds of the returned problem replicate the spec's box for coordinate
// h, or +/-infinity when no box is present.
[[nodiscard]] qp::box_qp assemble_objective(const composite_curve& p, const options& spec,
                                            std::span<const matrix> restrictions,
                                            const eliminated& elim, int coordinate);

// Unconstrained merge: free values solve Q x = -d.
[[nodiscard]] result merge_traditional(const composite_curve& p, const options& spec);

// Box-constrained merge: per-coordinate active-set solve started at the
// lower-bound corner. The fixed endpoint points are NOT box-constrained; a
// warning is emitted when they fall outside the box.
[[nodiscard]] result merge_boxed(const composite_curve& p, const options& spec);

// Dispatches on whether spec.box is present.
[[nodiscard]] result merge(const composite_curve& p, const options& spec);

// Max Euclidean distance between P and the degree-m curve with the given
// control points, over samples+1 equispaced parameters.
[[nodiscard]] double error_linf(const composite_curve& p, const matrix& merged_points,
                                int samples = 500);

// Smallest axis-aligned box containing every original control point.
[[nodiscard]] box_bounds suggest_box(const composite_curve& p);

// Expansion of a previous box: each listed face moves outward by
// step * (previous box's diagonal length). step = 0 returns the box
// unchanged. Faces must be distinct and within the curve's dimension.
[[nodiscard]] box_bounds suggest_box(const composite_curve& p, double step,
                                     const box_bounds& previous, std::span<const face> faces);

// Same, with the faces chosen automatically: the faces most often violated
// by the unconstrained solution's free control points (all faces tied for
// the highest violation count; none when that solution fits the box).
[[nodiscard]] box_bounds suggest_box(const composite_curve& p, double step,
                                     const box_bounds& previous, const options& merge_options);

// The automatic face choice itself, exposed for reporting.
[[nodiscard]] std::vector<face> default_expansion_faces(const composite_curve& p,
                                                        const options& merge_options,
                                                        const box_bounds& previous);

[[nodiscard]] double box_diagonal(const box_bounds& b);

} // namespace bm::merge

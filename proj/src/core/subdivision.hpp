// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "core/matrix.hpp"

namespace bm::subdivision {

// Left-subdivision operator at lambda: row j holds the Bernstein weights
// that express control point j of the restriction to [0, lambda] ... here in
// the reparametrized form used below: row j = [j zeros, B_{0,m-j}(lambda),
// ..., B_{m-j,m-j}(lambda)].
[[nodiscard]] matrix stage_tail(int m, double lambda);

// Companion operator: row j = [B_{0,j}(lambda), ..., B_{j,j}(lambda), zeros].
[[nodiscard]] matrix stage_head(int m, double lambda);

// Restriction matrix D for the interval [t_prev, t_cur] within [0, 1]: if a
// degree-m curve has control points r, then D r are the control points of
// the same curve reparametrized over [t_prev, t_cur]. Computed as the product
// stage_tail(m, t_prev / t_cur) * stage_head(m, t_cur).
// Requires 0 <= t_prev < t_cur <= 1.
[[nodiscard]] matrix restriction_direct(int m, double t_prev, double t_cur);

// Same matrix via an O(m^2) row recurrence instead of the O(m^3) product.
// Rows 0, 1, m-1, m are seeded from Bernstein values; the remaining rows are
// filled marching from both ends toward the middle, which keeps the
// recurrence's rounding drift at machine precision (a one-directional march
// loses ~6 digits by the far end).
[[nodiscard]] matrix restriction_recurrence(int m, double t_prev, double t_cur);

// One restriction matrix per partition interval. The `direct` flavor uses
// the two-stage product, `recurrence` the row recurrence, and the plain
// flavor picks direct for m <= 10 and the recurrence above that.
[[nodiscard]] std::vector<matrix> interval_matrices_direct(int m, std::span<const double> partition);
[[nodiscard]] std::vector<matrix> interval_matrices_recurrence(int m,
                                                               std::span<const double> partition);
[[nodiscard]] std::vector<matrix> interval_matrices(int m, std::span<const double> partition);

} // namespace bm::subdivision

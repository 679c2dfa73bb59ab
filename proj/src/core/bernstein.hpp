// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "core/matrix.hpp"

namespace bm::bernstein {

// Degree cap for the binomial-backed operations (binomial, gramian,
// forward_difference): coefficients come from a precomputed Pascal table up
// to this row, past which C(n, k) overflows the range where these formulas
// keep full accuracy. Basis evaluation uses a product-free recurrence and is
// not subject to the cap.
inline constexpr int max_degree = 60;

// C(n, k); throws errc::numeric_failure for n > max_degree and
// errc::invalid_argument for negative arguments. C(n, k) = 0 for k > n.
[[nodiscard]] double binomial(int n, int k);

// All m+1 Bernstein basis values B_{i,m}(t), i = 0..m, by the standard
// in-place recurrence. t may lie outside [0, 1]; values still follow the
// polynomial definition.
[[nodiscard]] std::vector<double> basis(int m, double t);

// j-th forward difference of the leading values of q: sum_{h}(-1)^{j-h} C(j,h) q[h].
[[nodiscard]] double forward_difference(std::span<const double> q, int j);

// Same, anchored at offset i: j-th difference of q[i], q[i+1], ....
[[nodiscard]] double forward_difference(std::span<const double> q, int i, int j);

// Inner-product matrix of the two Bernstein bases on [0, 1]:
// entry (i, j) = integral of B_{i,m}(t) B_{j,n}(t) dt
//             = C(m,i) C(n,j) / ((m+n+1) C(m+n, i+j)).
// Each entry is evaluated as an interleaved product of small fractions so no
// intermediate exceeds the largest binomial involved (plain C(m+n, i+j) can
// exceed 2^53 for m+n >= 57 and would poison every digit after it).
[[nodiscard]] matrix gramian(int m, int n);

} // namespace bm::bernstein

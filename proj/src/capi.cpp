// SPDX-License-Identifier: Apache-2.0
//
// C ABI wrapper over the core library: opaque handles, status codes, and a
// thread-local last-error message. No exception escapes any exported symbol.
#include "beziermerge.h"

#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "core/bezier.hpp"
#include "core/errors.hpp"
#include "core/merge.hpp"

namespace {

thread_local std::string g_last_error;

bm_status status_of(bm::errc code) {
    switch (code) {
    case bm::errc::invalid_argument: return BM_ERR_INVALID_ARGUMENT;
    case bm::errc::constraint_violation: return BM_ERR_CONSTRAINT;
    case bm::errc::solver_failure: return BM_ERR_SOLVER;
    case bm::errc::numeric_failure: return BM_ERR_NUMERIC;
    }
    return BM_ERR_NUMERIC;
}

bm_status fail_status(bm_status status, const char* message) {
    g_last_error = message;
    return status;
}

template <typename F>
bm_status guarded(F&& body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const bm::error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return BM_ERR_NUMERIC;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return BM_ERR_NUMERIC;
    }
}

} // namespace

struct bm_curve {
    int dimension = 0;
    std::vector<bm::segment> segments;
    std::optional<std::vector<double>> partition;
    mutable std::optional<bm::composite_curve> built; // cache, reset on mutation

    const bm::composite_curve& assembled() const {
        if (segments.empty())
            bm::fail(bm::errc::constraint_violation, "curve has no segments");
        if (!partition)
            bm::fail(bm::errc::constraint_violation,
                     "curve has no partition: set one or compute the arc-length partition");
        if (!built) built.emplace(segments, *partition);
        return *built;
    }
};

struct bm_options {
    bm::merge::options value;
};

struct bm_result {
    bm::merge::result value;
    int dimension = 0;
};

extern "C" {

const char* bm_version(void) { return "1.0.0"; }

const char* bm_last_error(void) { return g_last_error.c_str(); }

bm_status bm_curve_create(int dimension, bm_curve** out) {
    return guarded([&]() -> bm_status {
        if (!out) return fail_status(BM_ERR_INVALID_ARGUMENT, "null output handle");
        *out = nullptr;
        if (dimension < 1)
            return fail_status(BM_ERR_INVALID_ARGUMENT, "dimension must be at least 1");
        *out = new bm_curve{};
        (*out)->dimension = dimension;
        return BM_OK;
    });
}

void bm_curve_destroy(bm_curve* curve) { delete curve; }

bm_status bm_curve_add_segment(bm_curve* curve, int degree, const double* points) {
    return guarded([&]() -> bm_status {
        if (!curve || !points) return fail_status(BM_ERR_INVALID_ARGUMENT, "null argument");
        if (degree < 1)
            return fail_status(BM_ERR_INVALID_ARGUMENT, "segment degree must be at least 1");
        bm::matrix pts(degree + 1, curve->dimension);
        for (int r = 0; r <= degree; ++r)
            for (int c = 0; c < curve->dimension; ++c)
                pts(r, c) = points[static_cast<size_t>(r) * curve->dimension + c];
        curve->segments.emplace_back(std::move(pts));
        curve->built.reset();
        return BM_OK;
    });
}

bm_status bm_curve_set_partition(bm_curve* curve, const double* knots, int count) {
    return guarded([&]() -> bm_status {
        if (!curve || !knots) return fail_status(BM_ERR_INVALID_ARGUMENT, "null argument");
        if (count != static_cast<int>(curve->segments.size()) + 1)
            return fail_status(BM_ERR_INVALID_ARGUMENT,
                               "partition must hold segment count + 1 knots");
        std::vector<double> p(knots, knots + count);
        // Validate through assembly so the error text matches the library's.
        bm::composite_curve probe(curve->segments, p);
        curve->partition = std::move(p);
        curve->built.reset();
        return BM_OK;
    });
}

bm_status bm_curve_arc_length_partition(bm_curve* curve) {
    return guarded([&]() -> bm_status {
        if (!curve) return fail_status(BM_ERR_INVALID_ARGUMENT, "null curve");
        if (curve->segments.empty())
            return fail_status(BM_ERR_CONSTRAINT, "curve has no segments");
        curve->partition = bm::arc_length_partition(curve->segments);
        curve->built.reset();
        return BM_OK;
    });
}

int bm_curve_dimension(const bm_curve* curve) { return curve ? curve->dimension : -1; }

int bm_curve_segment_count(const bm_curve* curve) {
    return curve ? static_cast<int>(curve->segments.size()) : -1;
}

int bm_curve_segment_degree(const bm_curve* curve, int index) {
    if (!curve || index < 0 || index >= static_cast<int>(curve->segments.size())) return -1;
    return curve->segments[static_cast<size_t>(index)].degree();
}

bm_status bm_curve_get_segment_points(const bm_curve* curve, int index, double* out) {
    return guarded([&]() -> bm_status {
        if (!curve || !out) return fail_status(BM_ERR_INVALID_ARGUMENT, "null argument");
        if (index < 0 || index >= static_cast<int>(curve->segments.size()))
            return fail_status(BM_ERR_INVALID_ARGUMENT, "segment index out of range");
        const bm::matrix& pts = curve->segments[static_cast<size_t>(index)].points();
        for (int r = 0; r < pts.rows(); ++r)
            for (int c = 0; c < pts.cols(); ++c)
                out[static_cast<size_t>(r) * pts.cols() + c] = pts(r, c);
        return BM_OK;
    });
}

int bm_curve_has_partition(const bm_curve* curve) {
    return curve && curve->partition ? 1 : 0;
}

bm_status bm_curve_get_partition(const bm_curve* curve, double* out) {
    return guarded([&]() -> bm_status {
        if (!curve || !out) return fail_status(BM_ERR_INVALID_ARGUMENT, "null argument");
        if (!curve->partition)
            return fail_status(BM_ERR_CONSTRAINT, "curve has no partition");
        for (size_t i = 0; i < curve->partition->size(); ++i) out[i] = (*curve->partition)[i];
        return BM_OK;
    });
}

bm_status bm_curve_evaluate(const bm_curve* curve, double t, double* point_out) {
    return guarded([&]() -> bm_status {
        if (!curve || !point_out) return fail_status(BM_ERR_INVALID_ARGUMENT, "null argument");
        const std::vector<double> p = curve->assembled().evaluate(t);
        for (size_t h = 0; h < p.size(); ++h) point_out[h] = p[h];
        return BM_OK;
    });
}

int bm_curve_warning_count(const bm_curve* curve) {
    if (!curve || curve->segments.empty() || !curve->partition) return 0;
    try {
        return static_cast<int>(curve->assembled().warnings().size());
    } catch (...) {
        return 0;
    }
}

const char* bm_curve_warning(const bm_curve* curve, int index) {
    if (!curve || index < 0 || index >= bm_curve_warning_count(curve)) return nullptr;
    return curve->assembled().warnings()[static_cast<size_t>(index)].c_str();
}

bm_status bm_options_create(bm_options** out) {
    return guarded([&]() -> bm_status {
        if (!out) return fail_status(BM_ERR_INVALID_ARGUMENT, "null output handle");
        *out = new bm_options{};
        return BM_OK;
    });
}

void bm_options_destroy(bm_options* options) { delete options; }

bm_status bm_options_set_degree(bm_options* options, int m) {
    return guarded([&]() -> bm_status {
        if (!options) return fail_status(BM_ERR_INVALID_ARGUMENT, "null options");
        if (m < 1) return fail_status(BM_ERR_INVALID_ARGUMENT, "degree must be at least 1");
        options->value.degree = m;
        return BM_OK;
    });
}

bm_status bm_options_set_continuity(bm_options* options, int k, int l) {
    return guarded([&]() -> bm_status {
        if (!options) return fail_status(BM_ERR_INVALID_ARGUMENT, "null options");
        if (k < 0 || l < 0)
            return fail_status(BM_ERR_INVALID_ARGUMENT, "continuity orders must be non-negative");
        options->value.left_order = k;
        options->value.right_order = l;
        return BM_OK;
    });
}

bm_status bm_options_set_box(bm_options* options, int dimension, const double* lower,
                             const double* upper) {
    return guarded([&]() -> bm_status {
        if (!options || !lower || !upper)
            return fail_status(BM_ERR_INVALID_ARGUMENT, "null argument");
        if (dimension < 1)
            return fail_status(BM_ERR_INVALID_ARGUMENT, "box dimension must be at least 1");
        bm::merge::box_bounds b;
        b.lower.assign(lower, lower + dimension);
        b.upper.assign(upper, upper + dimension);
        options->value.box = std::move(b);
        return BM_OK;
    });
}

bm_status bm_options_clear_box(bm_options* options) {
    return guarded([&]() -> bm_status {
        if (!options) return fail_status(BM_ERR_INVALID_ARGUMENT, "null options");
        options->value.box.reset();
        return BM_OK;
    });
}

bm_status bm_options_set_samples(bm_options* options, int samples) {
    return guarded([&]() -> bm_status {
        if (!options) return fail_status(BM_ERR_INVALID_ARGUMENT, "null options");
        if (samples < 1)
            return fail_status(BM_ERR_INVALID_ARGUMENT, "sample count must be at least 1");
        options->value.samples = samples;
        return BM_OK;
    });
}

bm_status bm_options_set_derivative_frame(bm_options* options, bm_derivative_frame frame) {
    return guarded([&]() -> bm_status {
        if (!options) return fail_status(BM_ERR_INVALID_ARGUMENT, "null options");
        switch (frame) {
        case BM_DERIVATIVES_SEGMENT_LOCAL:
            options->value.frame = bm::merge::derivative_frame::segment_local;
            return BM_OK;
        case BM_DERIVATIVES_GLOBAL_CURVE:
            options->value.frame = bm::merge::derivative_frame::global_curve;
            return BM_OK;
        }
        return fail_status(BM_ERR_INVALID_ARGUMENT, "unknown derivative frame");
    });
}

bm_status bm_merge(const bm_curve* curve, const bm_options* options, bm_result** out) {
    return guarded([&]() -> bm_status {
        if (!curve || !options || !out)
            return fail_status(BM_ERR_INVALID_ARGUMENT, "null argument");
        *out = nullptr;
        const bm::composite_curve& p = curve->assembled();
        bm::merge::result r = bm::merge::merge(p, options->value);
        *out = new bm_result{std::move(r), curve->dimension};
        return BM_OK;
    });
}

void bm_result_destroy(bm_result* result) { delete result; }

int bm_result_degree(const bm_result* result) {
    return result ? result->value.control_points.rows() - 1 : -1;
}

int bm_result_dimension(const bm_result* result) { return result ? result->dimension : -1; }

bm_status bm_result_get_control_points(const bm_result* result, double* out) {
    return guarded([&]() -> bm_status {
        if (!result || !out) return fail_status(BM_ERR_INVALID_ARGUMENT, "null argument");
        const bm::matrix& pts = result->value.control_points;
        for (int r = 0; r < pts.rows(); ++r)
            for (int c = 0; c < pts.cols(); ++c)
                out[static_cast<size_t>(r) * pts.cols() + c] = pts(r, c);
        return BM_OK;
    });
}

double bm_result_error_l2(const bm_result* result) { return result ? result->value.e2 : -1.0; }

double bm_result_error_max(const bm_result* result) { return result ? result->value.e_inf : -1.0; }

double bm_result_kkt_residual(const bm_result* result) {
    return result ? result->value.kkt_residual : -1.0;
}

bm_status bm_result_iterations(const bm_result* result, int* out) {
    return guarded([&]() -> bm_status {
        if (!result || !out) return fail_status(BM_ERR_INVALID_ARGUMENT, "null argument");
        for (size_t h = 0; h < result->value.iterations.size(); ++h)
            out[h] = result->value.iterations[h];
        return BM_OK;
    });
}

int bm_result_active_count(const bm_result* result, int coordinate, int upper_side) {
    if (!result || coordinate < 0 || coordinate >= result->dimension) return -1;
    const auto& sets = upper_side ? result->value.active_upper : result->value.active_lower;
    return static_cast<int>(sets[static_cast<size_t>(coordinate)].size());
}

bm_status bm_result_active_indices(const bm_result* result, int coordinate, int upper_side,
                                   int* out) {
    return guarded([&]() -> bm_status {
        if (!result || !out) return fail_status(BM_ERR_INVALID_ARGUMENT, "null argument");
        if (coordinate < 0 || coordinate >= result->dimension)
            return fail_status(BM_ERR_INVALID_ARGUMENT, "coordinate out of range");
        const auto& sets = upper_side ? result->value.active_upper : result->value.active_lower;
        const auto& ids = sets[static_cast<size_t>(coordinate)];
        for (size_t i = 0; i < ids.size(); ++i) out[i] = ids[i];
        return BM_OK;
    });
}

int bm_result_warning_count(const bm_result* result) {
    return result ? static_cast<int>(result->value.warnings.size()) : 0;
}

const char* bm_result_warning(const bm_result* result, int index) {
    if (!result || index < 0 || index >= bm_result_warning_count(result)) return nullptr;
    return result->value.warnings[static_cast<size_t>(index)].c_str();
}

bm_status bm_result_evaluate(const bm_result* result, double t, double* point_out) {
    return guarded([&]() -> bm_status {
        if (!result || !point_out) return fail_status(BM_ERR_INVALID_ARGUMENT, "null argument");
        if (!(t >= 0.0 && t <= 1.0))
            return fail_status(BM_ERR_INVALID_ARGUMENT, "curve parameter must lie in [0, 1]");
        const bm::segment merged(result->value.control_points);
        const std::vector<double> p = bm::evaluate(merged, t);
        for (size_t h = 0; h < p.size(); ++h) point_out[h] = p[h];
        return BM_OK;
    });
}

bm_status bm_suggest_box(const bm_curve* curve, double* lower_out, double* upper_out) {
    return guarded([&]() -> bm_status {
        if (!curve || !lower_out || !upper_out)
            return fail_status(BM_ERR_INVALID_ARGUMENT, "null argument");
        const bm::merge::box_bounds b = bm::merge::suggest_box(curve->assembled());
        for (size_t h = 0; h < b.lower.size(); ++h) {
            lower_out[h] = b.lower[h];
            upper_out[h] = b.upper[h];
        }
        return BM_OK;
    });
}

bm_status bm_expand_box(const bm_curve* curve, const double* lower, const double* upper,
                        double step, const int* faces, int face_count,
                        const bm_options* options_or_null, double* lower_out, double* upper_out) {
    return guarded([&]() -> bm_status {
        if (!curve || !lower || !upper || !lower_out || !upper_out)
            return fail_status(BM_ERR_INVALID_ARGUMENT, "null argument");
        if (!faces && face_count != 0)
            return fail_status(BM_ERR_INVALID_ARGUMENT, "face_count without a face array");
        const bm::composite_curve& p = curve->assembled();
        bm::merge::box_bounds previous;
        previous.lower.assign(lower, lower + curve->dimension);
        previous.upper.assign(upper, upper + curve->dimension);

        bm::merge::box_bounds next;
        if (faces) {
            std::vector<bm::merge::face> list;
            list.reserve(static_cast<size_t>(face_count));
            for (int i = 0; i < face_count; ++i) {
                const int code = faces[i];
                if (code < 0 || code >= 2 * curve->dimension)
                    return fail_status(BM_ERR_INVALID_ARGUMENT, "face code out of range");
                list.push_back({code / 2, (code % 2) != 0});
            }
            next = bm::merge::suggest_box(p, step, previous, list);
        } else if (options_or_null) {
            next = bm::merge::suggest_box(p, step, previous, options_or_null->value);
        } else {
            return fail_status(BM_ERR_INVALID_ARGUMENT,
                               "either a face list or options for automatic selection required");
        }
        for (size_t h = 0; h < next.lower.size(); ++h) {
            lower_out[h] = next.lower[h];
            upper_out[h] = next.upper[h];
        }
        return BM_OK;
    });
}

} // extern "C"

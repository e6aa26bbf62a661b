#include "gbi/frames.hpp"

#include <cmath>
#include <string>

#include "gbi/errors.hpp"

namespace gbi {

namespace {

// v_{d,0} = (1, 0, ..., 0); v_{d,i} = (-1/(d-1), sqrt(1 - (1/(d-1))^2) * v_{d-1,i-1}).
std::vector<double> recursive_frame(int d) {
    const int dim = d - 1;
    std::vector<double> v(static_cast<std::size_t>(d) * dim, 0.0);
    if (d == 2) {
        v[0] = 1.0;
        v[1] = -1.0;
        return v;
    }
    std::vector<double> prev = recursive_frame(d - 1);
    const double c = -1.0 / (d - 1);
    const double s = std::sqrt(1.0 - c * c);
    v[0] = 1.0;
    for (int i = 1; i < d; ++i) {
        double* row = v.data() + static_cast<std::size_t>(i) * dim;
        row[0] = c;
        const double* prow = prev.data() + static_cast<std::size_t>(i - 1) * (dim - 1);
        for (int j = 0; j < dim - 1; ++j) row[j + 1] = s * prow[j];
    }
    return v;
}

// The +-1 cube-diagonal frame for d=4, divided by sqrt(3).
std::vector<double> eq17_frame() {
    const double r = 1.0 / std::sqrt(3.0);
    return {r,  r,  r,
            r,  -r, -r,
            -r, r,  -r,
            -r, -r, r};
}

} // namespace

OutcomeFrame::OutcomeFrame(int d, FrameKind kind) : d_(d), dim_(d > 2 ? d - 1 : 1), kind_(kind) {
    if (d < 2) throw invalid_argument_error("outcome frame: dimension must be >= 2, got " + std::to_string(d));
    if (kind == FrameKind::Eq17) {
        if (d != 4) throw invalid_argument_error("the cube-diagonal frame variant exists only for d=4");
        data_ = eq17_frame();
    } else {
        data_ = recursive_frame(d);
    }
    dim_ = d - 1;
}

OutcomeFrame outcome_frame(int d, FrameKind kind) { return OutcomeFrame(d, kind); }

std::vector<double> frame_change_map(const OutcomeFrame& from, const OutcomeFrame& to) {
    if (from.d() != to.d()) throw invalid_argument_error("frame_change_map: dimension mismatch");
    const int d = from.d();
    const int dim = from.dim();
    // Q = (d-1)/d * sum_m v_to(m) v_from(m)^T, using the tight-frame identity
    // sum_m v v^T = d/(d-1) * I.
    std::vector<double> q(static_cast<std::size_t>(dim) * dim, 0.0);
    const double scale = static_cast<double>(d - 1) / d;
    for (int m = 0; m < d; ++m) {
        const double* a = to.vec(m);
        const double* b = from.vec(m);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) q[static_cast<std::size_t>(i) * dim + j] += scale * a[i] * b[j];
    }
    return q;
}

} // namespace gbi

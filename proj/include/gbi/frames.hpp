#pragma once

#include <cstddef>
#include <vector>

namespace gbi {

// Which set of outcome vectors to use.  The recursive construction exists for
// every d; the cube-diagonal variant is the alternative d=4 frame (the two
// differ by an orthogonal map, so every overlap integral agrees).
enum class FrameKind { Recursive, Eq17 };

// The d unit vectors in R^{d-1} assigned to measurement results: vertices of a
// regular simplex.  Pairwise dot products are -1/(d-1) and the vectors sum to
// zero.
class OutcomeFrame {
  public:
    OutcomeFrame(int d, FrameKind kind = FrameKind::Recursive);

    int d() const { return d_; }
    int dim() const { return dim_; }
    FrameKind kind() const { return kind_; }

    const double* vec(int m) const { return data_.data() + static_cast<std::size_t>(m) * dim_; }
    double component(int m, int i) const { return data_[static_cast<std::size_t>(m) * dim_ + i]; }

    double dot(int m, const double* u) const {
        const double* v = vec(m);
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) s += v[i] * u[i];
        return s;
    }

  private:
    int d_;
    int dim_;
    FrameKind kind_;
    std::vector<double> data_; // row-major, d rows of dim_ components
};

OutcomeFrame outcome_frame(int d, FrameKind kind = FrameKind::Recursive);

// Orthogonal map Q with Q * v_rec(m) = v_other(m) for all m; (d-1)x(d-1),
// row-major.  Exists because both frames are tight simplex frames.
std::vector<double> frame_change_map(const OutcomeFrame& from, const OutcomeFrame& to);

} // namespace gbi

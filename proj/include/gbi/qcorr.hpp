#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "gbi/frames.hpp"

namespace gbi {

// One observer's local measurement: d-1 phases, each taken modulo 1.
using SettingVector = std::vector<double>;

// Component-wise sum of all observers' settings, modulo 1.
using PhaseSum = std::vector<double>;

// d-dimensional subsystems, N observers.
struct Scenario {
    int d = 2;
    int n = 1;
    std::uint64_t oracle_cap = 1u << 20; // largest d^N the dense oracle will build

    Scenario() = default;
    Scenario(int d_, int n_);
};

// Reduce every component into [0, 1).
void reduce_mod1(double* x, int count);
PhaseSum settings_sum(const std::vector<SettingVector>& settings, int dim);

// Evaluation kernel for the reduced correlation function.  Holds the outcome
// frame, the d-th roots of unity, and scratch buffers so per-sample work in
// the Monte Carlo loop is allocation-free.  Not thread-safe; make one per
// thread.
class CorrEvaluator {
  public:
    explicit CorrEvaluator(int d, FrameKind kind = FrameKind::Recursive);

    int d() const { return d_; }
    int dim() const { return dim_; }
    const OutcomeFrame& frame() const { return frame_; }

    // P(sum of results = m mod d | phase sum x), for all m.  x has dim() entries.
    void outcome_probs(const double* x, double* p) const;

    // E_d(x) = sum_m v_m P(m | x), written into e (dim() entries).
    void corr(const double* x, double* e) const;

    // argmax_m P(m | y) == argmax_m dot(v_m, E(y)); ties to the smallest m.
    int greedy(const double* y) const;

  private:
    int d_;
    int dim_;
    OutcomeFrame frame_;
    std::vector<double> wcos_, wsin_;          // omega_d^k, k = 0..d-1
    mutable std::vector<double> ec_, es_, p_;  // scratch: e^{-2pi i x_i}, probabilities
};

// P(sum of local results = m mod d).  x is the observers' phase sum.
double prob_outcome(const Scenario& sc, const PhaseSum& x, int m);

// Reduced correlation function E_d(x).
std::vector<double> corr_reduced(int d, const PhaseSum& x, FrameKind kind = FrameKind::Recursive);

// Dense state-vector oracle: builds |GHZ_{d,N}>, contracts the N projective
// measurements, bins joint probabilities by result sum.  Must agree with
// corr_reduced applied to the settings sum.
std::vector<double> corr_oracle(const Scenario& sc, const std::vector<SettingVector>& settings,
                                FrameKind kind = FrameKind::Recursive);

// d=3 outcome vectors as complex numbers:
// (1/3)(e^{-2pi i x1} + e^{2pi i (x1-x2)} + e^{2pi i x2}).
std::complex<double> corr_complex3(const PhaseSum& x);

} // namespace gbi

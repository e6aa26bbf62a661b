#pragma once

#include <string>
#include <vector>

#include "gbi/estimator.hpp"

namespace gbi {

// Quantum-to-classical ratio: (E.E)/(C.E) = (1/d)/L.
double qcr(int d, double overlap_L);

struct QcrRecord {
    Scenario scenario;
    double L = 0.0;
    double L_stderr = 0.0;
    double qcr = 0.0;
    double log_qcr = 0.0;
};

QcrRecord make_qcr_record(const MCEstimate& est);

enum class FitModel { TwoParam, OneParam }; // 1/L = a^N * b   or   1/L = a^N

struct FitPoint {
    int n = 0;
    double L = 0.0;
    double weight = 1.0; // proportional to the Monte Carlo point count
};

struct ScalingFit {
    int d = 0;
    FitModel model = FitModel::TwoParam;
    double a = 0.0;
    double b = 1.0;
    double residual = 0.0; // weighted RMS residual of ln(1/L)
};

// Weighted least squares of ln(1/L) against N.  Two-parameter model fits
// slope ln a and intercept ln b; the one-parameter model forces ln b = 0.
ScalingFit fit_scaling(int d, const std::vector<FitPoint>& points, FitModel model);

// One N-row of the subadditivity report for (d1, d2) vs d1*d2.
struct SubadditivityRow {
    int n = 0;
    double delta = 0.0;      // log QCR(d1,N) + log QCR(d2,N) - log QCR(d1*d2,N)
    double sigma = 0.0;      // propagated Monte Carlo uncertainty
    bool subadditive = false; // delta > 0 at 3 sigma
};

struct LEstimate {
    double L = 0.0;
    double stderr_ = 0.0;
};

// Inputs per N: L estimates for d1, d2 and d1*d2.  When d1 == d2 the caller
// passes the same estimate twice and the doubled term propagates with
// coefficient 2 (fully correlated).
SubadditivityRow subadditivity_row(int d1, int d2, int n, const LEstimate& e1,
                                   const LEstimate& e2, const LEstimate& e12);

std::vector<SubadditivityRow> subadditivity_report(int d1, int d2, const std::vector<int>& n_values,
                                                   const std::vector<LEstimate>& est1,
                                                   const std::vector<LEstimate>& est2,
                                                   const std::vector<LEstimate>& est12);

} // namespace gbi

#include "gbi/scaling.hpp"

#include <cmath>
#include <string>

#include "gbi/errors.hpp"

namespace gbi {

double qcr(int d, double overlap_L) {
    if (overlap_L <= 0.0)
        throw invalid_argument_error("qcr: overlap must be positive, got " + std::to_string(overlap_L));
    return (1.0 / d) / overlap_L;
}

QcrRecord make_qcr_record(const MCEstimate& est) {
    QcrRecord r;
    r.scenario = est.scenario;
    r.L = est.mean;
    r.L_stderr = est.stderr_;
    r.qcr = qcr(est.scenario.d, est.mean);
    r.log_qcr = std::log(r.qcr);
    return r;
}

ScalingFit fit_scaling(int d, const std::vector<FitPoint>& points, FitModel model) {
    if (points.size() < 2) throw invalid_argument_error("fit_scaling: need at least 2 points");
    // Weighted least squares of y = ln(1/L) against N.
    double sw = 0, swn = 0, swnn = 0, swy = 0, swny = 0;
    for (const auto& p : points) {
        if (p.L <= 0.0) throw invalid_argument_error("fit_scaling: overlaps must be positive");
        const double y = std::log(1.0 / p.L);
        sw += p.weight;
        swn += p.weight * p.n;
        swnn += p.weight * p.n * p.n;
        swy += p.weight * y;
        swny += p.weight * p.n * y;
    }
    ScalingFit fit;
    fit.d = d;
    fit.model = model;
    double slope, intercept;
    if (model == FitModel::OneParam) {
        slope = swny / swnn;
        intercept = 0.0;
    } else {
        const double det = sw * swnn - swn * swn;
        if (std::abs(det) < 1e-300) throw numerical_error("fit_scaling: degenerate design (all N equal?)");
        slope = (sw * swny - swn * swy) / det;
        intercept = (swnn * swy - swn * swny) / det;
    }
    fit.a = std::exp(slope);
    fit.b = std::exp(intercept);
    double ss = 0.0;
    for (const auto& p : points) {
        const double r = std::log(1.0 / p.L) - (slope * p.n + intercept);
        ss += p.weight * r * r;
    }
    fit.residual = std::sqrt(ss / sw);
    return fit;
}

SubadditivityRow subadditivity_row(int d1, int d2, int n, const LEstimate& e1, const LEstimate& e2,
                                   const LEstimate& e12) {
    if (e1.L <= 0 || e2.L <= 0 || e12.L <= 0)
        throw invalid_argument_error("subadditivity_row: overlaps must be positive");
    SubadditivityRow row;
    row.n = n;
    const double lq1 = std::log(qcr(d1, e1.L));
    const double lq2 = std::log(qcr(d2, e2.L));
    const double lq12 = std::log(qcr(d1 * d2, e12.L));
    row.delta = lq1 + lq2 - lq12;
    // First-order propagation, delta(log QCR) = stderr/L.  Identical estimates
    // passed for both small factors are fully correlated, coefficient 2.
    const bool same = (d1 == d2 && e1.L == e2.L && e1.stderr_ == e2.stderr_);
    const double r1 = e1.stderr_ / e1.L;
    const double r2 = e2.stderr_ / e2.L;
    const double r12 = e12.stderr_ / e12.L;
    const double var = same ? 4.0 * r1 * r1 + r12 * r12 : r1 * r1 + r2 * r2 + r12 * r12;
    row.sigma = std::sqrt(var);
    row.subadditive = row.delta > 3.0 * row.sigma;
    return row;
}

std::vector<SubadditivityRow> subadditivity_report(int d1, int d2, const std::vector<int>& n_values,
                                                   const std::vector<LEstimate>& est1,
                                                   const std::vector<LEstimate>& est2,
                                                   const std::vector<LEstimate>& est12) {
    if (n_values.size() != est1.size() || n_values.size() != est2.size() ||
        n_values.size() != est12.size())
        throw invalid_argument_error("subadditivity_report: one estimate per N required for each dimension");
    std::vector<SubadditivityRow> rows;
    rows.reserve(n_values.size());
    for (std::size_t i = 0; i < n_values.size(); ++i)
        rows.push_back(subadditivity_row(d1, d2, n_values[i], est1[i], est2[i], est12[i]));
    return rows;
}

} // namespace gbi

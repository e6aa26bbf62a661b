#include "gbi/lrmodel.hpp"

#include <cmath>

#include "gbi/errors.hpp"

namespace gbi {

namespace {

// 32-point Gauss-Legendre rule on [-1, 1], nodes found by Newton iteration on
// P_32.  Plenty for trigonometric integrands over sub-period intervals.
struct GaussLegendre32 {
    static constexpr int n = 32;
    double node[n];
    double weight[n];

    GaussLegendre32() {
        constexpr double pi = 3.14159265358979323846;
        for (int i = 0; i < n / 2; ++i) {
            double x = std::cos(pi * (i + 0.75) / (n + 0.5)); // Chebyshev initial guess
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            node[i] = -x;
            node[n - 1 - i] = x;
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            weight[i] = w;
            weight[n - 1 - i] = w;
        }
    }
};

const GaussLegendre32& gl32() {
    static const GaussLegendre32 rule;
    return rule;
}

template <typename F>
void gl_integrate(double a, double b, F&& f) {
    const auto& rule = gl32();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < GaussLegendre32::n; ++i) f(mid + half * rule.node[i], rule.weight[i] * half);
}

void e3(double x1, double x2, double* out) {
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    // Complex form: (e^{-2pi i x1} + e^{2pi i (x1-x2)} + e^{2pi i x2}) / 3.
    const double a = kTwoPi * x1, b = kTwoPi * (x1 - x2), c = kTwoPi * x2;
    out[0] = (std::cos(a) + std::cos(b) + std::cos(c)) / 3.0;
    out[1] = (-std::sin(a) + std::sin(b) + std::sin(c)) / 3.0;
}

} // namespace

int greedy_label(int d, const SettingVector& y) {
    if (static_cast<int>(y.size()) != d - 1)
        throw invalid_argument_error("greedy_label: setting vector has wrong length");
    CorrEvaluator ev(d);
    return ev.greedy(y.data());
}

SettingVector label_shift(int d, int m) {
    SettingVector delta(d - 1);
    const int mm = ((m % d) + d) % d;
    for (int i = 1; i < d; ++i) delta[i - 1] = static_cast<double>((static_cast<long long>(d - mm) * i) % d) / d;
    return delta;
}

int region_label_qutrit(const SettingVector& y, const SettingVector& shifts) {
    if (y.size() != 2 || shifts.size() != 2)
        throw invalid_argument_error("region_label_qutrit: expected 2 phases and 2 shifts");
    // Band conditions, reduced to integers so the three regions tile exactly:
    // with I = floor(3 y1), J = floor(3 y2) and K the diagonal cell index,
    // region m <=> I in {2m-1, 2m}, J in {m-1, m}, K in {m-1, m}  (all mod 3).
    double y1 = y[0] - shifts[0];
    double y2 = y[1] - shifts[1];
    y1 -= std::floor(y1);
    y2 -= std::floor(y2);
    const double t1 = 3.0 * y1;
    const double t2 = 3.0 * y2;
    int I = static_cast<int>(t1);
    int J = static_cast<int>(t2);
    if (I > 2) I = 2;
    if (J > 2) J = 2;
    const double f1 = t1 - I;
    const double f2 = t2 - J;
    const int K = ((I - J - (f1 >= f2 ? 0 : 1)) % 3 + 3) % 3;
    int label = -1;
    for (int m = 0; m < 3; ++m) {
        const int c1 = ((I - 2 * m) % 3 + 3) % 3;
        const int c2 = ((J - m) % 3 + 3) % 3;
        const int c3 = ((K - m) % 3 + 3) % 3;
        if ((c1 == 0 || c1 == 2) && (c2 == 0 || c2 == 2) && (c3 == 0 || c3 == 2)) {
            if (label >= 0) throw numerical_error("region_label_qutrit: point matched two regions");
            label = m;
        }
    }
    if (label < 0) throw numerical_error("region_label_qutrit: no region matched");
    return label;
}

std::vector<double> classical_corr(const Scenario& sc, const std::vector<SettingVector>& settings,
                                   FrameKind kind) {
    if (static_cast<int>(settings.size()) != sc.n)
        throw invalid_argument_error("classical_corr: expected one setting vector per observer");
    CorrEvaluator ev(sc.d);
    int sum = 0;
    for (const auto& s : settings) {
        if (static_cast<int>(s.size()) != sc.d - 1)
            throw invalid_argument_error("classical_corr: setting vector has wrong length");
        sum += ev.greedy(s.data());
    }
    OutcomeFrame fr(sc.d, kind);
    const double* v = fr.vec(sum % sc.d);
    return std::vector<double>(v, v + sc.d - 1);
}

std::array<double, 2> contraction_integral(const PhaseSum& x, ContractionWeight weight) {
    if (x.size() != 2) throw invalid_argument_error("contraction_integral: defined only for d=3");
    std::array<double, 2> total{0.0, 0.0};
    double e[2];
    if (weight == ContractionWeight::FullTorus) {
        gl_integrate(0.0, 1.0, [&](double y1, double w1) {
            gl_integrate(0.0, 1.0, [&](double y2, double w2) {
                e3(x[0] + y1, x[1] + y2, e);
                total[0] += w1 * w2 * e[0];
                total[1] += w1 * w2 * e[1];
            });
        });
        return total;
    }
    // Region 0 = {y1 in [-1/3,1/3), y2 in [-1/3,1/3), y1-y2 in [-1/3,1/3)},
    // split at y1 = 0 into two pieces with smooth y2-limits.
    constexpr double third = 1.0 / 3.0;
    auto piece = [&](double a, double b, auto lo, auto hi) {
        gl_integrate(a, b, [&](double y1, double w1) {
            gl_integrate(lo(y1), hi(y1), [&](double y2, double w2) {
                e3(x[0] + y1, x[1] + y2, e);
                total[0] += w1 * w2 * e[0];
                total[1] += w1 * w2 * e[1];
            });
        });
    };
    piece(-third, 0.0, [&](double) { return -third; }, [&](double y1) { return y1 + third; });
    piece(0.0, third, [&](double y1) { return y1 - third; }, [&](double) { return third; });
    return total;
}

double contraction_check(const PhaseSum& x) {
    double e[2];
    e3(x[0], x[1], e);
    const double ee = e[0] * e[0] + e[1] * e[1];
    if (ee < 1e-12) // |E| < 1e-6
        throw numerical_error("contraction_check: |E_3(x)| below 1e-6, pick another direction");
    const std::array<double, 2> integral = contraction_integral(x, ContractionWeight::Region0);
    return (integral[0] * e[0] + integral[1] * e[1]) / ee;
}

} // namespace gbi

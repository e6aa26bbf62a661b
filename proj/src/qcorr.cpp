#include "gbi/qcorr.hpp"

#include <cmath>
#include <string>

#include "gbi/errors.hpp"

namespace gbi {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// d^n with overflow saturation.
std::uint64_t upow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > (~0ull) / base) return ~0ull;
        r *= base;
    }
    return r;
}
} // namespace

Scenario::Scenario(int d_, int n_) : d(d_), n(n_) {
    if (d < 2) throw invalid_argument_error("scenario: d must be >= 2, got " + std::to_string(d));
    if (n < 1) throw invalid_argument_error("scenario: N must be >= 1, got " + std::to_string(n));
}

void reduce_mod1(double* x, int count) {
    for (int i = 0; i < count; ++i) x[i] -= std::floor(x[i]);
}

PhaseSum settings_sum(const std::vector<SettingVector>& settings, int dim) {
    PhaseSum x(dim, 0.0);
    for (const auto& s : settings) {
        if (static_cast<int>(s.size()) != dim)
            throw invalid_argument_error("settings_sum: setting vector has wrong length");
        for (int i = 0; i < dim; ++i) x[i] += s[i];
    }
    reduce_mod1(x.data(), dim);
    return x;
}

CorrEvaluator::CorrEvaluator(int d, FrameKind kind)
    : d_(d), dim_(d - 1), frame_(d, kind), wcos_(d), wsin_(d), ec_(d), es_(d), p_(d) {
    for (int k = 0; k < d; ++k) {
        wcos_[k] = std::cos(kTwoPi * k / d);
        wsin_[k] = std::sin(kTwoPi * k / d);
    }
}

void CorrEvaluator::outcome_probs(const double* x, double* p) const {
    // z_m = sum_i omega^{-i m} e^{-2 pi i x_i},  x_0 = 0; P(m) = |z_m|^2 / d^2.
    ec_[0] = 1.0;
    es_[0] = 0.0;
    for (int i = 1; i < d_; ++i) {
        const double a = -kTwoPi * x[i - 1];
        ec_[i] = std::cos(a);
        es_[i] = std::sin(a);
    }
    const double inv_d2 = 1.0 / (static_cast<double>(d_) * d_);
    for (int m = 0; m < d_; ++m) {
        double zr = 0.0, zi = 0.0;
        int idx = 0; // (i*m) mod d, advanced incrementally
        for (int i = 0; i < d_; ++i) {
            // omega^{-im} = cos - i sin at table index (i*m) mod d
            const double c = wcos_[idx];
            const double s = wsin_[idx];
            zr += c * ec_[i] + s * es_[i];
            zi += c * es_[i] - s * ec_[i];
            idx += m;
            if (idx >= d_) idx -= d_;
        }
        p[m] = (zr * zr + zi * zi) * inv_d2;
    }
}

void CorrEvaluator::corr(const double* x, double* e) const {
    outcome_probs(x, p_.data());
    for (int i = 0; i < dim_; ++i) e[i] = 0.0;
    for (int m = 0; m < d_; ++m) {
        const double* v = frame_.vec(m);
        const double pm = p_[m];
        for (int i = 0; i < dim_; ++i) e[i] += pm * v[i];
    }
}

int CorrEvaluator::greedy(const double* y) const {
    // dot(v_m, E) is affine increasing in P(m) for simplex frames, so the
    // nearest outcome vector is the most likely outcome.
    outcome_probs(y, p_.data());
    int best = 0;
    double bp = p_[0];
    for (int m = 1; m < d_; ++m) {
        if (p_[m] > bp) {
            bp = p_[m];
            best = m;
        }
    }
    return best;
}

double prob_outcome(const Scenario& sc, const PhaseSum& x, int m) {
    if (m < 0 || m >= sc.d) throw invalid_argument_error("prob_outcome: m must lie in 0..d-1");
    if (static_cast<int>(x.size()) != sc.d - 1)
        throw invalid_argument_error("prob_outcome: phase sum has wrong length");
    CorrEvaluator ev(sc.d);
    std::vector<double> p(sc.d);
    ev.outcome_probs(x.data(), p.data());
    return p[m];
}

std::vector<double> corr_reduced(int d, const PhaseSum& x, FrameKind kind) {
    if (static_cast<int>(x.size()) != d - 1)
        throw invalid_argument_error("corr_reduced: phase sum has wrong length");
    CorrEvaluator ev(d, kind);
    std::vector<double> e(d - 1);
    ev.corr(x.data(), e.data());
    return e;
}

std::vector<double> corr_oracle(const Scenario& sc, const std::vector<SettingVector>& settings,
                                FrameKind kind) {
    const int d = sc.d;
    const int n = sc.n;
    if (static_cast<int>(settings.size()) != n)
        throw invalid_argument_error("corr_oracle: expected one setting vector per observer");
    const std::uint64_t states = upow(static_cast<std::uint64_t>(d), n);
    if (states > sc.oracle_cap)
        throw resource_limit_error("corr_oracle: d^N = " + std::to_string(states) +
                                   " exceeds the oracle cap " + std::to_string(sc.oracle_cap));

    using Cx = std::complex<double>;
    // |GHZ> amplitudes as a flat tensor over the N physical indices.
    std::vector<Cx> amp(states, Cx(0.0, 0.0));
    {
        const double a = 1.0 / std::sqrt(static_cast<double>(d));
        std::uint64_t unit = 0; // index of |i,i,...,i> = i * (d^{N-1} + ... + 1)
        for (int k = 0; k < n; ++k) unit = unit * d + 1;
        for (int i = 0; i < d; ++i) amp[static_cast<std::uint64_t>(i) * unit] = Cx(a, 0.0);
    }

    // Measurement eigenstates of observer k at settings a: component i of
    // |psi_j> is omega^{ij} e^{2 pi i a_i} / sqrt(d), a_0 = 0.
    auto eigenstate = [d](const SettingVector& a, int j, std::vector<Cx>& out) {
        const double norm = 1.0 / std::sqrt(static_cast<double>(d));
        for (int i = 0; i < d; ++i) {
            const double phase = kTwoPi * (static_cast<double>(i) * j / d + (i > 0 ? a[i - 1] : 0.0));
            out[i] = Cx(std::cos(phase), std::sin(phase)) * norm;
        }
    };

    // Contract one party at a time: amp holds (outcomes so far) x (remaining
    // physical indices); party k turns its physical index into an outcome index.
    std::vector<Cx> psi(d);
    std::vector<Cx> next;
    for (int k = 0; k < n; ++k) {
        if (static_cast<int>(settings[k].size()) != d - 1)
            throw invalid_argument_error("corr_oracle: setting vector has wrong length");
        const std::uint64_t outcomes = upow(static_cast<std::uint64_t>(d), k);
        const std::uint64_t rest = upow(static_cast<std::uint64_t>(d), n - k - 1);
        next.assign(states, Cx(0.0, 0.0));
        for (int j = 0; j < d; ++j) {
            eigenstate(settings[k], j, psi);
            for (std::uint64_t o = 0; o < outcomes; ++o) {
                const Cx* src = amp.data() + o * (rest * d);
                Cx* dst = next.data() + (o * d + j) * rest;
                for (std::uint64_t r = 0; r < rest; ++r) {
                    Cx acc(0.0, 0.0);
                    for (int s = 0; s < d; ++s) acc += std::conj(psi[s]) * src[s * rest + r];
                    dst[r] = acc;
                }
            }
        }
        amp.swap(next);
    }

    // Bin joint probabilities by result sum mod d.
    std::vector<double> pm(d, 0.0);
    for (std::uint64_t idx = 0; idx < states; ++idx) {
        std::uint64_t t = idx;
        int sum = 0;
        for (int k = 0; k < n; ++k) {
            sum += static_cast<int>(t % d);
            t /= d;
        }
        pm[sum % d] += std::norm(amp[idx]);
    }

    OutcomeFrame fr(d, kind);
    std::vector<double> e(d - 1, 0.0);
    for (int m = 0; m < d; ++m)
        for (int i = 0; i < d - 1; ++i) e[i] += pm[m] * fr.component(m, i);
    return e;
}

std::complex<double> corr_complex3(const PhaseSum& x) {
    if (x.size() != 2) throw invalid_argument_error("corr_complex3: defined only for d=3");
    const std::complex<double> i2pi(0.0, kTwoPi);
    return (std::exp(-i2pi * x[0]) + std::exp(i2pi * (x[0] - x[1])) + std::exp(i2pi * x[1])) / 3.0;
}

} // namespace gbi

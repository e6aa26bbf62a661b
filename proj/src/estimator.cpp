#include "gbi/estimator.hpp"

#include <cmath>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gbi/errors.hpp"
#include "gbi/rng.hpp"

namespace gbi {

namespace {

constexpr long long kBlock = 16384; // samples per reduction block

// One sample of the overlap integrand: draw N settings, take
// dot(E_d(sum), v_{sum of greedy labels}).  All randomness is addressed by
// the flat sample index, so any partition over workers gives the same stream.
struct OverlapKernel {
    const Scenario sc;
    CorrEvaluator ev;
    std::vector<double> setting;   // d-1 scratch
    std::vector<double> sum;       // d-1 scratch
    std::vector<double> corr;      // d-1 scratch

    OverlapKernel(const Scenario& s, FrameKind kind)
        : sc(s), ev(s.d, kind), setting(s.d - 1), sum(s.d - 1), corr(s.d - 1) {}

    double operator()(std::uint64_t seed, std::uint64_t sample) {
        const int dim = sc.d - 1;
        const std::uint64_t base = sample * static_cast<std::uint64_t>(sc.n) * dim;
        for (int i = 0; i < dim; ++i) sum[i] = 0.0;
        int label = 0;
        for (int k = 0; k < sc.n; ++k) {
            for (int i = 0; i < dim; ++i) {
                const double u = counter_uniform(seed, base + static_cast<std::uint64_t>(k) * dim + i);
                setting[i] = u;
                sum[i] += u;
            }
            label += ev.greedy(setting.data());
        }
        for (int i = 0; i < dim; ++i) sum[i] -= std::floor(sum[i]);
        ev.corr(sum.data(), corr.data());
        return ev.frame().dot(label % sc.d, corr.data());
    }
};

// Per-block partial sums; blocks are internally serial, the final reduction
// is serial and ordered, so the mean is bit-identical for any thread count.
void accumulate_block(OverlapKernel& kernel, std::uint64_t seed, long long begin, long long end,
                      double& out_sum, double& out_sumsq) {
    double s = 0.0, s2 = 0.0;
    for (long long k = begin; k < end; ++k) {
        const double f = kernel(seed, static_cast<std::uint64_t>(k));
        s += f;
        s2 += f * f;
    }
    out_sum = s;
    out_sumsq = s2;
}

MCEstimate finish(const Scenario& sc, long long points, std::uint64_t seed,
                  const std::vector<double>& bsum, const std::vector<double>& bsumsq) {
    double total = 0.0, totalsq = 0.0;
    for (std::size_t b = 0; b < bsum.size(); ++b) {
        total += bsum[b];
        totalsq += bsumsq[b];
    }
    MCEstimate est;
    est.scenario = sc;
    est.points = points;
    est.seed = seed;
    est.mean = total / static_cast<double>(points);
    const double var = (totalsq - total * total / static_cast<double>(points)) /
                       (static_cast<double>(points) - 1.0);
    est.stderr_ = std::sqrt(std::max(var, 0.0) / static_cast<double>(points));
    return est;
}

} // namespace

MCEstimate mc_overlap(const Scenario& sc, long long points, std::uint64_t seed, int threads,
                      FrameKind kind) {
    if (points < 1000)
        throw invalid_argument_error("mc_overlap: need at least 10^3 points, got " + std::to_string(points));
    const long long nblocks = (points + kBlock - 1) / kBlock;
    std::vector<double> bsum(nblocks), bsumsq(nblocks);
#ifdef _OPENMP
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nthreads)
    {
        OverlapKernel kernel(sc, kind);
#pragma omp for schedule(static)
        for (long long b = 0; b < nblocks; ++b) {
            const long long begin = b * kBlock;
            const long long end = std::min(points, begin + kBlock);
            accumulate_block(kernel, seed, begin, end, bsum[b], bsumsq[b]);
        }
    }
#else
    (void)threads;
    OverlapKernel kernel(sc, kind);
    for (long long b = 0; b < nblocks; ++b) {
        const long long begin = b * kBlock;
        const long long end = std::min(points, begin + kBlock);
        accumulate_block(kernel, seed, begin, end, bsum[b], bsumsq[b]);
    }
#endif
    return finish(sc, points, seed, bsum, bsumsq);
}

MCEstimate mc_overlap_serial(const Scenario& sc, long long points, std::uint64_t seed, FrameKind kind) {
    if (points < 1000)
        throw invalid_argument_error("mc_overlap: need at least 10^3 points, got " + std::to_string(points));
    const long long nblocks = (points + kBlock - 1) / kBlock;
    std::vector<double> bsum(nblocks), bsumsq(nblocks);
    OverlapKernel kernel(sc, kind);
    for (long long b = 0; b < nblocks; ++b) {
        const long long begin = b * kBlock;
        const long long end = std::min(points, begin + kBlock);
        accumulate_block(kernel, seed, begin, end, bsum[b], bsumsq[b]);
    }
    return finish(sc, points, seed, bsum, bsumsq);
}

double closed_form_L(int d, int n) {
    constexpr double pi = 3.14159265358979323846;
    if (d == 2) return std::pow(2.0 / pi, n);
    if (d == 3) return std::pow((9.0 + 2.0 * std::sqrt(3.0) * pi) / (4.0 * pi * pi), n);
    throw invalid_argument_error("closed_form_L: known only for d=2 and d=3");
}

double norm_quadrature(int d, FrameKind kind) {
    if (d > 6) throw invalid_argument_error("norm_quadrature: d > 6, use Monte Carlo instead");
    const int dim = d - 1;
    CorrEvaluator ev(d, kind);
    std::vector<double> x(dim), e(dim);
    auto midpoint = [&](int n) {
        // tensor-product midpoint grid, n points per axis
        long long cells = 1;
        for (int i = 0; i < dim; ++i) cells *= n;
        double acc = 0.0;
        for (long long c = 0; c < cells; ++c) {
            long long t = c;
            for (int i = 0; i < dim; ++i) {
                x[i] = (static_cast<double>(t % n) + 0.5) / n;
                t /= n;
            }
            ev.corr(x.data(), e.data());
            double ee = 0.0;
            for (int i = 0; i < dim; ++i) ee += e[i] * e[i];
            acc += ee;
        }
        return acc / static_cast<double>(cells);
    };
    // Richardson refinement: integrands are trigonometric polynomials, so the
    // periodic midpoint rule locks in after a few doublings.
    double prev = midpoint(4);
    for (int n = 8; n <= 64; n *= 2) {
        const double cur = midpoint(n);
        if (std::abs(cur - prev) < 1e-7) return cur;
        prev = cur;
    }
    return prev;
}

} // namespace gbi

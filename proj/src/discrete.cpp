#include "gbi/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gbi/errors.hpp"
#include "gbi/frames.hpp"
#include "gbi/rng.hpp"

namespace gbi {

namespace {

constexpr long long kMemoryCapDoubles = 1ll << 25; // tensor storage cap

// d^e with saturation.
long long spow(int d, long long e, long long cap) {
    long long r = 1;
    for (long long i = 0; i < e; ++i) {
        if (r > cap / d) return cap + 1;
        r *= d;
    }
    return r;
}

double cell_dot(const double* a, const double* b, int dim) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += a[i] * b[i];
    return s;
}

// Classical overlap of a full strategy.
double strategy_overlap(const DiscreteScenario& ds, const std::vector<std::vector<int>>& labels,
                        const OutcomeFrame& fr) {
    const int d = ds.scenario.d;
    const int dim = d - 1;
    const int n = ds.scenario.n;
    double total = 0.0;
    std::vector<int> k(n, 0);
    for (long long c = 0; c < ds.cells; ++c) {
        int sum = 0;
        for (int j = 0; j < n; ++j) sum += labels[j][k[j]];
        total += cell_dot(ds.cell(c), fr.vec(sum % d), dim);
        for (int j = n - 1; j >= 0; --j) {
            if (++k[j] < ds.m_of(j)) break;
            k[j] = 0;
        }
    }
    return total;
}

} // namespace

double DiscreteScenario::self_overlap() const {
    double s = 0.0;
    for (double t : tensor) s += t * t;
    return s;
}

DiscreteScenario build_scenario(const Scenario& sc, const std::vector<std::vector<SettingVector>>& settings,
                                FrameKind kind) {
    if (static_cast<int>(settings.size()) != sc.n)
        throw invalid_argument_error("build_scenario: expected one setting list per observer");
    const int dim = sc.d - 1;
    long long cells = 1;
    for (const auto& obs : settings) {
        if (obs.empty()) throw invalid_argument_error("build_scenario: every observer needs at least one setting");
        for (const auto& s : obs)
            if (static_cast<int>(s.size()) != dim)
                throw invalid_argument_error("build_scenario: setting vector has wrong length");
        if (cells > kMemoryCapDoubles / static_cast<long long>(obs.size()))
            throw resource_limit_error("build_scenario: tensor exceeds the memory cap");
        cells *= static_cast<long long>(obs.size());
    }
    if (cells * dim > kMemoryCapDoubles)
        throw resource_limit_error("build_scenario: tensor exceeds the memory cap");

    DiscreteScenario ds;
    ds.scenario = sc;
    ds.frame = kind;
    ds.settings = settings;
    ds.cells = cells;
    ds.tensor.resize(static_cast<std::size_t>(cells) * dim);

    CorrEvaluator ev(sc.d, kind);
    std::vector<double> x(dim);
    std::vector<int> k(sc.n, 0);
    for (long long c = 0; c < cells; ++c) {
        for (int i = 0; i < dim; ++i) x[i] = 0.0;
        for (int j = 0; j < sc.n; ++j) {
            const auto& s = settings[j][k[j]];
            for (int i = 0; i < dim; ++i) x[i] += s[i];
        }
        reduce_mod1(x.data(), dim);
        ev.corr(x.data(), ds.tensor.data() + static_cast<std::size_t>(c) * dim);
        for (int j = sc.n - 1; j >= 0; --j) {
            if (++k[j] < ds.m_of(j)) break;
            k[j] = 0;
        }
    }
    return ds;
}

ClassicalOpt classical_opt_exact(const DiscreteScenario& ds, long long max_enumerations) {
    const int d = ds.scenario.d;
    const int dim = d - 1;
    const int n = ds.scenario.n;
    long long total_settings = 0;
    for (int j = 0; j < n; ++j) total_settings += ds.m_of(j);
    if (spow(d, total_settings, max_enumerations) > max_enumerations)
        throw resource_limit_error("classical_opt_exact: d^(sum of M) exceeds the enumeration cap, "
                                   "use the heuristic optimizer");

    OutcomeFrame fr(d, ds.frame);
    // Enumerate observers 0..n-2 exhaustively; the last observer's labels are
    // optimal per setting given the rest, which is exact because each of its
    // settings contributes an independent group of cells.
    const int last = n - 1;
    const int m_last = ds.m_of(last);
    const long long prefixes = ds.cells / m_last;

    std::vector<std::vector<int>> labels(n);
    for (int j = 0; j < n; ++j) labels[j].assign(ds.m_of(j), 0);

    std::vector<int> psum(prefixes, 0);
    std::vector<double> gain(static_cast<std::size_t>(m_last) * d);
    std::vector<int> k(n, 0);

    ClassicalOpt best;
    best.overlap = -1e300;

    bool done = false;
    while (!done) {
        // partial label sums over observers 0..n-2 for every cell prefix
        std::fill(k.begin(), k.end(), 0);
        for (long long p = 0; p < prefixes; ++p) {
            int s = 0;
            for (int j = 0; j < last; ++j) s += labels[j][k[j]];
            psum[p] = s;
            for (int j = last - 1; j >= 0; --j) {
                if (++k[j] < ds.m_of(j)) break;
                k[j] = 0;
            }
        }
        std::fill(gain.begin(), gain.end(), 0.0);
        for (long long p = 0; p < prefixes; ++p) {
            const double* row = ds.cell(p * m_last);
            for (int s = 0; s < m_last; ++s) {
                const double* cell = row + static_cast<std::size_t>(s) * dim;
                double* g = gain.data() + static_cast<std::size_t>(s) * d;
                for (int t = 0; t < d; ++t) g[t] += cell_dot(cell, fr.vec((psum[p] + t) % d), dim);
            }
        }
        double score = 0.0;
        std::vector<int> last_labels(m_last, 0);
        for (int s = 0; s < m_last; ++s) {
            const double* g = gain.data() + static_cast<std::size_t>(s) * d;
            int bt = 0;
            for (int t = 1; t < d; ++t)
                if (g[t] > g[bt]) bt = t;
            last_labels[s] = bt;
            score += g[bt];
        }
        if (score > best.overlap) {
            best.overlap = score;
            best.strategy.labels = labels;
            best.strategy.labels[last] = last_labels;
        }
        // advance the outer odometer (observers 0..n-2, all settings)
        done = true;
        for (int j = 0; j < last && done; ++j) {
            for (int s = 0; s < ds.m_of(j) && done; ++s) {
                if (++labels[j][s] < d) {
                    done = false;
                    break;
                }
                labels[j][s] = 0;
            }
            if (!done) break;
        }
    }
    return best;
}

ClassicalOpt classical_opt_heuristic(const DiscreteScenario& ds, int restarts, std::uint64_t seed) {
    if (restarts < 1) throw invalid_argument_error("classical_opt_heuristic: restarts must be >= 1");
    const int d = ds.scenario.d;
    const int dim = d - 1;
    const int n = ds.scenario.n;
    OutcomeFrame fr(d, ds.frame);

    ClassicalOpt best;
    best.overlap = -1e300;

    std::vector<std::vector<int>> labels(n);
    std::vector<double> gain;
    std::vector<int> k(n, 0);

    for (int r = 0; r < restarts; ++r) {
        SplitMix rng(mix64(seed + 0x9e37u) + static_cast<std::uint64_t>(r) * kGolden);
        for (int j = 0; j < n; ++j) {
            labels[j].resize(ds.m_of(j));
            for (auto& t : labels[j]) t = static_cast<int>(rng.next_below(d));
        }
        // Coordinate ascent: one observer at a time, its labels set optimally
        // in closed form given the others.
        bool changed = true;
        int pass = 0;
        while (changed && pass < 200) {
            changed = false;
            ++pass;
            for (int j = 0; j < n; ++j) {
                const int mj = ds.m_of(j);
                gain.assign(static_cast<std::size_t>(mj) * d, 0.0);
                std::fill(k.begin(), k.end(), 0);
                for (long long c = 0; c < ds.cells; ++c) {
                    int others = 0;
                    for (int jj = 0; jj < n; ++jj)
                        if (jj != j) others += labels[jj][k[jj]];
                    double* g = gain.data() + static_cast<std::size_t>(k[j]) * d;
                    const double* cell = ds.cell(c);
                    for (int t = 0; t < d; ++t) g[t] += cell_dot(cell, fr.vec((others + t) % d), dim);
                    for (int jj = n - 1; jj >= 0; --jj) {
                        if (++k[jj] < ds.m_of(jj)) break;
                        k[jj] = 0;
                    }
                }
                for (int s = 0; s < mj; ++s) {
                    const double* g = gain.data() + static_cast<std::size_t>(s) * d;
                    int bt = 0;
                    for (int t = 1; t < d; ++t)
                        if (g[t] > g[bt]) bt = t;
                    if (bt != labels[j][s]) {
                        labels[j][s] = bt;
                        changed = true;
                    }
                }
            }
        }
        const double score = strategy_overlap(ds, labels, fr);
        if (score > best.overlap) {
            best.overlap = score;
            best.strategy.labels = labels;
        }
    }
    return best;
}

namespace {

// QCR objective for the settings optimizer: self-overlap / best classical.
struct DiscreteObjective {
    Scenario sc;
    long long exact_cap;
    int heuristic_restarts;
    std::uint64_t classical_seed;

    double operator()(const std::vector<std::vector<SettingVector>>& settings) const {
        DiscreteScenario ds = build_scenario(sc, settings);
        const double quantum = ds.self_overlap();
        double classical;
        try {
            classical = classical_opt_exact(ds, exact_cap).overlap;
        } catch (const resource_limit_error&) {
            classical = classical_opt_heuristic(ds, heuristic_restarts, classical_seed).overlap;
        }
        if (classical < 1e-12) return 0.0;
        return quantum / classical;
    }

    void score(const std::vector<std::vector<SettingVector>>& settings, double& quantum,
               double& classical) const {
        DiscreteScenario ds = build_scenario(sc, settings);
        quantum = ds.self_overlap();
        try {
            classical = classical_opt_exact(ds, exact_cap).overlap;
        } catch (const resource_limit_error&) {
            classical = classical_opt_heuristic(ds, heuristic_restarts, classical_seed).overlap;
        }
    }
};

using Settings = std::vector<std::vector<SettingVector>>;

void flatten(const Settings& s, std::vector<double>& out) {
    out.clear();
    for (const auto& obs : s)
        for (const auto& v : obs) out.insert(out.end(), v.begin(), v.end());
}

void unflatten(const std::vector<double>& flat, Settings& s) {
    std::size_t idx = 0;
    for (auto& obs : s)
        for (auto& v : obs)
            for (auto& p : v) {
                double t = flat[idx++];
                p = t - std::floor(t);
            }
}

// Cyclic pattern search over all setting parameters: probe +-step per
// coordinate with immediate accept, halve the step after a sweep without
// improvement.  Serial and deterministic; callers parallelize over restarts.
double pattern_search(const DiscreteObjective& obj, Settings& settings, double step0, double tol,
                      int max_sweeps) {
    Settings work = settings;
    std::vector<double> x;
    flatten(settings, x);
    const int p = static_cast<int>(x.size());
    double step = step0;
    unflatten(x, work);
    double fx = obj(work);
    for (int sweep = 0; sweep < max_sweeps && step > tol; ++sweep) {
        bool moved = false;
        for (int i = 0; i < p; ++i) {
            const double saved = x[i];
            for (double sgn : {1.0, -1.0}) {
                x[i] = saved + sgn * step;
                unflatten(x, work);
                const double f = obj(work);
                if (f > fx + 1e-12) {
                    fx = f;
                    moved = true;
                    break;
                }
                x[i] = saved;
            }
            if (x[i] != saved) x[i] -= std::floor(x[i]);
        }
        if (!moved) step *= 0.5;
    }
    unflatten(x, settings);
    return fx;
}

} // namespace

std::vector<DiscreteTrajectoryPoint> optimize_settings(const Scenario& sc, int m_max,
                                                       std::uint64_t seed, int starts, int threads) {
    if (m_max < 2) throw invalid_argument_error("optimize_settings: M_max must be >= 2");
    if (starts < 1) starts = 1;
    const int dim = sc.d - 1;

    DiscreteObjective obj{sc, 10'000'000, 8, mix64(seed ^ 0xc1a551ca1ull)};
    SplitMix rng(mix64(seed));

    auto random_settings = [&](int m) {
        Settings s(sc.n);
        for (auto& obs : s) {
            obs.resize(m);
            for (auto& v : obs) {
                v.resize(dim);
                for (auto& ph : v) ph = rng.uniform();
            }
        }
        return s;
    };

    std::vector<DiscreteTrajectoryPoint> trajectory;
    Settings prev_best;
    double keep_best = 0.0;

    for (int m = 2; m <= m_max; ++m) {
        // Inits are drawn serially so the stream is fixed; the independent
        // optimizations then run in parallel.
        std::vector<Settings> inits(starts);
        for (int st = 0; st < starts; ++st) {
            if (st == 0 && !prev_best.empty()) {
                inits[st] = prev_best; // warm start: previous optimum plus one fresh setting
                for (auto& obs : inits[st]) {
                    SettingVector v(dim);
                    for (auto& ph : v) ph = rng.uniform();
                    obs.push_back(v);
                }
            } else {
                inits[st] = random_settings(m);
            }
        }
        std::vector<double> vals(starts);
#ifdef _OPENMP
        const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
#endif
        for (int st = 0; st < starts; ++st) vals[st] = pattern_search(obj, inits[st], 0.19, 2e-4, 4000);
        int best_st = 0;
        for (int st = 1; st < starts; ++st)
            if (vals[st] > vals[best_st]) best_st = st;
        const double best_val = vals[best_st];
        Settings best_settings = inits[best_st];
        DiscreteTrajectoryPoint pt;
        pt.m = m;
        pt.qcr_fresh = best_val;
        obj.score(best_settings, pt.quantum, pt.classical);
        keep_best = std::max(keep_best, best_val);
        pt.qcr = keep_best;
        pt.settings = best_settings;
        trajectory.push_back(pt);
        prev_best = best_settings;
    }
    return trajectory;
}

} // namespace gbi

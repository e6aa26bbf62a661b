#include "gbi/wwwzb.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gbi/errors.hpp"
#include "gbi/qcorr.hpp"
#include "gbi/rng.hpp"

namespace gbi {

namespace {

using Cx = std::complex<double>;
constexpr double kTwoPi = 6.283185307179586476925286766559;

const Cx kOmega = Cx(-0.5, 0.8660254037844386467637232);
const Cx kOmegaPow[3] = {Cx(1.0, 0.0), kOmega, Cx(-0.5, -0.8660254037844386467637232)};

constexpr int kW[3][3] = {{0, 0, 0}, {0, 1, 2}, {0, 2, 1}};

// Complex qutrit correlation at phase sum (x1, x2); real/imag parts are the
// two components of the vector-valued correlation function.
Cx ec(double x1, double x2) {
    const double a = kTwoPi * x1, b = kTwoPi * (x1 - x2), c = kTwoPi * x2;
    return Cx((std::cos(a) + std::cos(b) + std::cos(c)) / 3.0,
              (-std::sin(a) + std::sin(b) + std::sin(c)) / 3.0);
}

// Collapsed coefficients: B = sum_{k,l} Re(C[k][l] * <X_{k,l}>) with
// C[k][l] = sum_{m,n} omega^{S_{m,n} + s^{m,n}_{k,l}}.
struct Coeff {
    Cx c[3][3];
};

Coeff coeff_of(const SignMatrix& S) {
    Coeff out;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
            Cx acc(0.0, 0.0);
            for (int m = 0; m < 3; ++m)
                for (int n = 0; n < 3; ++n) acc += kOmegaPow[(S.at(m, n) + kW[m][k] * kW[n][l]) % 3];
            out.c[k][l] = acc;
        }
    return out;
}

double value_at(const Coeff& C, const WwwzbPhases& ph) {
    double total = 0.0;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
            const Cx e = ec(ph.a[k][0] + ph.b[l][0], ph.a[k][1] + ph.b[l][1]);
            total += C.c[k][l].real() * e.real() - C.c[k][l].imag() * e.imag();
        }
    return total;
}

// Block objective for one setting y of one party:
// h(y) = Re(alpha e^{-2pi i y1} + beta e^{2pi i (y1-y2)} + gamma e^{2pi i y2}).
struct BlockCoeff {
    Cx alpha, beta, gamma;

    double eval(double y1, double y2) const {
        const Cx e1 = std::polar(1.0, -kTwoPi * y1);
        const Cx e12 = std::polar(1.0, kTwoPi * (y1 - y2));
        const Cx e2 = std::polar(1.0, kTwoPi * y2);
        return (alpha * e1 + beta * e12 + gamma * e2).real();
    }
};

// Conjugating Re: Re(C * Ec(y + o)) contributes C*e^{-2pi i o1}/3 to alpha etc.
BlockCoeff block_coeff(const Coeff& C, const WwwzbPhases& ph, int party, int idx) {
    BlockCoeff bc{Cx(0, 0), Cx(0, 0), Cx(0, 0)};
    for (int l = 0; l < 3; ++l) {
        const Cx c = party == 0 ? C.c[idx][l] : C.c[l][idx];
        const double o1 = party == 0 ? ph.b[l][0] : ph.a[l][0];
        const double o2 = party == 0 ? ph.b[l][1] : ph.a[l][1];
        bc.alpha += c * std::polar(1.0 / 3.0, -kTwoPi * o1);
        bc.beta += c * std::polar(1.0 / 3.0, kTwoPi * (o1 - o2));
        bc.gamma += c * std::polar(1.0 / 3.0, kTwoPi * o2);
    }
    return bc;
}

constexpr int kGrid = 36;

struct GridTable {
    Cx e[kGrid]; // e^{2 pi i j / kGrid}
    GridTable() {
        for (int j = 0; j < kGrid; ++j) e[j] = std::polar(1.0, kTwoPi * j / kGrid);
    }
};

const GridTable& grid_table() {
    static const GridTable t;
    return t;
}

// Globally maximize the 3-mode block objective: dense grid then pattern refine.
void solve_block(const BlockCoeff& bc, double& y1, double& y2) {
    const auto& tab = grid_table();
    double best = -1e300;
    int bi = 0, bj = 0;
    for (int i = 0; i < kGrid; ++i) {
        const Cx t1 = bc.alpha * std::conj(tab.e[i]);
        for (int j = 0; j < kGrid; ++j) {
            const double v = (t1 + bc.beta * tab.e[i] * std::conj(tab.e[j]) + bc.gamma * tab.e[j]).real();
            if (v > best) {
                best = v;
                bi = i;
                bj = j;
            }
        }
    }
    double u1 = static_cast<double>(bi) / kGrid;
    double u2 = static_cast<double>(bj) / kGrid;
    double step = 1.0 / kGrid;
    while (step > 1e-9) {
        bool moved = false;
        for (int dim = 0; dim < 2; ++dim)
            for (double sgn : {1.0, -1.0}) {
                const double t1 = u1 + (dim == 0 ? sgn * step : 0.0);
                const double t2 = u2 + (dim == 1 ? sgn * step : 0.0);
                const double v = bc.eval(t1, t2);
                if (v > best + 1e-15) {
                    best = v;
                    u1 = t1;
                    u2 = t2;
                    moved = true;
                }
            }
        if (!moved) step *= 0.5;
    }
    y1 = u1 - std::floor(u1);
    y2 = u2 - std::floor(u2);
}

double seesaw(const Coeff& C, WwwzbPhases ph, int max_sweeps = 60) {
    double prev = value_at(C, ph);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        for (int party = 0; party < 2; ++party)
            for (int idx = 0; idx < 3; ++idx) {
                const BlockCoeff bc = block_coeff(C, ph, party, idx);
                auto& slot = party == 0 ? ph.a[idx] : ph.b[idx];
                solve_block(bc, slot[0], slot[1]);
            }
        const double cur = value_at(C, ph);
        if (cur < prev + 1e-12) return cur;
        prev = cur;
    }
    return prev;
}

double classical_max_impl(const Coeff& C) {
    // g[k][l][t] = Re(C[k][l] * omega^t)
    double g[3][3][3];
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            for (int t = 0; t < 3; ++t)
                g[k][l][t] = C.c[k][l].real() * kOmegaPow[t].real() - C.c[k][l].imag() * kOmegaPow[t].imag();
    double best = -1e300;
    for (int la0 = 0; la0 < 3; ++la0)
        for (int la1 = 0; la1 < 3; ++la1)
            for (int la2 = 0; la2 < 3; ++la2) {
                const int la[3] = {la0, la1, la2};
                double tot = 0.0;
                for (int l = 0; l < 3; ++l) {
                    double bl = -1e300;
                    for (int lb = 0; lb < 3; ++lb) {
                        double s = 0.0;
                        for (int k = 0; k < 3; ++k) s += g[k][l][(la[k] + lb) % 3];
                        if (s > bl) bl = s;
                    }
                    tot += bl;
                }
                if (tot > best) best = tot;
            }
    return best;
}

std::uint64_t matrix_code(const SignMatrix& S) {
    std::uint64_t h = 0;
    for (int i = 0; i < 9; ++i) h = h * 3 + static_cast<std::uint64_t>(S.e[i]);
    return h;
}

SignMatrix from_code(long long code) {
    SignMatrix s;
    for (int i = 8; i >= 0; --i) {
        s.e[i] = static_cast<int>(code % 3);
        code /= 3;
    }
    return s;
}

} // namespace

std::array<double, 4> rotation_u() {
    // Rotation by 2 pi / 3: cyclically advances the outcome frame.
    const double c = -0.5;
    const double s = 0.8660254037844386467637232;
    return {c, -s, s, c};
}

std::array<double, 4> rotation_u_pow(int k) {
    const int kk = ((k % 3) + 3) % 3;
    if (kk == 0) return {1.0, 0.0, 0.0, 1.0};
    if (kk == 1) return rotation_u();
    const double c = -0.5;
    const double s = -0.8660254037844386467637232;
    return {c, -s, s, c};
}

SignMatrix s_matrix(int m, int n) {
    if (m < 1 || m > 3 || n < 1 || n > 3) throw invalid_argument_error("s_matrix: indices must lie in 1..3");
    SignMatrix s;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) s.at(k, l) = (kW[m - 1][k] * kW[n - 1][l]) % 3;
    return s;
}

double bell_quantum(const SignMatrix& S, const WwwzbPhases& phases) {
    // Direct evaluation of the defining expression: Q_{m,n} kept as 2-vectors,
    // a single projection at the end.
    double bx = 0.0, by = 0.0;
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) {
            const SignMatrix s = s_matrix(m + 1, n + 1);
            double qx = 0.0, qy = 0.0;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    const PhaseSum x = {phases.a[k][0] + phases.b[l][0], phases.a[k][1] + phases.b[l][1]};
                    const std::vector<double> e = corr_reduced(3, {x[0] - std::floor(x[0]), x[1] - std::floor(x[1])});
                    const std::array<double, 4> u = rotation_u_pow(s.at(k, l));
                    qx += u[0] * e[0] + u[1] * e[1];
                    qy += u[2] * e[0] + u[3] * e[1];
                }
            const std::array<double, 4> u = rotation_u_pow(S.at(m, n));
            bx += u[0] * qx + u[1] * qy;
            by += u[2] * qx + u[3] * qy;
        }
    (void)by;
    return bx;
}

double bell_classical_value(const SignMatrix& S, const std::array<int, 3>& label_a,
                            const std::array<int, 3>& label_b) {
    const Coeff C = coeff_of(S);
    double total = 0.0;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
            const Cx v = kOmegaPow[(label_a[k] + label_b[l]) % 3];
            total += C.c[k][l].real() * v.real() - C.c[k][l].imag() * v.imag();
        }
    return total;
}

double bell_classical_max(const SignMatrix& S) { return classical_max_impl(coeff_of(S)); }

double bell_quantum_max(const SignMatrix& S, int starts, std::uint64_t seed) {
    if (starts < 1) throw invalid_argument_error("bell_quantum_max: starts must be >= 1");
    const Coeff C = coeff_of(S);
    SplitMix rng(mix64(seed + matrix_code(S)));
    double best = -1e300;
    for (int st = 0; st < starts; ++st) {
        WwwzbPhases ph{};
        if (st > 0) {
            // starts live on the 3-per-axis coarse grid
            for (int k = 0; k < 3; ++k)
                for (int i = 0; i < 2; ++i) {
                    ph.a[k][i] = static_cast<double>(rng.next_below(3)) / 3.0;
                    ph.b[k][i] = static_cast<double>(rng.next_below(3)) / 3.0;
                }
        }
        best = std::max(best, seesaw(C, ph));
    }
    return best;
}

SignMatrix canonical_sign_matrix(const SignMatrix& S) {
    auto row_swap = [](SignMatrix t) {
        for (int n = 0; n < 3; ++n) std::swap(t.e[1 * 3 + n], t.e[2 * 3 + n]);
        return t;
    };
    auto col_swap = [](SignMatrix t) {
        for (int m = 0; m < 3; ++m) std::swap(t.e[m * 3 + 1], t.e[m * 3 + 2]);
        return t;
    };
    auto transpose = [](const SignMatrix& t) {
        SignMatrix r;
        for (int m = 0; m < 3; ++m)
            for (int n = 0; n < 3; ++n) r.at(m, n) = t.at(n, m);
        return r;
    };
    auto negate = [&](SignMatrix t) {
        // U -> U^-1 relabeling: negate entries and swap w_2 <-> w_3 on both axes
        for (auto& e : t.e) e = (3 - e) % 3;
        return col_swap(row_swap(t));
    };
    // Cells coupling to the DC building block (m=1 or n=1): their values enter
    // only as a multiset.
    auto sort_dc_cells = [](SignMatrix t) {
        int vals[5] = {t.e[0], t.e[1], t.e[2], t.e[3], t.e[6]};
        std::sort(vals, vals + 5);
        t.e[0] = vals[0];
        t.e[1] = vals[1];
        t.e[2] = vals[2];
        t.e[3] = vals[3];
        t.e[6] = vals[4];
        return t;
    };

    SignMatrix best = sort_dc_cells(S);
    for (int neg = 0; neg < 2; ++neg)
        for (int rs = 0; rs < 2; ++rs)
            for (int cs = 0; cs < 2; ++cs)
                for (int tr = 0; tr < 2; ++tr)
                    for (int c = 0; c < 3; ++c) {
                        SignMatrix t = S;
                        if (neg) t = negate(t);
                        if (rs) t = row_swap(t);
                        if (cs) t = col_swap(t);
                        if (tr) t = transpose(t);
                        for (auto& e : t.e) e = (e + c) % 3;
                        t = sort_dc_cells(t);
                        if (t < best) best = t;
                    }
    return best;
}

SearchResult search_all_s(int starts, std::uint64_t seed, bool prune, int threads) {
    constexpr long long kTotal = 19683;
    std::map<SignMatrix, std::vector<long long>> classes;
    for (long long code = 0; code < kTotal; ++code)
        classes[canonical_sign_matrix(from_code(code))].push_back(code);

    std::vector<SRecord> records;
    records.reserve(classes.size());
    for (const auto& [rep, members] : classes) {
        SRecord r;
        r.s = rep;
        r.class_size = static_cast<int>(members.size());
        records.push_back(r);
    }
    std::vector<const std::vector<long long>*> member_lists;
    member_lists.reserve(classes.size());
    for (const auto& [rep, members] : classes) member_lists.push_back(&members);

    const long long nclasses = static_cast<long long>(records.size());
#ifdef _OPENMP
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
#endif
    for (long long i = 0; i < nclasses; ++i) {
        SRecord& r = records[i];
        r.classical = bell_classical_max(r.s);
        if (prune) {
            r.quantum = bell_quantum_max(r.s, starts, seed);
        } else {
            // validation mode: optimize every member, keep the best
            double q = -1e300;
            for (long long code : *member_lists[i]) q = std::max(q, bell_quantum_max(from_code(code), starts, seed));
            r.quantum = q;
        }
        r.qcr = r.classical > 1e-9 ? r.quantum / r.classical : 0.0;
    }

    std::sort(records.begin(), records.end(), [](const SRecord& a, const SRecord& b) {
        if (a.qcr != b.qcr) return a.qcr > b.qcr;
        return a.s < b.s;
    });

    SearchResult result;
    result.ranking = std::move(records);
    result.evaluated_classes = prune ? nclasses : kTotal;
    result.best_qcr = result.ranking.front().qcr;
    result.best_s = result.ranking.front().s;
    return result;
}

} // namespace gbi

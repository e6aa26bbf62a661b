#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace gbi {

// 3x3 matrix over Z_3, row-major; indexes the bipartite qutrit Bell expression.
struct SignMatrix {
    std::array<int, 9> e{};

    int& at(int m, int n) { return e[m * 3 + n]; }
    int at(int m, int n) const { return e[m * 3 + n]; }
    bool operator==(const SignMatrix&) const = default;
    bool operator<(const SignMatrix& o) const { return e < o.e; }
};

// Rotation by 2pi/3 in the outcome plane: U v_{3,m} = v_{3,m+1 mod 3}, U^3 = I.
std::array<double, 4> rotation_u();
std::array<double, 4> rotation_u_pow(int k);

// s^{m,n} = w_m w_n^T mod 3 with w_1=(0,0,0), w_2=(0,1,2), w_3=(0,2,1).
// m, n are 1-based as in the construction.
SignMatrix s_matrix(int m, int n);

// Phases of one party: 3 observables x 2 phases.
using PartyPhases = std::array<std::array<double, 2>, 3>;

struct WwwzbPhases {
    PartyPhases a{};
    PartyPhases b{};
};

// B = first component of sum_{m,n} U^{S_{m,n}} Q_{m,n}, where
// Q_{m,n} = sum_{k,l} U^{s^{m,n}_{k,l}} <X_{k,l}> and <X_{k,l}> is the
// bipartite qutrit correlation vector at settings (a_k, b_l) on |GHZ_{3,2}>.
double bell_quantum(const SignMatrix& S, const WwwzbPhases& phases);

// Same expression with <X_{k,l}> replaced by v_{3,(labelA(k)+labelB(l)) mod 3}.
double bell_classical_value(const SignMatrix& S, const std::array<int, 3>& label_a,
                            const std::array<int, 3>& label_b);

// Exact maximum over all 729 deterministic bipartite strategies.
double bell_classical_max(const SignMatrix& S);

// Best quantum value found by multi-start block-coordinate ascent over the 12
// phases (per-block coarse grid + pattern refinement).  Deterministic in
// (seed, starts).
double bell_quantum_max(const SignMatrix& S, int starts, std::uint64_t seed);

// Canonical representative of S under the value-preserving symmetry group:
// global shifts S+c, row/column swaps 2<->3, transpose, negation composed with
// the w_2<->w_3 relabeling, and permutations of the five cells that multiply
// the same (DC) building block.
SignMatrix canonical_sign_matrix(const SignMatrix& S);

struct SRecord {
    SignMatrix s;         // canonical representative
    double classical = 0; // exact
    double quantum = 0;   // best found
    double qcr = 0;       // quantum / classical
    int class_size = 0;   // matrices sharing this representative
};

struct SearchResult {
    std::vector<SRecord> ranking;        // descending by qcr
    long long evaluated_classes = 0;
    long long total_matrices = 19683;
    double best_qcr = 0.0;
    SignMatrix best_s;                   // canonical representative of the top class
};

// Iterate all 3^9 sign matrices (one quantum optimization per equivalence
// class when prune is set), rank by QCR.  Deterministic in (seed, starts).
SearchResult search_all_s(int starts, std::uint64_t seed, bool prune = true, int threads = 0);

} // namespace gbi

#pragma once

// =========================================================================
// Model Lax grids at the solving point of the spectral parameter, their
// boundary data, the coupling <-> spin-parameter dictionary, and the bond
// caps that make vacuum-to-vacuum contractions exact.
// =========================================================================

#include <vector>

#include "ness/chain.hpp"
#include "ness/qalg.hpp"
#include "ness/types.hpp"

namespace ness {

// Amplitude gauges for the auxiliary grid.
//  - Verma:      deformed lowest-weight ladder; solves the driven chain and
//                carries the boundary operator.
//  - Symmetric:  identity-diagonal letters with Chebyshev amplitudes in the
//                coupling; carries the polynomial amplitude structure.
//  - Triangular: classical letters p-k / k-2p / k+1 whose contraction is
//                upper-triangular with every diagonal entry p^n.
enum class LaxGauge { Verma, Symmetric, Triangular };

struct LaxOperator {
    int d = 2;                 // physical dimension
    int D = 0;                 // auxiliary dimension
    LaxGauge gauge = LaxGauge::Verma;
    ModelKind kind = ModelKind::XXX;
    double gamma = 0.0;
    double eps = 0.0;          // model rate the grid solves for (0 if free-standing)
    cx coupling{};             // gauge coupling of the Symmetric letters
    cx p{};                    // spin parameter (Verma / Triangular)
    double theta = 0.0;        // twist
    double mu = 0.0;           // hole dressing
    std::vector<cx> r;         // SU(N) extremal weight pair {r_0, r_{N-1}}
    std::vector<int> aux_factors;  // per-mode ladder dims; product = D
    std::vector<std::vector<int>> aux_monomials;  // SU(N) basis exponents
    std::vector<CMat> G;       // d*d grid, G[i*d+j] = coefficient of e^{ij}
    std::vector<CMat> B;       // boundary grid, same layout, when defined
    CVec lvac, rvac;           // contraction boundary vectors
    bool exact = false;        // truncation exact for the declared length
    int sites = 0;             // declared contraction length

    const CMat& block(int i, int j) const;           // 0-based physical indices
    const CMat& boundary_block(int i, int j) const;  // 0-based physical indices
    bool has_boundary() const { return !B.empty(); }
};

// Per-ladder bond caps. A closed walk over n sites climbs at most floor(n/2)
// rungs; a root-of-unity deformation additionally kills every walk that
// leaves the first m rungs.
int default_bond_cap(int n);
int bond_cap(const ChainModel& model, int n);

// Coupling <-> spin-parameter dictionary of the deformed family:
// eps = 4i sin(gamma) cot(gamma p), with the gamma -> 0 limit eps = 4i/p.
cx eps_from_spin(double gamma, cx p);
// Newton inversion seeded at the isotropic value p = 4i/eps; throws on
// non-convergence.
cx spin_from_eps(double gamma, double eps);
// Every root reached from a seed grid over the box, deduplicated and sorted.
// The relation is pi/gamma-periodic in Re p, so one strip already holds all
// distinct branches.
std::vector<cx> spin_roots_in_box(double gamma, double eps, double re_lo, double re_hi,
                                  double im_lo, double im_hi, int seeds_per_axis = 12);

// Grid of the driven model in the Verma gauge, truncated for contractions of
// length n. D = 0 picks bond_cap(model, n) per ladder.
LaxOperator build_lax(const ChainModel& model, int n, int D = 0);

// Reversed-driving SU(N) grid: transposition of the physical indices with
// the weight vector negated.
LaxOperator build_sun_reversed(const ChainModel& model, int n, int D = 0);

// Chebyshev amplitude tables of the Symmetric gauge:
//   a_k = t_k(Delta) + (i eps/2) u_{k-1}(Delta),   b_0 = i eps,
//   b_k - b_{k-1} = a_{k+1} a_k - a_k a_{k-1},
// with t, u the three-point Chebyshev sequences in Delta.
struct SymmetricAmplitudes {
    std::vector<cx> a;  // diagonal letters, a[0..D-1]
    std::vector<cx> b;  // climb letters,    b[0..D-2]
};
SymmetricAmplitudes symmetric_amplitudes(double delta, cx eps, int D);

// Two-letter gauges on the spin-1/2 chain. dyadic_scale doubles every letter,
// clearing all half-integers out of the amplitudes.
LaxOperator build_symmetric_lax(double delta, cx eps, int D, bool dyadic_scale = false);
LaxOperator build_triangular_lax(cx p, int D);

}  // namespace ness

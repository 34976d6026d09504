#pragma once

// Matrix-product steady states from auxiliary-space contractions.
//
// The amplitude operator S is the vacuum-to-vacuum contraction of one Lax
// grid per site; the (unnormalized) steady state is rho = S S^dag.  Moments
// of rho are computed without ever forming it, by fusing the grid with its
// conjugate into a two-leg transfer operator.  An exact-arithmetic engine
// re-derives the spin-1/2 amplitudes as polynomials in the driving strength
// with dyadic Gaussian coefficients, pinning the numeric path bit for bit.

#include <cstdint>
#include <vector>

#include "ness/chain.hpp"
#include "ness/lax.hpp"
#include "ness/types.hpp"

namespace ness {

// ------------------------------------------------------------- contraction

// Contract n copies of the grid between the auxiliary vacua:
//   S_{i_1..i_n, j_1..j_n} = <lvac| G_{i_1 j_1} ... G_{i_n j_n} |rvac>,
// returned as a dense d^n x d^n operator with row index sum_x i_x d^{n-x}.
// Built by a meet-in-the-middle sweep (prefix rows against suffix columns);
// guarded to d^n <= 1024.
ManyBodyOperator contract_s(const LaxOperator& lax, int n);

// ----------------------------------------------------- two-leg fused grids

// Grid of the doubled auxiliary space C^D (x) conj(C^D):
//   GG_{ij} = sum_k G_{ik} (x) conj(G_{jk}),
// i.e. the coefficient of e^{ij} in L . L^dag with the physical trace over
// the shared column index k.  T = sum_i GG_{ii} is the transfer operator
// whose vacuum moments are the partition sums <<0| T^n |0>> = tr rho.
struct TwoLegLax {
    int d = 2;
    int D = 0;    // single-leg auxiliary dimension
    int D2 = 0;   // fused dimension D^2
    std::vector<SpMat> GG;  // GG[i * d + j]
    SpMat T;
    CVec lvac, rvac;        // fused vacua

    const SpMat& block(int i, int j) const;
};

TwoLegLax two_leg(const LaxOperator& lax);

// <<0| T^power |0>> by repeated sparse application to the right vacuum.
cx vacuum_moment(const TwoLegLax& tl, int power);

// Fused indices {k D + k}: the diagonal (paired) subspace of the doubling.
std::vector<int> paired_indices(int D);

// Fused indices of the three-component model on which the transfer operator
// closes: both legs must agree on the boson imbalance j - k and the shifted
// total j + k + 2l of the (up, down, ladder) auxiliary factors.
std::vector<int> ls_sublattice_indices(const LaxOperator& lax);

// True when every column supported on `keep` maps back into span{keep}.
bool preserves_subspace(const SpMat& T, const std::vector<int>& keep,
                        double tol = 1e-12);

// ------------------------------------------------------------ steady state

struct NessResult {
    int n = 0;
    int d = 2;
    ManyBodyOperator S;    // amplitude operator
    ManyBodyOperator rho;  // unnormalized S S^dag
    cx Z;                  // tr rho
    // ||L vec(rho)|| / ||vec(rho)|| against the dissipative generator, or -1
    // when certification was skipped (out of oracle range or disabled).
    double lindblad_residual = -1.0;
};

// Build the driven steady state of `model` on its n sites: construct the Lax
// grid, contract S, form rho = S S^dag, and (when the generator fits in the
// dense-oracle range) certify rho against it.  D = 0 picks the default cap.
NessResult assemble_ness(const ChainModel& model, int D = 0, bool certify = true);

// Restrict a d = 3 many-body operator to the block with exactly nu holes on
// both sides (entries outside the block are dropped).
ManyBodyOperator project_sector(const ManyBodyOperator& op, int nu);

// ------------------------------------------------- exact dyadic amplitudes

// Gaussian dyadic number (re + i im) / 2^e2 with exact integer arithmetic.
struct GaussDyadic {
    long long re = 0;
    long long im = 0;
    int e2 = 0;

    GaussDyadic() = default;
    GaussDyadic(long long re_, long long im_, int e2_ = 0);

    void normalize();            // strip shared factors of two
    bool integral() const;       // true when e2 == 0 after normalization
    bool zero() const { return re == 0 && im == 0; }
    cx value() const;

    GaussDyadic operator+(const GaussDyadic& o) const;
    GaussDyadic operator-(const GaussDyadic& o) const;
    GaussDyadic operator*(const GaussDyadic& o) const;
    bool operator==(const GaussDyadic& o) const;
};

// Polynomial in the driving strength with GaussDyadic coefficients.
struct GaussPoly {
    std::vector<GaussDyadic> c;  // c[k] multiplies eps^k

    static GaussPoly constant(GaussDyadic v);
    int degree() const;          // -1 for the zero polynomial
    bool integral() const;
    cx eval(cx eps) const;
    void trim();                 // drop trailing zero coefficients

    GaussPoly operator+(const GaussPoly& o) const;
    GaussPoly operator-(const GaussPoly& o) const;
    GaussPoly operator*(const GaussPoly& o) const;
    bool operator==(const GaussPoly& o) const;
};

// Exact amplitudes of the spin-1/2 solution in the symmetric gauge: one
// polynomial per length-n word over the letters {diagonal, raise, lower}.
// With `scaled` set, every letter is doubled, so word amplitudes carry the
// overall 2^n that clears all dyadic denominators at integer anisotropy.
struct SymbolicAmplitudes {
    int n = 0;
    int D = 0;
    bool scaled = false;
    std::vector<GaussPoly> amp;  // 3^n entries

    // Word index with site 1 most significant; digits 0 = diagonal,
    // 1 = raise, 2 = lower.
    static long index_of(const std::vector<int>& digits);
    const GaussPoly& at_word(const std::vector<int>& digits) const;
};

// Walk every word of length n through the symmetric-gauge ladder with the
// anisotropy given as an exact dyadic value (e.g. 1, 0, -1, 1/2).
SymbolicAmplitudes contract_symbolic(const GaussDyadic& delta, int n, int D,
                                     bool scaled = true);

}  // namespace ness

#pragma once

// =========================================================================
// Site bases, chain models, and sparse many-body operator construction:
// embeddings, Hamiltonians, magnetization, and current operators.
// =========================================================================

#include <optional>
#include <string>

#include "ness/types.hpp"

namespace ness {

// ---------------------------------------------------------------- site basis

// Pauli matrices on C^2, basis {|up>, |down>}.
CMat sigma0();
CMat sigmax();
CMat sigmay();
CMat sigmaz();
CMat sigmap();   // sigma^+ = (sigma^x + i sigma^y)/2
CMat sigmam();   // sigma^- = (sigma^x - i sigma^y)/2

// Weyl matrix unit e^{ij} = |i><j| on C^N (1-based physics indices).
CMat weyl(int N, int i, int j);

// Spin-1 components on C^3, basis {|1>=up, |2>=hole, |3>=down}.
CMat spin1_z();
CMat spin1_plus();
CMat spin1_minus();
CMat spin1_comp(int a);   // s^1, s^2, s^3 with [s^a,s^b] = i eps_{abc} s^c

// Named operator table for a local dimension (supports d = 2 and d = 3).
struct SiteBasis {
    int d;
    explicit SiteBasis(int d_);
    CMat op(const std::string& name) const;   // throws on unknown name
};

// -------------------------------------------------------------- chain model

enum class ModelKind { XXX, XXZ, XXZTwisted, SUN, LaiSutherland };

// Anisotropy is either a real Delta or a root-of-unity pair (l,m) giving
// gamma = pi l/m, Delta = cos gamma. The root-of-unity mode unlocks exact
// auxiliary truncations downstream.
struct ChainModel {
    ModelKind kind = ModelKind::XXX;
    int n = 2;                 // number of sites
    bool root_of_unity = false;
    int l = 1, m = 2;          // gamma = pi l/m when root_of_unity
    double delta = 1.0;        // anisotropy when not root-of-unity
    double eps = 1.0;          // left coupling rate (> 0)
    double theta = 0.0;        // twist angle (XXZTwisted only)
    int N = 2;                 // component count (SUN only)
    double mu = 0.0;           // hole chemical potential (LaiSutherland only)

    int site_dim() const;      // 2, 3, or N
    double Delta() const;      // cos gamma in root-of-unity mode
    cx gamma() const;          // acos(Delta); imaginary for |Delta| > 1
    double right_rate() const; // eps, except (N-1)^2 eps for SUN
};

// Validates ranges, coprimality of (l,m), and kind/parameter consistency.
// Throws std::invalid_argument with a description on violation.
ChainModel make_model(ModelKind kind, int n, std::optional<double> delta,
                      std::optional<std::pair<int, int>> gamma_frac,
                      double eps, double theta = 0.0, int N = 2, double mu = 0.0);

// ------------------------------------------------------- many-body operators

struct ManyBodyOperator {
    int n = 0;
    int d = 2;
    bool hermitian = false;
    SpMat mat;

    long dim() const { return ipow(d, n); }
    CMat dense() const { return CMat(mat); }
};

// Largest-magnitude deviation from hermiticity relative to the largest entry.
double hermiticity_defect(const SpMat& a);

// 1_{d^{x-1}} (x) op (x) 1_{d^{n-x}}, site index x in 1..n.
ManyBodyOperator embed_site(const CMat& op, int x, int n, int d);
ManyBodyOperator embed_site(const CMat& op, int x, const ChainModel& model);

// Two-site operator on the bond (x, x+1), x in 1..n-1.
ManyBodyOperator embed_bond(const CMat& op, int x, int n, int d);

// Local interaction density h_{x,x+1} as a d^2 x d^2 matrix.
CMat interaction_density(const ChainModel& model);

// Open-chain Hamiltonian: sum of n-1 two-site densities.
ManyBodyOperator build_hamiltonian(const ChainModel& model);

// Current density on one bond as a d^2 x d^2 matrix. For d=2 this is the
// spin current j = 4i(e^{i theta} s+ (x) s- - e^{-i theta} s- (x) s+); for
// d>=3 supply the species pair (i,j) of the antisymmetric current tensor
// J^{ij} = i(e^{ij} (x) e^{ji} - e^{ji} (x) e^{ij}).
CMat current_density(const ChainModel& model, std::optional<std::pair<int, int>> species = {});

// Embedded current operator on bond (x, x+1). For d >= 3 and species = (i,0)
// returns the total species-i current, i.e. the sum over j of J^{ij}.
ManyBodyOperator build_current(const ChainModel& model, int x,
                               std::optional<std::pair<int, int>> species = {});

// Conserved on-site charge matching build_current's continuity equation:
// sigma^z for d=2, e^{ii} - e^{jj} for a species pair.
CMat charge_density(const ChainModel& model, std::optional<std::pair<int, int>> species = {});

// Total magnetization sum_x sigma^z_x (d=2) or a summed local charge (d>=3).
ManyBodyOperator total_charge(const ChainModel& model, const CMat& site_op);

// Number of holes sum_x e^{22}_x (Lai-Sutherland strong symmetry).
ManyBodyOperator hole_number(const ChainModel& model);

}  // namespace ness

#pragma once

// =========================================================================
// Brute-force ground truth: Liouvillian superoperator assembly, null-space
// (steady-state) extraction, spectral-gap estimation, and time propagation.
// =========================================================================

#include <string>
#include <vector>

#include "ness/chain.hpp"

namespace ness {

// One incoherent boundary process: site-local operator, site, and the
// standard-form rate entering rate * (A rho A' - 1/2 {A'A, rho}).
struct LindbladChannel {
    CMat op;
    int site = 1;
    double rate = 1.0;
};

// Polarizing boundary channels for each model kind, with the rates the exact
// solutions are parameterized by (left rate eps; right rate model-dependent).
std::vector<LindbladChannel> default_channels(const ChainModel& model);

struct Liouvillian {
    SpMat mat;                 // d^{2n} x d^{2n}, acts on vec(rho)
    int n = 0;
    int d = 2;
    long hdim = 0;             // d^n
    std::string vectorization = "column-stacking";  // vec(A rho B) = (B^T kron A) vec(rho)
    ChainModel model;          // kept for symmetry-aware solving
};

// Assembles -i[H,.] plus the channel dissipators. Guard rails: n <= 7 for
// d = 2 and n <= 4 for d >= 3; channels must sit on boundary sites.
Liouvillian build_liouvillian(const ChainModel& model,
                              const std::vector<LindbladChannel>& channels);

struct SteadyStateSet {
    std::vector<CMat> states;        // hermitized, trace-normalized
    int null_dimension = 0;
    std::vector<double> residuals;   // ||L vec(rho)|| / ||vec(rho)|| per state
    std::vector<double> min_eigs;    // smallest eigenvalue per state
    int traceless_null_count = 0;    // null vectors outside diagonal symmetry blocks
};

// Full null space of L via conserved-charge block decomposition and dense
// SVD per block. Singular values below rank_tol * sigma_max count as null.
SteadyStateSet solve_ness(const Liouvillian& L, double rank_tol = 1e-8);

// Fixed-step 4th-order propagation of vec(rho); step count is doubled until
// the trace drifts by less than trace_tol (reported via the return's trace).
CMat evolve(const Liouvillian& L, const CMat& rho0, double t, int steps,
            double trace_tol = 1e-9);

// Magnitude of the real part of the slowest nonzero eigenvalue, estimated by
// Arnoldi iteration on the shifted inverse with the exact null pair deflated.
double spectral_gap(const Liouvillian& L, const CMat& ness_state);

// Column-stacking helpers.
CVec mat_to_vec(const CMat& m);
CMat vec_to_mat(const CVec& v, long rows);

// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 for trace-1
// hermitian PSD inputs; negative eigenvalues are clamped to zero.
double state_fidelity(const CMat& rho, const CMat& sigma);

}  // namespace ness

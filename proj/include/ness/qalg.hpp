#pragma once

// =========================================================================
// Auxiliary-space representations: symmetric q-numbers, truncated Verma
// ladders of the (deformed) spin algebra, and restricted gl_N generators
// realized on a capped monomial basis.
// =========================================================================

#include <map>
#include <string>
#include <vector>

#include "ness/types.hpp"

namespace ness {

// Symmetric q-number [x]_q = sin(gamma x)/sin(gamma); the gamma -> 0 limit
// returns x itself. Throws when sin(gamma) = 0 for nonzero gamma.
cx q_number(cx x, double gamma);

// Ladder direction: which extremal vector sits at index 0.
//  - LowestWeight:  s^- |0> = 0; s^z = diag(k - p); s^+ climbs the index.
//  - HighestWeight: s^+ |0> = 0; s^z = diag(p - k); s^- climbs the index.
enum class LadderConvention { LowestWeight, HighestWeight };

enum class RepKind { VermaQ, VermaClassical, GlN, TildeSpin };

// ExactTruncation: the kept block reproduces the infinite ladder for every
// use it is built for (closed ladder, vanishing exit amplitude, or a declared
// contraction length the ladder cannot outgrow). Capped: plain cutoff.
enum class Exactness { ExactTruncation, Capped };

struct AuxRep {
    RepKind kind = RepKind::VermaQ;
    LadderConvention convention = LadderConvention::LowestWeight;
    double gamma = 0.0;        // deformation; 0 means classical
    cx p{};                    // complex spin (ladder kinds)
    int N = 2;                 // component count (gl_N)
    std::vector<cx> r;         // gl_N weight vector (r_0 .. r_{N-1})
    int D = 0;                 // kept auxiliary dimension
    Exactness exactness = Exactness::Capped;
    std::map<std::string, CMat> gens;
    std::vector<std::vector<int>> monomials;  // gl_N basis exponents

    const CMat& gen(const std::string& name) const;  // throws on unknown
};

// Truncated Verma ladder of the deformed spin algebra (classical at
// gamma = 0), with generators keyed "sz", "sp", "sm":
//   LowestWeight:  s^z = diag(k-p), s^+|k> = [2p-k]|k+1>, s^-|k> = [k]|k-1>;
//   HighestWeight: s^z = diag(p-k), s^+|k> = [k]|k-1>,    s^-|k> = [2p-k]|k+1>.
// declared_sites > 0 marks the truncation exact for vacuum-to-vacuum
// contractions of that length (a closed walk climbs at most floor(n/2) rungs).
// require_exact rejects parameter sets with no exactness mechanism.
AuxRep build_verma_q(double gamma, cx p, int D,
                     LadderConvention conv = LadderConvention::LowestWeight,
                     int declared_sites = 0, bool require_exact = false);
AuxRep build_verma_classical(cx p, int D,
                             LadderConvention conv = LadderConvention::LowestWeight,
                             int declared_sites = 0, bool require_exact = false);

// Restricted gl_N generators on monomials in x_1..x_{N-1} of total degree
// <= cap, with only the extremal weights (r_0, r_{N-1}) switched on:
//   E^{ij} = x_i d_j (i != j < N),   E^{ii} = N_i + r_0 (i < N),
//   E^{Ni} = d_i,                    E^{iN} = x_i (r_{N-1} - sum_j N_j),
//   E^{NN} = r_0 + r_{N-1} - sum_i N_i.
// Generators are keyed "E_i_j" with 1-based component indices.
AuxRep build_gl_n(int N, cx r0, cx r_last, int cap, int declared_sites = 0);

// Quadratic Casimir of the ladder kinds; acts as [p]_q [p+1]_q on the
// truncation interior.
CMat casimir(const AuxRep& rep);

// Largest interior residual of the defining relations: for ladder kinds,
// [s^+,s^-] - [2 s^z]_q restricted to rows/columns 0..D-2; for gl_N, all
// [E^{ij},E^{kl}] - d_{jk} E^{il} + d_{li} E^{kj} restricted to states at
// least two degrees below the cap.
double commutation_defect(const AuxRep& rep);

// Bosonic ladder pair on a D-state mode in the polynomial normalization
// b = d/dx, b^dag = x: b|j> = j|j-1>, b^dag|j> = |j+1>, [b, b^dag] = 1.
// Closed two-sided contractions are insensitive to this choice of gauge.
CMat boson_lower(int D);
CMat boson_raise(int D);

}  // namespace ness

#include "ness/lax.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>


namespace ness {

namespace {

// Real anisotropy angle of a gapless model.  The grid amplitudes are
// trigonometric in gamma, so a gapped chain (|Delta| > 1, imaginary angle)
// has no driven solution of this form and is rejected up front.
double real_gamma(const ChainModel& model) {
    const cx g = model.gamma();
    if (std::abs(g.imag()) > 1e-12) {
        throw std::invalid_argument(
            "build_lax: anisotropy Delta = " + std::to_string(model.Delta())
            + " lies outside [-1, 1]; the driven solution grid exists only in "
              "the gapless regime");
    }
    return g.real();
}

CMat aux_identity(int D) { return CMat::Identity(D, D); }

// Diagonal matrix from a per-rung amplitude.
template <typename F>
CMat diag_amp(int D, F amp) {
    CMat m = CMat::Zero(D, D);
    for (int k = 0; k < D; ++k) m(k, k) = amp(k);
    return m;
}

// Grid of the untwisted spin-1/2 Lax operator over a lowest-weight ladder:
// the coefficient of e^{ij} acting on the auxiliary space.
std::vector<CMat> spin_half_grid(const AuxRep& rep, double gamma, cx p) {
    const int D = rep.D;
    const CMat zq = diag_amp(D, [&](int k) { return q_number(cx(double(k)) - p, gamma); });
    std::vector<CMat> G(4);
    G[0 * 2 + 0] = zq;               // diag [k - p]
    G[0 * 2 + 1] = rep.gen("sm");    // drop  k -> k-1
    G[1 * 2 + 0] = rep.gen("sp");    // climb k -> k+1
    G[1 * 2 + 1] = -zq;              // diag [p - k]
    return G;
}

// Boundary grid paired with the spin-1/2 solution: both diagonal slots carry
// -2 cos(gamma (k - p)) and the off-diagonal slots vanish.
std::vector<CMat> spin_half_boundary(double gamma, cx p, int D) {
    std::vector<CMat> B(4);
    const CMat bdiag =
        diag_amp(D, [&](int k) { return -2.0 * std::cos(cx(gamma) * (cx(double(k)) - p)); });
    B[0 * 2 + 0] = bdiag;
    B[0 * 2 + 1] = CMat::Zero(D, D);
    B[1 * 2 + 0] = CMat::Zero(D, D);
    B[1 * 2 + 1] = bdiag;
    return B;
}

}  // namespace

const CMat& LaxOperator::block(int i, int j) const {
    if (i < 0 || i >= d || j < 0 || j >= d) {
        throw std::out_of_range(
            "LaxOperator::block: index (" + std::to_string(i) + ", " + std::to_string(j)
            + ") outside the " + std::to_string(d) + "x" + std::to_string(d) + " grid");
    }
    return G[static_cast<std::size_t>(i) * d + j];
}

const CMat& LaxOperator::boundary_block(int i, int j) const {
    if (!has_boundary()) {
        throw std::logic_error("LaxOperator::boundary_block: no boundary grid stored");
    }
    if (i < 0 || i >= d || j < 0 || j >= d) {
        throw std::out_of_range(
            "LaxOperator::boundary_block: index (" + std::to_string(i) + ", "
            + std::to_string(j) + ") outside the " + std::to_string(d) + "x"
            + std::to_string(d) + " grid");
    }
    return B[static_cast<std::size_t>(i) * d + j];
}

int default_bond_cap(int n) {
    if (n < 1) throw std::invalid_argument("default_bond_cap: need n >= 1");
    return n / 2 + 2;
}

int bond_cap(const ChainModel& model, int n) {
    const int cap = default_bond_cap(n);
    if (model.root_of_unity && model.site_dim() == 2) {
        // At gamma = pi l / m the amplitude [m]_q vanishes, so every walk
        // that would leave the first m rungs carries weight zero and the
        // ladder may be clipped there without loss.
        return std::min(cap, model.m);
    }
    return cap;
}

cx eps_from_spin(double gamma, cx p) {
    if (std::abs(p) < 1e-14) throw std::invalid_argument("eps_from_spin: p must be nonzero");
    if (gamma == 0.0) return 4.0 * I_UNIT / p;
    const cx gp = cx(gamma) * p;
    const cx s = std::sin(gp);
    if (std::abs(s) < 1e-14) {
        throw std::invalid_argument("eps_from_spin: sin(gamma p) vanishes; coupling diverges");
    }
    return 4.0 * I_UNIT * std::sin(gamma) * std::cos(gp) / s;
}

cx spin_from_eps(double gamma, double eps) {
    if (eps == 0.0) throw std::invalid_argument("spin_from_eps: coupling must be nonzero");
    if (gamma == 0.0) return 4.0 * I_UNIT / cx(eps);

    // cot(gamma p) = -i eps / (4 sin gamma) has two closed-form branches.
    // Strong driving (w > 1) continues the isotropic solution 4i/eps down the
    // imaginary axis; weak driving (w < 1) sits on Re(gamma p) = pi/2.  The
    // branches meet only asymptotically, so eps = 4 sin gamma is rejected.
    const double w = std::abs(eps) / (4.0 * std::sin(gamma));
    if (std::abs(w - 1.0) < 1e-12) {
        throw std::invalid_argument(
            "spin_from_eps: eps = 4 sin(gamma) is the branch point of the coupling map");
    }
    cx seed;
    if (w > 1.0) {
        seed = I_UNIT * std::atanh(1.0 / w) / gamma;
    } else {
        seed = cx(M_PI / (2.0 * gamma), std::atanh(w) / gamma);
    }
    if (eps < 0.0) seed = -seed;

    // Newton polish on f(p) = 4i sin(gamma) cot(gamma p) - eps.
    cx p = seed;
    const double tol = 1e-13 * std::max(1.0, std::abs(eps));
    for (int iter = 0; iter < 100; ++iter) {
        const cx gp = cx(gamma) * p;
        const cx s = std::sin(gp);
        if (std::abs(s) < 1e-300) break;
        const cx f = 4.0 * I_UNIT * std::sin(gamma) * std::cos(gp) / s - eps;
        if (std::abs(f) < tol) return p;
        const cx df = -4.0 * I_UNIT * cx(gamma) * std::sin(gamma) / (s * s);
        p -= f / df;
    }
    throw std::runtime_error("spin_from_eps: Newton iteration did not converge for gamma = "
                             + std::to_string(gamma) + ", eps = " + std::to_string(eps));
}

std::vector<cx> spin_roots_in_box(double gamma, double eps, double re_lo, double re_hi,
                                  double im_lo, double im_hi, int seeds_per_axis) {
    if (seeds_per_axis < 2) throw std::invalid_argument("spin_roots_in_box: need >= 2 seeds/axis");
    std::vector<cx> roots;
    const double tol = 1e-10 * std::max(1.0, std::abs(eps));
    for (int a = 0; a < seeds_per_axis; ++a) {
        for (int b = 0; b < seeds_per_axis; ++b) {
            const double fr = (a + 0.5) / seeds_per_axis;
            const double fi = (b + 0.5) / seeds_per_axis;
            cx p(re_lo + fr * (re_hi - re_lo), im_lo + fi * (im_hi - im_lo));
            bool ok = false;
            for (int iter = 0; iter < 80; ++iter) {
                const cx gp = cx(gamma) * p;
                const cx s = std::sin(gp);
                if (!std::isfinite(std::abs(p)) || std::abs(s) < 1e-300) break;
                const cx f = 4.0 * I_UNIT * std::sin(gamma) * std::cos(gp) / s - eps;
                if (std::abs(f) < tol) {
                    ok = true;
                    break;
                }
                const cx df = -4.0 * I_UNIT * cx(gamma) * std::sin(gamma) / (s * s);
                p -= f / df;
            }
            if (!ok) continue;
            if (p.real() < re_lo - 1e-9 || p.real() > re_hi + 1e-9 || p.imag() < im_lo - 1e-9 ||
                p.imag() > im_hi + 1e-9) {
                continue;
            }
            const bool seen = std::any_of(roots.begin(), roots.end(),
                                          [&](cx q) { return std::abs(q - p) < 1e-7; });
            if (!seen) roots.push_back(p);
        }
    }
    std::sort(roots.begin(), roots.end(), [](cx a, cx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

namespace {

LaxOperator build_spin_half_lax(const ChainModel& model, int n, int D) {
    const double gamma = real_gamma(model);
    LaxOperator lax;
    lax.d = 2;
    lax.D = D;
    lax.gauge = LaxGauge::Verma;
    lax.kind = model.kind;
    lax.gamma = gamma;
    lax.eps = model.eps;
    lax.theta = model.theta;
    lax.sites = n;
    lax.p = spin_from_eps(gamma, model.eps);

    AuxRep rep = (gamma == 0.0)
                     ? build_verma_classical(lax.p, D, LadderConvention::LowestWeight, n)
                     : build_verma_q(gamma, lax.p, D, LadderConvention::LowestWeight, n);
    lax.exact = rep.exactness == Exactness::ExactTruncation;
    lax.aux_factors = {D};
    lax.G = spin_half_grid(rep, gamma, lax.p);
    lax.B = spin_half_boundary(gamma, lax.p, D);

    if (model.kind == ModelKind::XXZTwisted && model.theta != 0.0) {
        // Flux-twisted grid: each letter picks up a diagonal phase built from
        // exp(i theta s^z), with a half-unit shift on the off-diagonal slots.
        const double th = model.theta;
        const cx p = lax.p;
        const CMat phase_z =
            diag_amp(D, [&](int k) { return std::exp(I_UNIT * cx(th) * (cx(double(k)) - p)); });
        const CMat phase_half = diag_amp(D, [&](int k) {
            return std::exp(I_UNIT * cx(th) * (cx(double(k)) - p + 0.5));
        });
        lax.G[0] = std::exp(-I_UNIT * cx(th / 2.0)) * (lax.G[0] * phase_z);
        lax.G[1] = phase_half * lax.G[1];
        lax.G[2] = lax.G[2] * phase_half;
        lax.G[3] = std::exp(I_UNIT * cx(th / 2.0)) * (lax.G[3] * phase_z);
        // The boundary grid is flux independent.
    }

    lax.lvac = CVec::Unit(D, 0);
    lax.rvac = CVec::Unit(D, 0);
    return lax;
}

LaxOperator build_sun_lax_impl(const ChainModel& model, int n, int D, bool reversed) {
    const int N = model.N;
    // The component-permutation interaction carries half the exchange
    // normalization of the spin-1/2 chain, so the standard-form rate eps
    // drives it twice as hard: the grid weights balance the edge commutator
    // at an effective coupling of 2 eps (certified against the dense
    // generator, which is sensitive to exactly this factor).
    const double eps_grid = 2.0 * model.eps;
    cx r0 = -4.0 * I_UNIT / (eps_grid * double((N - 1) * (N - 1)));
    cx r_last = -double(N) * r0;
    if (reversed) {
        r0 = -r0;
        r_last = -r_last;
    }

    const int cap = D - 1;  // monomial total degree bound
    AuxRep rep = build_gl_n(N, r0, r_last, cap, n);

    LaxOperator lax;
    lax.d = N;
    lax.D = static_cast<int>(rep.gens.at("E_1_1").rows());
    lax.gauge = LaxGauge::Verma;
    lax.kind = model.kind;
    lax.gamma = 0.0;
    lax.eps = model.eps;
    lax.coupling = cx(eps_grid);
    lax.sites = n;
    lax.r = {r0, r_last};
    lax.exact = rep.exactness == Exactness::ExactTruncation;
    lax.aux_factors = {lax.D};
    lax.aux_monomials = rep.monomials;

    // Grid slot (i, j) carries the generator E^{ji}; reversal additionally
    // transposes the physical indices of the grid.
    lax.G.resize(static_cast<std::size_t>(N) * N);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            const int gi = reversed ? j : i;
            const int gj = reversed ? i : j;
            lax.G[static_cast<std::size_t>(gi) * N + gj] =
                rep.gen("E_" + std::to_string(j + 1) + "_" + std::to_string(i + 1));
        }
    }

    // The boundary operator of the gl interchange relation is -identity.
    lax.B.resize(static_cast<std::size_t>(N) * N);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            lax.B[static_cast<std::size_t>(i) * N + j] =
                (i == j) ? CMat(-aux_identity(lax.D)) : CMat(CMat::Zero(lax.D, lax.D));
        }
    }

    lax.lvac = CVec::Unit(lax.D, 0);
    lax.rvac = CVec::Unit(lax.D, 0);
    return lax;
}

LaxOperator build_ls_lax(const ChainModel& model, int n, int c) {
    // As in the spin-1/2 symmetric gauge, the grid's own coupling is half the
    // standard-form rate: only eta = i eps/2 makes rho = S S^dag annihilate
    // the dense generator.
    const double eps_grid = model.eps / 2.0;
    const cx eta = I_UNIT * cx(eps_grid);
    const cx p = 0.5 + I_UNIT / cx(eps_grid);
    const int D = c * c * c;

    // Auxiliary space: two bosonic modes (polynomial normalization, so all
    // amplitudes stay integral) tensored with a highest-weight ladder.
    const CMat bu_lo = kron(kron(boson_lower(c), aux_identity(c)), aux_identity(c));
    const CMat bu_hi = kron(kron(boson_raise(c), aux_identity(c)), aux_identity(c));
    const CMat bd_lo = kron(kron(aux_identity(c), boson_lower(c)), aux_identity(c));
    const CMat bd_hi = kron(kron(aux_identity(c), boson_raise(c)), aux_identity(c));
    AuxRep verma = build_verma_classical(p, c, LadderConvention::HighestWeight, n);
    const CMat sp = kron(kron(aux_identity(c), aux_identity(c)), verma.gen("sp"));
    const CMat sm = kron(kron(aux_identity(c), aux_identity(c)), verma.gen("sm"));
    const CMat sz = kron(kron(aux_identity(c), aux_identity(c)), verma.gen("sz"));
    const CMat nu = bu_hi * bu_lo;
    const CMat nd = bd_hi * bd_lo;
    const CMat id = CMat::Identity(D, D);

    LaxOperator lax;
    lax.d = 3;
    lax.D = D;
    lax.gauge = LaxGauge::Verma;
    lax.kind = model.kind;
    lax.gamma = 0.0;
    lax.eps = model.eps;
    lax.coupling = eta / I_UNIT;
    lax.mu = model.mu;
    lax.p = p;
    lax.sites = n;
    lax.exact = c - 1 >= n / 2;
    lax.aux_factors = {c, c, c};

    lax.G.resize(9);
    lax.G[0 * 3 + 0] = eta * (nu + 0.5 * id - sz);
    lax.G[0 * 3 + 1] = bu_lo;
    lax.G[0 * 3 + 2] = eta * (bu_lo * bd_lo + sp);
    lax.G[1 * 3 + 0] = eta * bu_hi;
    lax.G[1 * 3 + 1] = id;
    lax.G[1 * 3 + 2] = eta * bd_lo;
    lax.G[2 * 3 + 0] = eta * (bu_hi * bd_hi - sm);
    lax.G[2 * 3 + 1] = bd_hi;
    lax.G[2 * 3 + 2] = eta * (nd + 0.5 * id - sz);

    if (model.mu != 0.0) {
        // Chemical-potential dressing: the hole row of the grid is scaled by
        // exp(mu/2), which multiplies each fixed-hole-number block of rho by
        // exp(mu nu) once left and right factors combine.
        const cx w = std::exp(cx(model.mu / 2.0));
        for (int j = 0; j < 3; ++j) lax.G[1 * 3 + j] *= w;
    }

    // Boundary grid of the interchange relation: -i eps_grid diag(1, 0, -1)
    // on the physical leg, identity on the auxiliary one.
    lax.B.assign(9, CMat::Zero(D, D));
    lax.B[0 * 3 + 0] = -I_UNIT * cx(eps_grid) * id;
    lax.B[2 * 3 + 2] = I_UNIT * cx(eps_grid) * id;

    lax.lvac = CVec::Unit(D, 0);
    lax.rvac = CVec::Unit(D, 0);
    return lax;
}

}  // namespace

LaxOperator build_lax(const ChainModel& model, int n, int D) {
    if (n < 1) throw std::invalid_argument("build_lax: need n >= 1");
    const int cap = (D == 0) ? bond_cap(model, n) : D;
    if (cap < 2) throw std::invalid_argument("build_lax: bond cap must be >= 2");
    switch (model.kind) {
        case ModelKind::XXX:
        case ModelKind::XXZ:
        case ModelKind::XXZTwisted:
            return build_spin_half_lax(model, n, cap);
        case ModelKind::SUN:
            return build_sun_lax_impl(model, n, cap, /*reversed=*/false);
        case ModelKind::LaiSutherland:
            return build_ls_lax(model, n, cap);
    }
    throw std::logic_error("build_lax: unhandled model kind");
}

LaxOperator build_sun_reversed(const ChainModel& model, int n, int D) {
    if (model.kind != ModelKind::SUN) {
        throw std::invalid_argument("build_sun_reversed: model must be an SU(N) chain");
    }
    if (n < 1) throw std::invalid_argument("build_sun_reversed: need n >= 1");
    const int cap = (D == 0) ? bond_cap(model, n) : D;
    return build_sun_lax_impl(model, n, cap, /*reversed=*/true);
}

SymmetricAmplitudes symmetric_amplitudes(double delta, cx eps, int D) {
    if (D < 2) throw std::invalid_argument("symmetric_amplitudes: need D >= 2");
    // Chebyshev families t_k (first kind) and u_k (second kind) in Delta.
    std::vector<double> t(D + 1), u(D + 1);
    t[0] = 1.0;
    u[0] = 1.0;
    if (D >= 1) {
        t[1] = delta;
        u[1] = 2.0 * delta;
    }
    for (int k = 2; k <= D; ++k) {
        t[k] = 2.0 * delta * t[k - 1] - t[k - 2];
        u[k] = 2.0 * delta * u[k - 1] - u[k - 2];
    }

    SymmetricAmplitudes amp;
    amp.a.resize(D + 1);
    const cx half_eps = 0.5 * I_UNIT * eps;
    for (int k = 0; k <= D; ++k) {
        amp.a[k] = cx(t[k]) + half_eps * (k >= 1 ? cx(u[k - 1]) : cx(0.0));
    }
    amp.b.resize(D - 1);
    if (D >= 2) {
        amp.b[0] = I_UNIT * eps;
        for (int k = 1; k + 1 < D; ++k) {
            amp.b[k] = amp.b[k - 1] + amp.a[k + 1] * amp.a[k] - amp.a[k] * amp.a[k - 1];
        }
    }
    return amp;
}

LaxOperator build_symmetric_lax(double delta, cx eps, int D, bool dyadic_scale) {
    const SymmetricAmplitudes amp = symmetric_amplitudes(delta, eps, D);
    LaxOperator lax;
    lax.d = 2;
    lax.D = D;
    lax.gauge = LaxGauge::Symmetric;
    lax.kind = delta == 1.0 ? ModelKind::XXX : ModelKind::XXZ;
    lax.gamma = std::abs(delta) <= 1.0 ? std::acos(delta) : 0.0;
    lax.coupling = eps;
    lax.sites = 0;
    lax.exact = false;
    lax.aux_factors = {D};

    CMat a0 = diag_amp(D, [&](int k) { return amp.a[k]; });
    CMat ap = CMat::Zero(D, D);
    for (int k = 0; k + 1 < D; ++k) ap(k, k + 1) = amp.b[k];
    CMat am = CMat::Zero(D, D);
    for (int k = 0; k + 1 < D; ++k) am(k + 1, k) = 1.0;
    if (dyadic_scale) {
        // Doubling every letter scales an n-site amplitude by 2^n and clears
        // the halves from the Chebyshev data, leaving Gaussian integers.
        a0 *= 2.0;
        ap *= 2.0;
        am *= 2.0;
    }
    lax.G = {a0, ap, am, a0};

    // Divergence-condition boundary grid: sigma^z on the physical leg.
    lax.B = {CMat(CMat::Identity(D, D)), CMat(CMat::Zero(D, D)), CMat(CMat::Zero(D, D)),
             CMat(-CMat::Identity(D, D))};

    lax.lvac = CVec::Unit(D, 0);
    lax.rvac = CVec::Unit(D, 0);
    return lax;
}

LaxOperator build_triangular_lax(cx p, int D) {
    if (D < 2) throw std::invalid_argument("build_triangular_lax: need D >= 2");
    LaxOperator lax;
    lax.d = 2;
    lax.D = D;
    lax.gauge = LaxGauge::Triangular;
    lax.kind = ModelKind::XXX;
    lax.gamma = 0.0;
    lax.p = p;
    lax.sites = 0;
    lax.exact = false;
    lax.aux_factors = {D};

    CMat a0 = diag_amp(D, [&](int k) { return p - cx(double(k)); });
    CMat ap = CMat::Zero(D, D);
    for (int k = 0; k + 1 < D; ++k) ap(k, k + 1) = cx(double(k)) - 2.0 * p;
    CMat am = CMat::Zero(D, D);
    for (int k = 0; k + 1 < D; ++k) am(k + 1, k) = double(k + 1);
    lax.G = {a0, ap, am, a0};

    lax.lvac = CVec::Unit(D, 0);
    lax.rvac = CVec::Unit(D, 0);
    return lax;
}

}  // namespace ness

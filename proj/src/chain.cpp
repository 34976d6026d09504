#include "ness/chain.hpp"

#include <cmath>
#include <numeric>

namespace ness {

// ---------------------------------------------------------------- site basis

CMat sigma0() { return CMat::Identity(2, 2); }

CMat sigmax() {
    CMat s(2, 2);
    s << 0, 1, 1, 0;
    return s;
}

CMat sigmay() {
    CMat s(2, 2);
    s << 0, -I_UNIT, I_UNIT, 0;
    return s;
}

CMat sigmaz() {
    CMat s(2, 2);
    s << 1, 0, 0, -1;
    return s;
}

CMat sigmap() {
    CMat s = CMat::Zero(2, 2);
    s(0, 1) = 1;
    return s;
}

CMat sigmam() {
    CMat s = CMat::Zero(2, 2);
    s(1, 0) = 1;
    return s;
}

CMat weyl(int N, int i, int j) {
    if (i < 1 || i > N || j < 1 || j > N)
        throw std::invalid_argument("weyl: index out of range");
    CMat e = CMat::Zero(N, N);
    e(i - 1, j - 1) = 1;
    return e;
}

CMat spin1_z() {
    CMat s = CMat::Zero(3, 3);
    s(0, 0) = 1;
    s(2, 2) = -1;
    return s;
}

CMat spin1_plus() {
    const double r2 = std::sqrt(2.0);
    CMat s = CMat::Zero(3, 3);
    s(0, 1) = r2;
    s(1, 2) = r2;
    return s;
}

CMat spin1_minus() { return spin1_plus().adjoint(); }

CMat spin1_comp(int a) {
    switch (a) {
        case 1: return 0.5 * (spin1_plus() + spin1_minus());
        case 2: return -0.5 * I_UNIT * (spin1_plus() - spin1_minus());
        case 3: return spin1_z();
        default: throw std::invalid_argument("spin1_comp: component must be 1, 2, or 3");
    }
}

SiteBasis::SiteBasis(int d_) : d(d_) {
    if (d != 2 && d != 3) throw std::invalid_argument("SiteBasis: only d = 2 or 3");
}

CMat SiteBasis::op(const std::string& name) const {
    if (d == 2) {
        if (name == "sigma0" || name == "id") return sigma0();
        if (name == "sigmax") return sigmax();
        if (name == "sigmay") return sigmay();
        if (name == "sigmaz") return sigmaz();
        if (name == "sigma+") return sigmap();
        if (name == "sigma-") return sigmam();
    } else {
        if (name == "id") return CMat::Identity(3, 3);
        if (name == "sz") return spin1_z();
        if (name == "s+") return spin1_plus();
        if (name == "s-") return spin1_minus();
        if (name == "s1") return spin1_comp(1);
        if (name == "s2") return spin1_comp(2);
        if (name == "s3") return spin1_comp(3);
        if (name.size() == 3 && name[0] == 'e')  // e.g. "e12" -> |1><2|
            return weyl(d, name[1] - '0', name[2] - '0');
    }
    throw std::invalid_argument("SiteBasis: unknown operator name '" + name + "'");
}

// -------------------------------------------------------------- chain model

int ChainModel::site_dim() const {
    switch (kind) {
        case ModelKind::SUN: return N;
        case ModelKind::LaiSutherland: return 3;
        default: return 2;
    }
}

double ChainModel::Delta() const {
    if (root_of_unity) return std::cos(M_PI * static_cast<double>(l) / m);
    return delta;
}

cx ChainModel::gamma() const {
    if (root_of_unity) return cx(M_PI * static_cast<double>(l) / m, 0.0);
    // acos continues to imaginary gamma in the easy-axis regime |Delta| > 1.
    return std::acos(cx(delta, 0.0));
}

double ChainModel::right_rate() const {
    if (kind == ModelKind::SUN) return static_cast<double>(N - 1) * (N - 1) * eps;
    return eps;
}

ChainModel make_model(ModelKind kind, int n, std::optional<double> delta,
                      std::optional<std::pair<int, int>> gamma_frac,
                      double eps, double theta, int N, double mu) {
    if (n < 1) throw std::invalid_argument("make_model: n must be >= 1");
    if (eps <= 0) throw std::invalid_argument("make_model: coupling rate must be > 0");
    if (delta && gamma_frac)
        throw std::invalid_argument("make_model: give either Delta or (l,m), not both");
    if (theta != 0.0 && kind != ModelKind::XXZTwisted)
        throw std::invalid_argument("make_model: twist angle only valid for the twisted kind");

    ChainModel md;
    md.kind = kind;
    md.n = n;
    md.eps = eps;
    md.theta = theta;
    md.mu = mu;

    if (kind == ModelKind::SUN) {
        if (N < 2) throw std::invalid_argument("make_model: component count must be >= 2");
        md.N = N;
    }

    if (gamma_frac) {
        auto [l, m] = *gamma_frac;
        if (m < 1 || l < 1 || l >= m)
            throw std::invalid_argument("make_model: need 1 <= l < m");
        if (std::gcd(l, m) != 1)
            throw std::invalid_argument("make_model: (l,m) must be coprime");
        md.root_of_unity = true;
        md.l = l;
        md.m = m;
    } else if (delta) {
        md.delta = *delta;
    } else {
        md.delta = 1.0;  // isotropic default
    }

    if (kind == ModelKind::XXX && md.Delta() != 1.0)
        throw std::invalid_argument("make_model: the isotropic kind fixes Delta = 1");
    return md;
}

// ------------------------------------------------------- many-body operators

double hermiticity_defect(const SpMat& a) {
    SpMat diff = SpMat(a - SpMat(a.adjoint()));
    double mx = 0.0, scale = 0.0;
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpMat::InnerIterator it(a, k); it; ++it)
            scale = std::max(scale, std::abs(it.value()));
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SpMat::InnerIterator it(diff, k); it; ++it)
            mx = std::max(mx, std::abs(it.value()));
    return scale > 0 ? mx / scale : mx;
}

ManyBodyOperator embed_site(const CMat& op, int x, int n, int d) {
    if (x < 1 || x > n) throw std::invalid_argument("embed_site: site index out of range");
    if (op.rows() != d || op.cols() != d)
        throw std::invalid_argument("embed_site: operator dimension mismatch");
    SpMat res = kron(sparse_identity(ipow(d, x - 1)), to_sparse(op));
    res = kron(res, sparse_identity(ipow(d, n - x)));
    ManyBodyOperator out;
    out.n = n;
    out.d = d;
    out.hermitian = hermiticity_defect(to_sparse(op)) < 1e-14;
    out.mat = std::move(res);
    return out;
}

ManyBodyOperator embed_site(const CMat& op, int x, const ChainModel& model) {
    return embed_site(op, x, model.n, model.site_dim());
}

ManyBodyOperator embed_bond(const CMat& op, int x, int n, int d) {
    if (x < 1 || x > n - 1) throw std::invalid_argument("embed_bond: bond index out of range");
    if (op.rows() != d * d || op.cols() != d * d)
        throw std::invalid_argument("embed_bond: operator dimension mismatch");
    SpMat res = kron(sparse_identity(ipow(d, x - 1)), to_sparse(op));
    res = kron(res, sparse_identity(ipow(d, n - x - 1)));
    ManyBodyOperator out;
    out.n = n;
    out.d = d;
    out.hermitian = hermiticity_defect(to_sparse(op)) < 1e-14;
    out.mat = std::move(res);
    return out;
}

CMat interaction_density(const ChainModel& model) {
    const int d = model.site_dim();
    if (d == 2) {
        const cx phase = std::exp(I_UNIT * model.theta);
        CMat h = 2.0 * (phase * kron(sigmap(), sigmam()) + std::conj(phase) * kron(sigmam(), sigmap()))
               + model.Delta() * kron(sigmaz(), sigmaz());
        return h;
    }
    // Permutation interaction: P = sum_{ij} e^{ij} (x) e^{ji}.
    CMat h = CMat::Zero(d * d, d * d);
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) h += kron(weyl(d, i, j), weyl(d, j, i));
    return h;
}

ManyBodyOperator build_hamiltonian(const ChainModel& model) {
    const int d = model.site_dim();
    const CMat h = interaction_density(model);
    SpMat H(ipow(d, model.n), ipow(d, model.n));
    for (int x = 1; x <= model.n - 1; ++x) H += embed_bond(h, x, model.n, d).mat;
    ManyBodyOperator out;
    out.n = model.n;
    out.d = d;
    out.hermitian = true;
    out.mat = std::move(H);
    if (hermiticity_defect(out.mat) > 1e-12)
        throw std::runtime_error("build_hamiltonian: hermiticity defect beyond tolerance");
    return out;
}

CMat current_density(const ChainModel& model, std::optional<std::pair<int, int>> species) {
    const int d = model.site_dim();
    if (d == 2) {
        if (species) throw std::invalid_argument("current_density: species pair is a d >= 3 notion");
        const cx phase = std::exp(I_UNIT * model.theta);
        return 4.0 * I_UNIT
             * (phase * kron(sigmap(), sigmam()) - std::conj(phase) * kron(sigmam(), sigmap()));
    }
    if (!species) throw std::invalid_argument("current_density: species pair required for d >= 3");
    auto [i, j] = *species;
    if (i < 1 || i > d || j < 1 || j > d || i == j)
        throw std::invalid_argument("current_density: bad species pair");
    return I_UNIT * (kron(weyl(d, i, j), weyl(d, j, i)) - kron(weyl(d, j, i), weyl(d, i, j)));
}

ManyBodyOperator build_current(const ChainModel& model, int x,
                               std::optional<std::pair<int, int>> species) {
    const int d = model.site_dim();
    CMat jd;
    if (d >= 3 && species && species->second == 0) {
        // Total species current: J^i = sum_{j != i} J^{ij}.
        const int i = species->first;
        jd = CMat::Zero(d * d, d * d);
        for (int j = 1; j <= d; ++j)
            if (j != i) jd += current_density(model, std::make_pair(i, j));
    } else {
        jd = current_density(model, species);
    }
    return embed_bond(jd, x, model.n, d);
}

CMat charge_density(const ChainModel& model, std::optional<std::pair<int, int>> species) {
    const int d = model.site_dim();
    if (d == 2) return sigmaz();
    if (!species) throw std::invalid_argument("charge_density: species pair required for d >= 3");
    auto [i, j] = *species;
    if (j == 0) return weyl(d, i, i);
    return weyl(d, i, i) - weyl(d, j, j);
}

ManyBodyOperator total_charge(const ChainModel& model, const CMat& site_op) {
    const int d = model.site_dim();
    SpMat M(ipow(d, model.n), ipow(d, model.n));
    for (int x = 1; x <= model.n; ++x) M += embed_site(site_op, x, model.n, d).mat;
    ManyBodyOperator out;
    out.n = model.n;
    out.d = d;
    out.hermitian = hermiticity_defect(M) < 1e-12;
    out.mat = std::move(M);
    return out;
}

ManyBodyOperator hole_number(const ChainModel& model) {
    if (model.site_dim() != 3)
        throw std::invalid_argument("hole_number: defined for the three-component chain");
    return total_charge(model, weyl(3, 2, 2));
}

}  // namespace ness

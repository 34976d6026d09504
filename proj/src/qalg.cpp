#include "ness/qalg.hpp"

#include <cmath>
#include <stdexcept>

namespace ness {

namespace {

constexpr double kAmpTol = 1e-12;  // "this amplitude vanishes" threshold

// Ladder amplitude [x]_q with the classical branch folded in.
cx qnum(cx x, double gamma) { return q_number(x, gamma); }

// Closed vacuum-to-vacuum walks over n sites never climb above floor(n/2),
// so D states suffice once D - 1 >= floor(n/2).
bool length_exact(int D, int declared_sites) {
    return declared_sites > 0 && D - 1 >= declared_sites / 2;
}

}  // namespace

cx q_number(cx x, double gamma) {
    if (gamma == 0.0) return x;
    double s = std::sin(gamma);
    if (std::abs(s) < 1e-14)
        throw std::invalid_argument("q_number: sin(gamma) vanishes away from the classical point");
    return std::sin(gamma * x) / s;
}

const CMat& AuxRep::gen(const std::string& name) const {
    auto it = gens.find(name);
    if (it == gens.end()) throw std::invalid_argument("AuxRep::gen: unknown generator " + name);
    return it->second;
}

AuxRep build_verma_q(double gamma, cx p, int D, LadderConvention conv,
                     int declared_sites, bool require_exact) {
    if (D < 2) throw std::invalid_argument("build_verma_q: need at least two ladder states");
    AuxRep rep;
    rep.kind = gamma == 0.0 ? RepKind::VermaClassical : RepKind::VermaQ;
    rep.convention = conv;
    rep.gamma = gamma;
    rep.p = p;
    rep.D = D;

    CMat sz = CMat::Zero(D, D), sp = CMat::Zero(D, D), sm = CMat::Zero(D, D);
    const double zsign = conv == LadderConvention::LowestWeight ? 1.0 : -1.0;
    for (int k = 0; k < D; ++k) sz(k, k) = zsign * (cx(k) - p);
    for (int k = 0; k + 1 < D; ++k) {
        cx climb = qnum(2.0 * p - cx(k), gamma);  // leaves rung k upward
        cx drop = qnum(cx(k + 1), gamma);         // leaves rung k+1 downward
        if (conv == LadderConvention::LowestWeight) {
            sp(k + 1, k) = climb;
            sm(k, k + 1) = drop;
        } else {
            sm(k + 1, k) = climb;
            sp(k, k + 1) = drop;
        }
    }
    rep.gens["sz"] = sz;
    rep.gens["sp"] = sp;
    rep.gens["sm"] = sm;

    // Exactness: some climb amplitude inside the block vanishes (half-integer
    // spin closes the module; rungs past it are unreachable), the first
    // discarded drop amplitude vanishes (root-of-unity deformation, killing
    // every closed walk that would leave the block), or a declared length
    // bounds the climb.
    bool closes = false;
    for (int k = 0; k < D; ++k)
        closes = closes
                 || std::abs(qnum(2.0 * p - cx(k), gamma)) < kAmpTol * (1.0 + std::abs(p));
    bool dead_drop = std::abs(qnum(cx(D), gamma)) < kAmpTol;
    if (closes || dead_drop || length_exact(D, declared_sites))
        rep.exactness = Exactness::ExactTruncation;
    if (require_exact && rep.exactness != Exactness::ExactTruncation)
        throw std::invalid_argument(
            "build_verma_q: no vanishing amplitude or length bound makes this truncation exact");
    return rep;
}

AuxRep build_verma_classical(cx p, int D, LadderConvention conv,
                             int declared_sites, bool require_exact) {
    return build_verma_q(0.0, p, D, conv, declared_sites, require_exact);
}

AuxRep build_gl_n(int N, cx r0, cx r_last, int cap, int declared_sites) {
    if (N < 2) throw std::invalid_argument("build_gl_n: need at least two components");
    if (cap < 1) throw std::invalid_argument("build_gl_n: degree cap must be positive");
    AuxRep rep;
    rep.kind = RepKind::GlN;
    rep.N = N;
    rep.r.assign(N, cx{});
    rep.r.front() = r0;
    rep.r.back() = r_last;

    // Monomial basis x^a, a = (a_1..a_{N-1}), total degree <= cap, ordered by
    // degree then lexicographically; the constant monomial is the vacuum.
    const int vars = N - 1;
    std::vector<std::vector<int>> basis;
    std::vector<int> expo(vars, 0);
    for (int deg = 0; deg <= cap; ++deg) {
        // enumerate compositions of deg into `vars` parts
        std::fill(expo.begin(), expo.end(), 0);
        if (vars == 0) {
            if (deg == 0) basis.push_back(expo);
            continue;
        }
        expo[0] = deg;
        while (true) {
            basis.push_back(expo);
            // next composition in colex order
            int i = 0;
            while (i < vars && expo[i] == 0) ++i;
            if (i >= vars - 1) break;
            int carry = expo[i];
            expo[i] = 0;
            expo[i + 1] += 1;
            expo[0] = carry - 1;
        }
    }
    rep.monomials = basis;
    rep.D = static_cast<int>(basis.size());

    std::map<std::vector<int>, int> index;
    for (int a = 0; a < rep.D; ++a) index[basis[a]] = a;
    auto degree = [](const std::vector<int>& e) {
        int s = 0;
        for (int v : e) s += v;
        return s;
    };

    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            CMat E = CMat::Zero(rep.D, rep.D);
            for (int a = 0; a < rep.D; ++a) {
                const auto& e = basis[a];
                int deg = degree(e);
                if (i == j) {
                    E(a, a) = i < N ? cx(e[i - 1]) + r0 : r0 + r_last - cx(deg);
                } else if (i < N && j < N) {
                    // E^{ij} = x_i d_j
                    if (e[j - 1] > 0) {
                        auto f = e;
                        f[j - 1] -= 1;
                        f[i - 1] += 1;
                        E(index[f], a) = cx(e[j - 1]);
                    }
                } else if (i == N) {
                    // E^{Ni} = d_i
                    if (e[j - 1] > 0) {
                        auto f = e;
                        f[j - 1] -= 1;
                        E(index[f], a) = cx(e[j - 1]);
                    }
                } else {
                    // E^{iN} = x_i (r_{N-1} - sum_j N_j); degree cap drops the image
                    auto f = e;
                    f[i - 1] += 1;
                    auto it = index.find(f);
                    if (it != index.end()) E(it->second, a) = r_last - cx(deg);
                }
            }
            rep.gens["E_" + std::to_string(i) + "_" + std::to_string(j)] = E;
        }

    // The only degree-raising generators are the E^{iN}, so a closed walk
    // over n sites stays at total degree <= floor(n/2).
    if (length_exact(cap + 1, declared_sites)) rep.exactness = Exactness::ExactTruncation;
    return rep;
}

CMat casimir(const AuxRep& rep) {
    if (rep.kind != RepKind::VermaQ && rep.kind != RepKind::VermaClassical)
        throw std::invalid_argument("casimir: defined for the ladder kinds");
    const CMat& sz = rep.gen("sz");
    const CMat& sp = rep.gen("sp");
    const CMat& sm = rep.gen("sm");
    CMat shift = CMat::Zero(rep.D, rep.D);
    if (rep.convention == LadderConvention::LowestWeight) {
        for (int k = 0; k < rep.D; ++k)
            shift(k, k) = qnum(sz(k, k), rep.gamma) * qnum(sz(k, k) - 1.0, rep.gamma);
        return sp * sm + shift;
    }
    for (int k = 0; k < rep.D; ++k)
        shift(k, k) = qnum(sz(k, k), rep.gamma) * qnum(sz(k, k) + 1.0, rep.gamma);
    return sm * sp + shift;
}

double commutation_defect(const AuxRep& rep) {
    if (rep.kind == RepKind::GlN) {
        // Products of two generators raise the total degree by at most two,
        // so relations are exact on states at least two degrees below cap.
        auto degree = [&](int a) {
            int s = 0;
            for (int v : rep.monomials[a]) s += v;
            return s;
        };
        int cap = 0;
        for (int a = 0; a < rep.D; ++a) cap = std::max(cap, degree(a));
        std::vector<int> keep;
        for (int a = 0; a < rep.D; ++a)
            if (degree(a) <= cap - 2) keep.push_back(a);
        if (keep.empty()) return 0.0;

        auto restrict_to = [&](const CMat& m) {
            CMat out(keep.size(), keep.size());
            for (std::size_t a = 0; a < keep.size(); ++a)
                for (std::size_t b = 0; b < keep.size(); ++b) out(a, b) = m(keep[a], keep[b]);
            return out;
        };
        auto E = [&](int i, int j) -> const CMat& {
            return rep.gen("E_" + std::to_string(i) + "_" + std::to_string(j));
        };
        double worst = 0.0;
        for (int i = 1; i <= rep.N; ++i)
            for (int j = 1; j <= rep.N; ++j)
                for (int k = 1; k <= rep.N; ++k)
                    for (int l = 1; l <= rep.N; ++l) {
                        CMat lhs = E(i, j) * E(k, l) - E(k, l) * E(i, j);
                        if (j == k) lhs -= E(i, l);
                        if (l == i) lhs += E(k, j);
                        worst = std::max(worst, restrict_to(lhs).cwiseAbs().maxCoeff());
                    }
        return worst;
    }

    const CMat& sz = rep.gen("sz");
    CMat lhs = rep.gen("sp") * rep.gen("sm") - rep.gen("sm") * rep.gen("sp");
    for (int k = 0; k < rep.D; ++k) lhs(k, k) -= qnum(2.0 * sz(k, k), rep.gamma);
    int core = rep.D - 1;
    return lhs.topLeftCorner(core, core).cwiseAbs().maxCoeff();
}

CMat boson_lower(int D) {
    CMat b = CMat::Zero(D, D);
    for (int j = 1; j < D; ++j) b(j - 1, j) = cx(j);
    return b;
}

CMat boson_raise(int D) {
    CMat x = CMat::Zero(D, D);
    for (int j = 0; j + 1 < D; ++j) x(j + 1, j) = 1.0;
    return x;
}

}  // namespace ness

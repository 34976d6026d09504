#include "ness/mps.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <utility>


#include "ness/lindblad.hpp"

namespace ness {

namespace {

constexpr long kContractGuard = 1024;  // largest physical dimension d^n

// Row/column index pair encoded by a base-d^2 pair word: digit g at a site
// contributes (g / d) to the row index and (g % d) to the column index.
std::pair<long, long> split_pair_word(long w, int len, int d) {
    long row = 0, col = 0, place = 1;
    for (int x = 0; x < len; ++x) {
        const long g = w % (d * d);
        row += (g / d) * place;
        col += (g % d) * place;
        place *= d;
        w /= d * d;
    }
    return {row, col};
}

}  // namespace

// --------------------------------------------------------------- contract_s

ManyBodyOperator contract_s(const LaxOperator& lax, int n) {
    if (n < 1) throw std::invalid_argument("contract_s: need n >= 1");
    const int d = lax.d;
    const long dim = ipow(d, n);
    if (dim > kContractGuard) {
        throw std::invalid_argument("contract_s: d^n = " + std::to_string(dim)
                                    + " exceeds the dense guard of "
                                    + std::to_string(kContractGuard));
    }
    const int D = lax.D;
    const long d2 = static_cast<long>(d) * d;
    const int nL = n / 2;
    const int nR = n - nL;

    // Prefix rows <0| G ... G over every length-nL pair word.
    CMat left(1, D);
    left.row(0) = lax.lvac.transpose();
    for (int x = 0; x < nL; ++x) {
        CMat next(left.rows() * d2, D);
        for (long w = 0; w < left.rows(); ++w)
            for (long g = 0; g < d2; ++g) next.row(w * d2 + g) = left.row(w) * lax.G[g];
        left = std::move(next);
    }

    // Suffix columns G ... G |0> over every length-nR pair word, prepended so
    // the earliest site stays most significant.
    CMat right(D, 1);
    right.col(0) = lax.rvac;
    for (int x = 0; x < nR; ++x) {
        CMat next(D, right.cols() * d2);
        for (long g = 0; g < d2; ++g)
            for (long w = 0; w < right.cols(); ++w)
                next.col(g * right.cols() + w) = lax.G[g] * right.col(w);
        right = std::move(next);
    }

    const long WL = left.rows();
    const long WR = right.cols();
    std::vector<long> row_hi(WL), col_hi(WL), row_lo(WR), col_lo(WR);
    for (long w = 0; w < WL; ++w) std::tie(row_hi[w], col_hi[w]) = split_pair_word(w, nL, d);
    for (long w = 0; w < WR; ++w) std::tie(row_lo[w], col_lo[w]) = split_pair_word(w, nR, d);

    const long dimR = ipow(d, nR);
    CMat S = CMat::Zero(dim, dim);
    for (long wl = 0; wl < WL; ++wl) {
        for (long wr = 0; wr < WR; ++wr) {
            const cx val = (left.row(wl) * right.col(wr)).value();
            S(row_hi[wl] * dimR + row_lo[wr], col_hi[wl] * dimR + col_lo[wr]) = val;
        }
    }

    ManyBodyOperator out;
    out.n = n;
    out.d = d;
    out.hermitian = false;
    out.mat = to_sparse(S, 0.0);
    return out;
}

// ------------------------------------------------------------------ two_leg

const SpMat& TwoLegLax::block(int i, int j) const {
    if (i < 0 || i >= d || j < 0 || j >= d) {
        throw std::out_of_range(
            "TwoLegLax::block: index (" + std::to_string(i) + ", " + std::to_string(j)
            + ") outside the " + std::to_string(d) + "x" + std::to_string(d) + " grid");
    }
    return GG[static_cast<std::size_t>(i) * d + j];
}

TwoLegLax two_leg(const LaxOperator& lax) {
    const int d = lax.d;
    const int D = lax.D;
    TwoLegLax tl;
    tl.d = d;
    tl.D = D;
    tl.D2 = D * D;
    tl.GG.resize(static_cast<std::size_t>(d) * d);

    std::vector<SpMat> sparse_g(lax.G.size()), sparse_gc(lax.G.size());
    for (std::size_t g = 0; g < lax.G.size(); ++g) {
        sparse_g[g] = to_sparse(lax.G[g], 0.0);
        sparse_gc[g] = to_sparse(CMat(lax.G[g].conjugate()), 0.0);
    }

    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            SpMat acc(tl.D2, tl.D2);
            for (int k = 0; k < d; ++k) {
                acc = acc + kron(sparse_g[static_cast<std::size_t>(i) * d + k],
                                 sparse_gc[static_cast<std::size_t>(j) * d + k]);
            }
            tl.GG[static_cast<std::size_t>(i) * d + j] = acc;
        }
    }

    tl.T = SpMat(tl.D2, tl.D2);
    for (int i = 0; i < d; ++i) tl.T = tl.T + tl.GG[static_cast<std::size_t>(i) * d + i];

    tl.lvac = kron(CMat(lax.lvac), CMat(lax.lvac.conjugate()));
    tl.rvac = kron(CMat(lax.rvac), CMat(lax.rvac.conjugate()));
    return tl;
}

cx vacuum_moment(const TwoLegLax& tl, int power) {
    if (power < 0) throw std::invalid_argument("vacuum_moment: need power >= 0");
    CVec v = tl.rvac;
    for (int k = 0; k < power; ++k) v = tl.T * v;
    return (tl.lvac.transpose() * v).value();
}

std::vector<int> paired_indices(int D) {
    std::vector<int> idx(D);
    for (int k = 0; k < D; ++k) idx[k] = k * D + k;
    return idx;
}

std::vector<int> ls_sublattice_indices(const LaxOperator& lax) {
    if (lax.aux_factors.size() != 3 || lax.d != 3) {
        throw std::invalid_argument(
            "ls_sublattice_indices: needs the three-factor auxiliary space of the "
            "three-component chain");
    }
    const int c = lax.aux_factors[0];
    const int D = lax.D;
    auto modes = [&](int a) {
        return std::array<int, 3>{a / (c * c), (a / c) % c, a % c};
    };
    std::vector<int> idx;
    for (int a = 0; a < D; ++a) {
        const auto [j, k, l] = modes(a);
        for (int b = 0; b < D; ++b) {
            const auto [jb, kb, lb] = modes(b);
            // Conserved combinations of the diagonal corner letters: the boson
            // imbalance j - k and the boson total shifted by twice the rung,
            // j + k + 2l (the rung counts downward from the extremal vector,
            // so this is the boson total minus twice the spin label).
            if (j - k == jb - kb && j + k + 2 * l == jb + kb + 2 * lb) idx.push_back(a * D + b);
        }
    }
    return idx;
}

bool preserves_subspace(const SpMat& T, const std::vector<int>& keep, double tol) {
    std::vector<char> in_keep(T.rows(), 0);
    for (int i : keep) {
        if (i < 0 || i >= T.rows()) {
            throw std::out_of_range("preserves_subspace: index outside the operator");
        }
        in_keep[i] = 1;
    }
    double scale = 0.0;
    for (int c = 0; c < T.outerSize(); ++c)
        for (SpMat::InnerIterator it(T, c); it; ++it)
            scale = std::max(scale, std::abs(it.value()));
    double leak = 0.0;
    for (int c : keep) {
        for (SpMat::InnerIterator it(T, c); it; ++it) {
            if (!in_keep[it.row()]) leak = std::max(leak, std::abs(it.value()));
        }
    }
    return leak <= tol * std::max(1.0, scale);
}

// ------------------------------------------------------------ assemble_ness

NessResult assemble_ness(const ChainModel& model, int D, bool certify) {
    const int n = model.n;
    const LaxOperator lax = build_lax(model, n, D);

    NessResult res;
    res.n = n;
    res.d = lax.d;
    res.S = contract_s(lax, n);

    const CMat Sd = res.S.dense();
    const CMat rho = Sd * Sd.adjoint();
    res.rho.n = n;
    res.rho.d = lax.d;
    res.rho.hermitian = true;
    res.rho.mat = to_sparse(rho, 0.0);
    res.Z = rho.trace();

    const bool oracle_range = (lax.d == 2 && n <= 7) || (lax.d >= 3 && n <= 4);
    if (certify && oracle_range) {
        const Liouvillian L = build_liouvillian(model, default_channels(model));
        const CVec v = mat_to_vec(rho);
        res.lindblad_residual = (L.mat * v).norm() / v.norm();
    }
    return res;
}

ManyBodyOperator project_sector(const ManyBodyOperator& op, int nu) {
    if (op.d != 3) {
        throw std::invalid_argument("project_sector: defined for three-component chains");
    }
    if (nu < 0 || nu > op.n) {
        throw std::invalid_argument(
            "project_sector: sector " + std::to_string(nu) + " outside 0.."
            + std::to_string(op.n));
    }
    auto holes = [&](long idx) {
        int count = 0;
        for (int x = 0; x < op.n; ++x) {
            if (idx % 3 == 1) ++count;  // middle component occupies the site
            idx /= 3;
        }
        return count;
    };
    std::vector<char> in_sector(op.dim(), 0);
    for (long i = 0; i < op.dim(); ++i) in_sector[i] = holes(i) == nu;

    std::vector<Triplet> trips;
    for (int c = 0; c < op.mat.outerSize(); ++c) {
        for (SpMat::InnerIterator it(op.mat, c); it; ++it) {
            if (in_sector[it.row()] && in_sector[it.col()]) {
                trips.emplace_back(it.row(), it.col(), it.value());
            }
        }
    }
    ManyBodyOperator out;
    out.n = op.n;
    out.d = op.d;
    out.hermitian = op.hermitian;
    out.mat = SpMat(op.mat.rows(), op.mat.cols());
    out.mat.setFromTriplets(trips.begin(), trips.end());
    return out;
}

// -------------------------------------------------------------- GaussDyadic

GaussDyadic::GaussDyadic(long long re_, long long im_, int e2_) : re(re_), im(im_), e2(e2_) {
    normalize();
}

void GaussDyadic::normalize() {
    if (re == 0 && im == 0) {
        e2 = 0;
        return;
    }
    while (e2 > 0 && re % 2 == 0 && im % 2 == 0) {
        re /= 2;
        im /= 2;
        --e2;
    }
}

bool GaussDyadic::integral() const { return e2 == 0; }

cx GaussDyadic::value() const {
    return cx(std::ldexp(static_cast<double>(re), -e2), std::ldexp(static_cast<double>(im), -e2));
}

GaussDyadic GaussDyadic::operator+(const GaussDyadic& o) const {
    const int e = std::max(e2, o.e2);
    const long long a = re << (e - e2), b = im << (e - e2);
    const long long c = o.re << (e - o.e2), d = o.im << (e - o.e2);
    return GaussDyadic(a + c, b + d, e);
}

GaussDyadic GaussDyadic::operator-(const GaussDyadic& o) const {
    return *this + GaussDyadic(-o.re, -o.im, o.e2);
}

GaussDyadic GaussDyadic::operator*(const GaussDyadic& o) const {
    return GaussDyadic(re * o.re - im * o.im, re * o.im + im * o.re, e2 + o.e2);
}

bool GaussDyadic::operator==(const GaussDyadic& o) const {
    return re == o.re && im == o.im && e2 == o.e2;
}

// ---------------------------------------------------------------- GaussPoly

GaussPoly GaussPoly::constant(GaussDyadic v) {
    GaussPoly p;
    p.c = {v};
    p.trim();
    return p;
}

int GaussPoly::degree() const {
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
        if (!c[k].zero()) return k;
    return -1;
}

bool GaussPoly::integral() const {
    for (const auto& v : c)
        if (!v.integral()) return false;
    return true;
}

cx GaussPoly::eval(cx eps) const {
    cx acc = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) acc = acc * eps + c[k].value();
    return acc;
}

void GaussPoly::trim() {
    while (!c.empty() && c.back().zero()) c.pop_back();
}

GaussPoly GaussPoly::operator+(const GaussPoly& o) const {
    GaussPoly out;
    out.c.resize(std::max(c.size(), o.c.size()));
    for (std::size_t k = 0; k < out.c.size(); ++k) {
        if (k < c.size()) out.c[k] = out.c[k] + c[k];
        if (k < o.c.size()) out.c[k] = out.c[k] + o.c[k];
    }
    out.trim();
    return out;
}

GaussPoly GaussPoly::operator-(const GaussPoly& o) const {
    GaussPoly neg = o;
    for (auto& v : neg.c) v = GaussDyadic(-v.re, -v.im, v.e2);
    return *this + neg;
}

GaussPoly GaussPoly::operator*(const GaussPoly& o) const {
    GaussPoly out;
    if (c.empty() || o.c.empty()) return out;
    out.c.resize(c.size() + o.c.size() - 1);
    for (std::size_t a = 0; a < c.size(); ++a) {
        if (c[a].zero()) continue;
        for (std::size_t b = 0; b < o.c.size(); ++b) {
            out.c[a + b] = out.c[a + b] + c[a] * o.c[b];
        }
    }
    out.trim();
    return out;
}

bool GaussPoly::operator==(const GaussPoly& o) const {
    GaussPoly a = *this, b = o;
    a.trim();
    b.trim();
    if (a.c.size() != b.c.size()) return false;
    for (std::size_t k = 0; k < a.c.size(); ++k)
        if (!(a.c[k] == b.c[k])) return false;
    return true;
}

// ------------------------------------------------------- contract_symbolic

long SymbolicAmplitudes::index_of(const std::vector<int>& digits) {
    long idx = 0;
    for (int dg : digits) {
        if (dg < 0 || dg > 2) {
            throw std::invalid_argument("SymbolicAmplitudes: word digits must be 0, 1, or 2");
        }
        idx = idx * 3 + dg;
    }
    return idx;
}

const GaussPoly& SymbolicAmplitudes::at_word(const std::vector<int>& digits) const {
    if (static_cast<int>(digits.size()) != n) {
        throw std::invalid_argument(
            "SymbolicAmplitudes: word length " + std::to_string(digits.size())
            + " != " + std::to_string(n));
    }
    return amp[index_of(digits)];
}

SymbolicAmplitudes contract_symbolic(const GaussDyadic& delta, int n, int D, bool scaled) {
    if (n < 1 || n > 12) throw std::invalid_argument("contract_symbolic: need 1 <= n <= 12");
    if (D < 2) throw std::invalid_argument("contract_symbolic: need D >= 2");

    // Exact Chebyshev families in the anisotropy.
    std::vector<GaussDyadic> t(D + 1), u(D + 1);
    const GaussDyadic two(2, 0, 0);
    t[0] = GaussDyadic(1, 0, 0);
    u[0] = GaussDyadic(1, 0, 0);
    t[1] = delta;
    u[1] = two * delta;
    for (int k = 2; k <= D; ++k) {
        t[k] = two * delta * t[k - 1] - t[k - 2];
        u[k] = two * delta * u[k - 1] - u[k - 2];
    }

    // Letter polynomials: diagonal a_k = t_k + (i eps / 2) u_{k-1}, raising
    // b_k from b_0 = i eps via the telescoped difference of a-products, and
    // a unit lowering amplitude.
    const GaussDyadic i_half(0, 1, 1);
    std::vector<GaussPoly> a(D + 1);
    for (int k = 0; k <= D; ++k) {
        GaussPoly p;
        p.c = {t[k], k >= 1 ? i_half * u[k - 1] : GaussDyadic()};
        p.trim();
        a[k] = p;
    }
    std::vector<GaussPoly> b(D - 1);
    {
        GaussPoly b0;
        b0.c = {GaussDyadic(), GaussDyadic(0, 1, 0)};
        b[0] = b0;
        for (int k = 1; k + 1 < D; ++k) b[k] = b[k - 1] + a[k + 1] * a[k] - a[k] * a[k - 1];
    }

    const GaussPoly unit = GaussPoly::constant(GaussDyadic(1, 0, 0));
    const GaussPoly two_poly = GaussPoly::constant(two);
    std::vector<GaussPoly> A0(D), Ap(D - 1);
    for (int k = 0; k < D; ++k) A0[k] = scaled ? a[k] * two_poly : a[k];
    for (int k = 0; k + 1 < D; ++k) Ap[k] = scaled ? b[k] * two_poly : b[k];
    const GaussPoly Am = scaled ? two_poly : unit;

    // Single-path walks with shared prefixes: each word visits exactly one
    // ladder rung sequence, dying when it would leave [0, D).
    struct WalkState {
        int k = 0;  // -1 once the walk has died
        GaussPoly val;
    };
    std::vector<WalkState> cur(1);
    cur[0].val = unit;
    for (int x = 0; x < n; ++x) {
        std::vector<WalkState> next(cur.size() * 3);
        for (std::size_t w = 0; w < cur.size(); ++w) {
            for (int dg = 0; dg < 3; ++dg) {
                WalkState s = cur[w];
                if (s.k >= 0) {
                    if (dg == 0) {
                        s.val = s.val * A0[s.k];
                    } else if (dg == 1) {
                        if (s.k + 1 >= D) {
                            s.k = -1;
                        } else {
                            s.val = s.val * Ap[s.k];
                            ++s.k;
                        }
                    } else {
                        if (s.k == 0) {
                            s.k = -1;
                        } else {
                            s.val = s.val * Am;
                            --s.k;
                        }
                    }
                }
                next[w * 3 + dg] = std::move(s);
            }
        }
        cur = std::move(next);
    }

    SymbolicAmplitudes res;
    res.n = n;
    res.D = D;
    res.scaled = scaled;
    res.amp.resize(cur.size());
    for (std::size_t w = 0; w < cur.size(); ++w) {
        if (cur[w].k == 0) res.amp[w] = std::move(cur[w].val);
    }
    return res;
}

}  // namespace ness

#include "ness/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/SparseLU>

#include <map>

namespace ness {

CVec mat_to_vec(const CMat& m) {
    return Eigen::Map<const CVec>(m.data(), m.size());
}

CMat vec_to_mat(const CVec& v, long rows) {
    return Eigen::Map<const CMat>(v.data(), rows, v.size() / rows);
}

namespace {

CMat psd_sqrt(const CMat& a) {
    Eigen::SelfAdjointEigenSolver<CMat> es(a);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double state_fidelity(const CMat& rho, const CMat& sigma) {
    const CMat r = psd_sqrt(rho);
    const CMat inner = psd_sqrt(r * sigma * r);
    const double t = inner.trace().real();
    return t * t;
}

std::vector<LindbladChannel> default_channels(const ChainModel& model) {
    std::vector<LindbladChannel> ch;
    switch (model.kind) {
        case ModelKind::XXX:
        case ModelKind::XXZ:
        case ModelKind::XXZTwisted:
            ch.push_back({sigmap(), 1, model.eps});
            ch.push_back({sigmam(), model.n, model.eps});
            break;
        case ModelKind::SUN:
            // source every species into the top component at the left edge,
            // drain it at the right edge with the (N-1)^2-enhanced rate
            for (int i = 1; i <= model.N - 1; ++i) {
                ch.push_back({weyl(model.N, i, model.N), 1, model.eps});
                ch.push_back({weyl(model.N, model.N, i), model.n, model.right_rate()});
            }
            break;
        case ModelKind::LaiSutherland:
            // spin-flip jumps leaving the hole count untouched
            ch.push_back({weyl(3, 1, 3), 1, model.eps});
            ch.push_back({weyl(3, 3, 1), model.n, model.eps});
            break;
    }
    return ch;
}

Liouvillian build_liouvillian(const ChainModel& model,
                              const std::vector<LindbladChannel>& channels) {
    const int d = model.site_dim();
    const int guard = d == 2 ? 7 : 4;
    if (model.n > guard)
        throw std::invalid_argument("build_liouvillian: size guard exceeded (n <= " +
                                    std::to_string(guard) + " for d = " + std::to_string(d) + ")");
    for (const auto& c : channels)
        if (c.site != 1 && c.site != model.n)
            throw std::invalid_argument("build_liouvillian: channel on interior site");

    const long dim = ipow(d, model.n);
    const SpMat id = sparse_identity(dim);
    const SpMat H = model.n > 1 ? build_hamiltonian(model).mat : SpMat(dim, dim);

    // vec(A rho B) = (B^T kron A) vec(rho), column stacking
    SpMat L = -I_UNIT * (kron(id, H) - kron(SpMat(H.transpose()), id));
    for (const auto& c : channels) {
        if (c.rate < 0) throw std::invalid_argument("build_liouvillian: negative rate");
        SpMat A = embed_site(c.op, c.site, model.n, d).mat;
        SpMat AdA = SpMat(A.adjoint()) * A;
        L += c.rate * (kron(SpMat(A.conjugate()), A)
                       - 0.5 * kron(id, AdA)
                       - 0.5 * kron(SpMat(AdA.transpose()), id));
    }

    Liouvillian out;
    out.mat = std::move(L);
    out.n = model.n;
    out.d = d;
    out.hdim = dim;
    out.model = model;
    return out;
}

namespace {

// Conserved-charge gradings that block-diagonalize the Liouvillian. A weak
// grading is conserved as (row charge - column charge); a strong one is
// conserved separately on the row and column indices.
struct Grading {
    std::vector<int> site_charge;  // charge per local basis state
    bool strong = false;
};

std::vector<Grading> model_gradings(const ChainModel& model) {
    std::vector<Grading> g;
    switch (model.kind) {
        case ModelKind::XXX:
        case ModelKind::XXZ:
        case ModelKind::XXZTwisted:
            g.push_back({{1, -1}, false});          // magnetization
            break;
        case ModelKind::LaiSutherland:
            g.push_back({{0, 1, 0}, true});          // hole count (strong)
            g.push_back({{1, 0, -1}, false});        // magnetization
            break;
        case ModelKind::SUN:
            for (int i = 0; i < model.N - 1; ++i) {  // species counts
                std::vector<int> c(model.N, 0);
                c[i] = 1;
                g.push_back({c, false});
            }
            break;
    }
    return g;
}

int state_charge(long idx, int n, int d, const std::vector<int>& site_charge) {
    int q = 0;
    for (int x = 0; x < n; ++x) {
        q += site_charge[idx % d];
        idx /= d;
    }
    return q;
}

}  // namespace

SteadyStateSet solve_ness(const Liouvillian& L, double rank_tol) {
    const long dim = L.hdim;
    const long sdim = dim * dim;

    // Partition vec indices by the conserved keys.
    const auto gradings = model_gradings(L.model);
    std::vector<std::vector<int>> row_charges;
    for (const auto& g : gradings) {
        std::vector<int> q(dim);
        for (long i = 0; i < dim; ++i)
            q[i] = state_charge(i, L.n, L.d, g.site_charge);
        row_charges.push_back(std::move(q));
    }
    std::map<std::vector<int>, std::vector<long>> blocks;
    for (long v = 0; v < sdim; ++v) {
        const long r = v % dim, c = v / dim;
        std::vector<int> key;
        for (std::size_t k = 0; k < gradings.size(); ++k) {
            if (gradings[k].strong) {
                key.push_back(row_charges[k][r]);
                key.push_back(row_charges[k][c]);
            } else {
                key.push_back(row_charges[k][r] - row_charges[k][c]);
            }
        }
        blocks[key].push_back(v);
    }

    // Global position lookup: vec index -> (block, offset).
    std::vector<std::pair<int, int>> where(sdim);
    std::vector<const std::vector<long>*> block_list;
    {
        int b = 0;
        for (const auto& [key, idx] : blocks) {
            for (std::size_t p = 0; p < idx.size(); ++p)
                where[idx[p]] = {b, static_cast<int>(p)};
            block_list.push_back(&idx);
            ++b;
        }
    }

    // Pass 1: per-block extraction and singular values; remember candidates.
    const int nblocks = static_cast<int>(block_list.size());
    std::vector<CMat> dense_block(nblocks);
    std::vector<Eigen::VectorXd> svals(nblocks);
    double sigma_max = 0.0;
    for (int b = 0; b < nblocks; ++b) {
        const auto& idx = *block_list[b];
        const int s = static_cast<int>(idx.size());
        CMat Ab = CMat::Zero(s, s);
        for (int jc = 0; jc < s; ++jc) {
            const long col = idx[jc];
            for (SpMat::InnerIterator it(L.mat, col); it; ++it) {
                const auto [wb, wp] = where[it.row()];
                if (wb == b) Ab(wp, jc) = it.value();
                // couplings leaving the block would violate the grading;
                // they are exactly zero for the supported channel sets
            }
        }
        Eigen::BDCSVD<CMat> svd(Ab);
        svals[b] = svd.singularValues();
        if (svals[b].size() > 0) sigma_max = std::max(sigma_max, svals[b](0));
        dense_block[b] = std::move(Ab);
    }

    // Pass 2: collect null vectors from blocks whose smallest singular value
    // dips below the rank cut.
    const double cut = rank_tol * sigma_max;
    SteadyStateSet out;
    for (int b = 0; b < nblocks; ++b) {
        const int s = static_cast<int>(svals[b].size());
        if (s == 0) continue;
        if (svals[b](s - 1) > cut) continue;
        Eigen::BDCSVD<CMat> svd(dense_block[b], Eigen::ComputeThinV);
        for (int k = 0; k < s; ++k) {
            if (svd.singularValues()(k) > cut) continue;
            CVec full = CVec::Zero(sdim);
            const auto& idx = *block_list[b];
            for (int p = 0; p < s; ++p) full(idx[p]) = svd.matrixV()(p, k);
            ++out.null_dimension;

            CMat rho = vec_to_mat(full, dim);
            rho = 0.5 * (rho + rho.adjoint().eval());
            const double tr = rho.trace().real();
            if (std::abs(rho.trace()) < 1e-8 * rho.norm()) {
                ++out.traceless_null_count;
                continue;
            }
            rho /= tr;
            const CVec v = mat_to_vec(rho);
            out.residuals.push_back((L.mat * v).norm() / v.norm());
            Eigen::SelfAdjointEigenSolver<CMat> es(rho, Eigen::EigenvaluesOnly);
            out.min_eigs.push_back(es.eigenvalues().minCoeff());
            out.states.push_back(std::move(rho));
        }
    }
    return out;
}

CMat evolve(const Liouvillian& L, const CMat& rho0, double t, int steps,
            double trace_tol) {
    if (steps < 1) throw std::invalid_argument("evolve: need at least one step");
    const cx tr0 = rho0.trace();
    for (int attempt = 0; attempt < 6; ++attempt) {
        CVec v = mat_to_vec(rho0);
        const double h = t / steps;
        for (int s = 0; s < steps; ++s) {
            const CVec k1 = L.mat * v;
            const CVec k2 = L.mat * (v + 0.5 * h * k1);
            const CVec k3 = L.mat * (v + 0.5 * h * k2);
            const CVec k4 = L.mat * (v + h * k3);
            v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        CMat rho = vec_to_mat(v, L.hdim);
        if (std::abs(rho.trace() - tr0) <= trace_tol) return rho;
        steps *= 4;  // step-size instability: refine and retry
    }
    throw std::runtime_error("evolve: trace drift persists after adaptive refinement");
}

double spectral_gap(const Liouvillian& L, const CMat& ness_state) {
    const long sdim = L.hdim * L.hdim;
    // exact left null vector vec(1) and the provided right null vector
    CVec lnull = mat_to_vec(CMat::Identity(L.hdim, L.hdim));
    CVec rnull = mat_to_vec(ness_state);
    const cx overlap = lnull.dot(rnull);
    auto deflate = [&](CVec& v) { v -= (lnull.dot(v) / overlap) * rnull; };

    // shifted inverse: eigenvalues 1/(lambda - sigma), null mode removed
    const cx sigma(1e-8, 1e-8);
    SpMat shifted = L.mat - sigma * sparse_identity(sdim);
    Eigen::SparseLU<SpMat> lu;
    lu.compute(shifted);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("spectral_gap: factorization failed");

    const int m = std::min<long>(30, sdim - 2);
    std::vector<CVec> basis;
    CMat h = CMat::Zero(m + 1, m);
    CVec w = CVec::Random(sdim);
    deflate(w);
    w.normalize();
    basis.push_back(w);
    int built = 0;
    for (int j = 0; j < m; ++j) {
        CVec u = lu.solve(basis[j]);
        deflate(u);
        for (int i = 0; i <= j; ++i) {
            h(i, j) = basis[i].dot(u);
            u -= h(i, j) * basis[i];
        }
        h(j + 1, j) = u.norm();
        built = j + 1;
        if (std::abs(h(j + 1, j)) < 1e-13) break;
        basis.push_back(u / h(j + 1, j));
    }
    Eigen::ComplexEigenSolver<CMat> es(h.topLeftCorner(built, built));
    double best = 0.0;
    cx lam_best = 0.0;
    for (int i = 0; i < built; ++i) {
        const cx th = es.eigenvalues()(i);
        if (std::abs(th) > best) {
            best = std::abs(th);
            lam_best = sigma + 1.0 / th;
        }
    }
    return std::abs(lam_best.real());
}

}  // namespace ness

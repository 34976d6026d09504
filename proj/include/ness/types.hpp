#pragma once

// =========================================================================
// Shared scalar/matrix typedefs and small numeric helpers used everywhere.
// =========================================================================

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace ness {

using cx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<cx>;
using Triplet = Eigen::Triplet<cx>;

inline constexpr cx I_UNIT{0.0, 1.0};

// Scale-free residual: ||lhs - rhs||_F / max(1, ||lhs||_F, ||rhs||_F).
inline double rel_residual(const CMat& lhs, const CMat& rhs) {
    double denom = std::max({1.0, lhs.norm(), rhs.norm()});
    return (lhs - rhs).norm() / denom;
}

inline double rel_residual(const SpMat& lhs, const SpMat& rhs) {
    double denom = std::max({1.0, lhs.norm(), rhs.norm()});
    return SpMat(lhs - rhs).norm() / denom;
}

// Dense Kronecker product (small spaces only).
inline CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Sparse Kronecker product, built column-by-column to keep memory flat.
inline SpMat kron(const SpMat& a, const SpMat& b) {
    SpMat out(a.rows() * b.rows(), a.cols() * b.cols());
    std::vector<Triplet> trip;
    trip.reserve(static_cast<std::size_t>(a.nonZeros()) * static_cast<std::size_t>(b.nonZeros()));
    for (int ka = 0; ka < a.outerSize(); ++ka)
        for (SpMat::InnerIterator ia(a, ka); ia; ++ia)
            for (int kb = 0; kb < b.outerSize(); ++kb)
                for (SpMat::InnerIterator ib(b, kb); ib; ++ib)
                    trip.emplace_back(ia.row() * b.rows() + ib.row(),
                                      ia.col() * b.cols() + ib.col(),
                                      ia.value() * ib.value());
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

inline SpMat sparse_identity(Eigen::Index d) {
    SpMat id(d, d);
    id.setIdentity();
    return id;
}

inline SpMat to_sparse(const CMat& m, double drop = 0.0) {
    SpMat out(m.rows(), m.cols());
    std::vector<Triplet> trip;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (std::abs(m(i, j)) > drop) trip.emplace_back(i, j, m(i, j));
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

// Integer power for Hilbert-space dimensions.
inline long ipow(long base, int exp) {
    long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace ness

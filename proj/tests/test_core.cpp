#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "ness/chain.hpp"

using namespace ness;

namespace {

std::vector<double> real_spectrum(const CMat& h) {
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    std::vector<double> ev(es.eigenvalues().data(),
                           es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end());
    return ev;
}

double comm_norm(const SpMat& a, const SpMat& b) {
    return SpMat(a * b - b * a).norm();
}

}  // namespace

TEST_CASE("single-site embeddings place operators at the right slot") {
    // sigma^z at site 1 of 2 acts on the left tensor factor.
    auto sz1 = embed_site(sigmaz(), 1, 2, 2);
    CMat expect = CMat::Zero(4, 4);
    expect.diagonal() << 1, 1, -1, -1;
    CHECK((sz1.dense() - expect).norm() == doctest::Approx(0.0));

    // sigma^+ at site 2 of 2: nonzeros at (row,col) = (1,2) and (3,4), 1-based.
    auto sp2 = embed_site(sigmap(), 2, 2, 2);
    CMat m = sp2.dense();
    CHECK(std::abs(m(0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(m(2, 3) - 1.0) < 1e-15);
    CHECK(m.cwiseAbs().sum() == doctest::Approx(2.0));

    CHECK_THROWS_AS(embed_site(sigmaz(), 3, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(embed_site(sigmaz(), 0, 2, 2), std::invalid_argument);
}

TEST_CASE("embeddings at distinct sites commute") {
    auto a = embed_site(sigmap(), 1, 4, 2);
    auto b = embed_site(sigmam(), 3, 4, 2);
    CHECK(comm_norm(a.mat, b.mat) == doctest::Approx(0.0));
}

TEST_CASE("isotropic two-site interaction is the Heisenberg exchange") {
    auto md = make_model(ModelKind::XXX, 2, {}, {}, 1.0);
    CMat h = interaction_density(md);
    // h = sx sx + sy sy + sz sz: triplet eigenvalue 1 (x3), singlet -3.
    CMat direct = kron(sigmax(), sigmax()) + kron(sigmay(), sigmay())
                + kron(sigmaz(), sigmaz());
    CHECK((h - direct).norm() < 1e-14);
    auto ev = real_spectrum(h);
    CHECK(ev[0] == doctest::Approx(-3.0));
    CHECK(ev[1] == doctest::Approx(1.0));
    CHECK(ev[3] == doctest::Approx(1.0));
}

TEST_CASE("free-fermion point drops the zz term") {
    auto md = make_model(ModelKind::XXZ, 2, {}, std::make_pair(1, 2), 1.0);
    CHECK(md.Delta() == doctest::Approx(0.0));
    CMat h = interaction_density(md);
    CMat hop = 2.0 * (kron(sigmap(), sigmam()) + kron(sigmam(), sigmap()));
    CHECK((h - hop).norm() < 1e-15);
}

TEST_CASE("three-component interaction is the permutation") {
    auto md = make_model(ModelKind::LaiSutherland, 2, {}, {}, 1.0);
    CMat h = interaction_density(md);
    // Permutation on C^3 (x) C^3: symmetric sector +1 (x6), antisymmetric -1 (x3).
    auto ev = real_spectrum(h);
    int plus = 0, minus = 0;
    for (double e : ev) {
        if (std::abs(e - 1.0) < 1e-12) ++plus;
        if (std::abs(e + 1.0) < 1e-12) ++minus;
    }
    CHECK(plus == 6);
    CHECK(minus == 3);
    // P swaps product states.
    CMat v1 = CMat::Zero(3, 1), v2 = CMat::Zero(3, 1);
    v1(0, 0) = 1;
    v2(2, 0) = 1;
    CMat swapped = h * kron(v1, v2);
    CHECK((swapped - kron(v2, v1)).norm() < 1e-14);
}

TEST_CASE("open-chain Hamiltonian is hermitian and magnetization-conserving") {
    auto md = make_model(ModelKind::XXZ, 4, 0.5, {}, 1.0);
    auto H = build_hamiltonian(md);
    CHECK(hermiticity_defect(H.mat) < 1e-14);
    auto M = total_charge(md, sigmaz());
    CHECK(comm_norm(H.mat, M.mat) < 1e-12);
}

TEST_CASE("twisted chain reduces to the untwisted one at theta = 0") {
    auto md0 = make_model(ModelKind::XXZ, 3, 0.5, {}, 1.0);
    auto mdt = make_model(ModelKind::XXZTwisted, 3, 0.5, {}, 1.0, 0.0);
    CHECK((build_hamiltonian(md0).dense() - build_hamiltonian(mdt).dense()).norm() < 1e-14);

    auto mdq = make_model(ModelKind::XXZTwisted, 3, 0.5, {}, 1.0, 0.7);
    CHECK(hermiticity_defect(build_hamiltonian(mdq).mat) < 1e-14);
}

TEST_CASE("spin current satisfies the lattice continuity equation") {
    for (double theta : {0.0, 0.9}) {
        auto md = theta == 0.0 ? make_model(ModelKind::XXZ, 4, 0.5, {}, 1.0)
                               : make_model(ModelKind::XXZTwisted, 4, 0.5, {}, 1.0, theta);
        auto H = build_hamiltonian(md);
        auto sz2 = embed_site(sigmaz(), 2, md);
        auto j12 = build_current(md, 1);
        auto j23 = build_current(md, 2);
        SpMat lhs = I_UNIT * SpMat(H.mat * sz2.mat - sz2.mat * H.mat);
        SpMat rhs = SpMat(j12.mat - j23.mat);
        CHECK(SpMat(lhs - rhs).norm() < 1e-12);
    }
}

TEST_CASE("species currents satisfy continuity for the permutation chain") {
    auto md = make_model(ModelKind::LaiSutherland, 3, {}, {}, 1.0);
    auto H = build_hamiltonian(md);
    // charge e^{11} - e^{33} against the antisymmetric current J^{13}.
    CMat q = charge_density(md, std::make_pair(1, 3));
    auto q2 = embed_site(q, 2, md);
    auto j12 = build_current(md, 1, std::make_pair(1, 3));
    auto j23 = build_current(md, 2, std::make_pair(1, 3));
    SpMat lhs = I_UNIT * SpMat(H.mat * q2.mat - q2.mat * H.mat);
    // For the permutation interaction the species-resolved continuity couples
    // the J^{13} channel to the other species; the summed current closes it.
    CMat qt = charge_density(md, std::make_pair(1, 0));  // e^{11}
    auto n2 = embed_site(qt, 2, md);
    auto J12 = build_current(md, 1, std::make_pair(1, 0));
    auto J23 = build_current(md, 2, std::make_pair(1, 0));
    SpMat lhs_tot = I_UNIT * SpMat(H.mat * n2.mat - n2.mat * H.mat);
    CHECK(SpMat(lhs_tot - SpMat(J12.mat - J23.mat)).norm() < 1e-12);
    (void)lhs;
    (void)j12;
    (void)j23;
}

TEST_CASE("current tensor is antisymmetric in species") {
    auto md = make_model(ModelKind::LaiSutherland, 2, {}, {}, 1.0);
    CMat j13 = current_density(md, std::make_pair(1, 3));
    CMat j31 = current_density(md, std::make_pair(3, 1));
    CHECK((j13 + j31).norm() < 1e-15);
    CHECK((j13 - j13.adjoint()).norm() < 1e-15);  // hermitian observable
}

TEST_CASE("hole count commutes with the permutation Hamiltonian") {
    auto md = make_model(ModelKind::LaiSutherland, 3, {}, {}, 1.0);
    auto H = build_hamiltonian(md);
    auto N0 = hole_number(md);
    CHECK(comm_norm(H.mat, N0.mat) == doctest::Approx(0.0));
}

TEST_CASE("model validation rejects inconsistent input") {
    CHECK_THROWS_AS(make_model(ModelKind::XXZ, 0, 0.5, {}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_model(ModelKind::XXZ, 4, 0.5, {}, -1.0), std::invalid_argument);
    // both Delta and (l,m)
    CHECK_THROWS_AS(make_model(ModelKind::XXZ, 4, 0.5, std::make_pair(1, 3), 1.0),
                    std::invalid_argument);
    // non-coprime fraction must be rejected, not reduced
    CHECK_THROWS_AS(make_model(ModelKind::XXZ, 4, {}, std::make_pair(2, 4), 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_model(ModelKind::XXZ, 4, {}, std::make_pair(3, 2), 1.0),
                    std::invalid_argument);
    // twist angle is exclusive to the twisted kind
    CHECK_THROWS_AS(make_model(ModelKind::XXZ, 4, 0.5, {}, 1.0, 0.3), std::invalid_argument);
    // the isotropic kind pins Delta = 1
    CHECK_THROWS_AS(make_model(ModelKind::XXX, 4, 0.5, {}, 1.0), std::invalid_argument);
    CHECK_NOTHROW(make_model(ModelKind::SUN, 3, {}, {}, 1.0, 0.0, 3));
    CHECK_THROWS_AS(make_model(ModelKind::SUN, 3, {}, {}, 1.0, 0.0, 1), std::invalid_argument);
}

TEST_CASE("root-of-unity mode fixes the anisotropy to cos(pi l/m)") {
    auto md = make_model(ModelKind::XXZ, 4, {}, std::make_pair(1, 3), 1.0);
    CHECK(md.Delta() == doctest::Approx(0.5));
    CHECK(md.gamma().real() == doctest::Approx(M_PI / 3));
    CHECK(md.gamma().imag() == doctest::Approx(0.0));

    // easy-axis continuation: |Delta| > 1 gives imaginary gamma with cos = Delta
    auto md2 = make_model(ModelKind::XXZ, 4, 1.5, {}, 1.0);
    cx g = md2.gamma();
    CHECK(std::abs(std::cos(g) - cx(1.5, 0.0)) < 1e-12);
}

TEST_CASE("named site-operator lookup matches the factory functions") {
    SiteBasis b2(2);
    CHECK((b2.op("sigma+") - sigmap()).norm() == 0.0);
    CHECK_THROWS_AS(b2.op("nope"), std::invalid_argument);
    SiteBasis b3(3);
    CHECK((b3.op("e12") - weyl(3, 1, 2)).norm() == 0.0);
    CHECK((b3.op("s+") - spin1_plus()).norm() == 0.0);
    CHECK_THROWS_AS(SiteBasis(5), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "ness/lindblad.hpp"

using namespace ness;

namespace {

// The driven two-site steady state, worked out by hand for driving rate eps:
// rho ~ 1 + (eps^2/4)|ud><ud| + (i eps/2)(|ud><du| - |du><ud|), basis uu,ud,du,dd.
CMat two_site_reference(double eps) {
    CMat rho = CMat::Identity(4, 4);
    rho(1, 1) += eps * eps / 4.0;
    rho(1, 2) = cx(0.0, eps / 2.0);
    rho(2, 1) = cx(0.0, -eps / 2.0);
    return rho / rho.trace().real();
}

}  // namespace

TEST_CASE("balanced single-site pumping relaxes to the maximally mixed state") {
    auto md = make_model(ModelKind::XXX, 1, {}, {}, 0.7);
    auto L = build_liouvillian(md, default_channels(md));
    auto ss = solve_ness(L);
    REQUIRE(ss.null_dimension == 1);
    REQUIRE(ss.states.size() == 1);
    CHECK((ss.states[0] - 0.5 * CMat::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("vectorized identity is a left null vector") {
    auto md = make_model(ModelKind::XXZ, 4, {}, std::make_pair(1, 3), 1.0);
    auto L = build_liouvillian(md, default_channels(md));
    CVec one = mat_to_vec(CMat::Identity(L.hdim, L.hdim));
    CHECK((L.mat.adjoint() * one).norm() <= 1e-12);
}

TEST_CASE("two-site steady state pins the driving-rate normalization") {
    // The exact solution's coherence is i*eps/2 when eps is the standard-form
    // rate of the boundary channels; any factor-2 slip in the dissipator
    // convention would show up immediately here.
    for (double eps : {0.5, 1.0, 2.0}) {
        auto md = make_model(ModelKind::XXZ, 2, {}, std::make_pair(1, 3), eps);
        auto L = build_liouvillian(md, default_channels(md));
        auto ss = solve_ness(L);
        REQUIRE(ss.null_dimension == 1);
        const CMat ref = two_site_reference(eps);
        CHECK((ss.states[0] - ref).norm() < 1e-10);
        CHECK(state_fidelity(ss.states[0], ref) >= 1.0 - 1e-10);
        CHECK(ss.residuals[0] <= 1e-9);
    }
}

TEST_CASE("driven spin-1/2 chain relaxes to a unique steady state") {
    for (int n : {3, 4}) {
        auto md = make_model(ModelKind::XXZ, n, {}, std::make_pair(1, 3), 1.0);
        auto L = build_liouvillian(md, default_channels(md));
        auto ss = solve_ness(L);
        CHECK(ss.null_dimension == 1);
        CHECK(ss.traceless_null_count == 0);
        REQUIRE(ss.states.size() == 1);
        CHECK(std::abs(ss.states[0].trace().real() - 1.0) < 1e-12);
        CHECK(ss.min_eigs[0] >= -1e-10);
        CHECK(ss.residuals[0] <= 1e-9);
    }
}

TEST_CASE("steady state inherits the magnetization block structure") {
    auto md = make_model(ModelKind::XXZ, 3, {}, std::make_pair(1, 3), 1.0);
    auto L = build_liouvillian(md, default_channels(md));
    auto ss = solve_ness(L);
    REQUIRE(ss.states.size() == 1);
    const CMat& rho = ss.states[0];
    auto mag = [](long idx, int n) {
        int m = 0;
        for (int x = 0; x < n; ++x) {
            m += (idx % 2 == 0) ? 1 : -1;
            idx /= 2;
        }
        return m;
    };
    for (long i = 0; i < L.hdim; ++i)
        for (long j = 0; j < L.hdim; ++j)
            if (mag(i, 3) != mag(j, 3)) CHECK(std::abs(rho(i, j)) <= 1e-10);
}

TEST_CASE("three-component chain has the full steady-state degeneracy") {
    for (int n : {2, 3}) {
        auto md = make_model(ModelKind::LaiSutherland, n, {}, {}, 1.0);
        auto L = build_liouvillian(md, default_channels(md));
        auto ss = solve_ness(L);
        CHECK(ss.null_dimension == n + 1);
        CHECK(ss.traceless_null_count == 0);
        CHECK(static_cast<int>(ss.states.size()) == n + 1);
        for (double r : ss.residuals) CHECK(r <= 1e-9);
        for (double e : ss.min_eigs) CHECK(e >= -1e-10);

        // the all-holes sector is the pure dark state
        CMat dark = CMat::Zero(L.hdim, L.hdim);
        long hole_word = 0;
        for (int x = 0; x < n; ++x) hole_word = hole_word * 3 + 1;  // digit 1 = hole
        dark(hole_word, hole_word) = 1.0;
        double best = 0.0;
        for (const auto& st : ss.states)
            best = std::max(best, std::abs((st * dark).trace()));
        CHECK(best == doctest::Approx(1.0).epsilon(1e-10));
        CHECK((L.mat * mat_to_vec(dark)).norm() <= 1e-12);
    }
}

TEST_CASE("Liouvillian spectrum stays in the closed left half-plane") {
    auto md = make_model(ModelKind::XXZ, 2, {}, std::make_pair(1, 3), 1.0);
    auto L = build_liouvillian(md, default_channels(md));
    Eigen::ComplexEigenSolver<CMat> es(CMat(L.mat), false);
    CHECK(es.eigenvalues().real().maxCoeff() <= 1e-10);
}

TEST_CASE("propagation preserves the trace and contracts onto the fixed point") {
    auto md = make_model(ModelKind::XXZ, 3, {}, std::make_pair(1, 3), 1.0);
    auto L = build_liouvillian(md, default_channels(md));
    auto ss = solve_ness(L);
    REQUIRE(ss.states.size() == 1);

    CMat rho0 = CMat::Identity(L.hdim, L.hdim) / static_cast<double>(L.hdim);
    CHECK((evolve(L, rho0, 0.0, 1) - rho0).norm() == doctest::Approx(0.0));

    const double gap = spectral_gap(L, ss.states[0]);
    CHECK(gap > 0.0);
    const double t_relax = 50.0 / gap;
    CMat mid = evolve(L, rho0, 0.5 * t_relax, 4000);
    CMat late = evolve(L, mid, 0.5 * t_relax, 4000);
    CHECK(std::abs(late.trace().real() - 1.0) <= 1e-9);
    const double d_mid = (mid - ss.states[0]).norm();
    const double d_late = (late - ss.states[0]).norm();
    CHECK(d_late < d_mid);
    CHECK(d_late <= 1e-6);
}

TEST_CASE("assembly guards reject oversized systems and interior channels") {
    auto md = make_model(ModelKind::XXZ, 8, {}, std::make_pair(1, 3), 1.0);
    CHECK_THROWS_AS(build_liouvillian(md, default_channels(md)), std::invalid_argument);

    auto ok = make_model(ModelKind::XXZ, 4, {}, std::make_pair(1, 3), 1.0);
    std::vector<LindbladChannel> bad = {{sigmap(), 2, 1.0}};
    CHECK_THROWS_AS(build_liouvillian(ok, bad), std::invalid_argument);

    auto ls = make_model(ModelKind::LaiSutherland, 5, {}, {}, 1.0);
    CHECK_THROWS_AS(build_liouvillian(ls, default_channels(ls)), std::invalid_argument);
}

TEST_CASE("default channel sets match the driving pattern of each model") {
    auto xxz = make_model(ModelKind::XXZ, 4, {}, std::make_pair(1, 3), 0.5);
    auto ch = default_channels(xxz);
    REQUIRE(ch.size() == 2);
    CHECK(ch[0].site == 1);
    CHECK(ch[1].site == 4);
    CHECK(ch[0].rate == doctest::Approx(0.5));
    CHECK((ch[0].op - sigmap()).norm() == 0.0);
    CHECK((ch[1].op - sigmam()).norm() == 0.0);

    auto suN = make_model(ModelKind::SUN, 3, {}, {}, 0.5, 0.0, 3);
    auto chN = default_channels(suN);
    CHECK(chN.size() == 4);  // two species in, two out
    double rmax = 0.0;
    for (const auto& c : chN) rmax = std::max(rmax, c.rate);
    CHECK(rmax == doctest::Approx(0.5 * 4.0));  // (N-1)^2 enhancement on the drain
}

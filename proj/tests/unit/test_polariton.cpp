#include <gtest/gtest.h>

#include <cmath>

#include "eit/errors.hpp"
#include "eit/polariton.hpp"
#include "oracles.hpp"

using namespace eit;

namespace {

cplx gauss(double x) { return std::exp(-(x / 10) * (x / 10)); }

// (cos a^dag - sin b^dag)^n / sqrt(n!) |0,0> on the truncated joint space.
Eigen::VectorXcd dark_state_oracle(double theta, int n, int n_max)
{
    const int m = n_max + 1, dim = m * m;
    Eigen::MatrixXd ad = Eigen::MatrixXd::Zero(dim, dim), bd = Eigen::MatrixXd::Zero(dim, dim);
    for (int p = 0; p <= n_max; ++p)
        for (int k = 0; k <= n_max; ++k) {
            if (p + 1 <= n_max)
                ad((p + 1) * m + k, p * m + k) = std::sqrt(p + 1.0);
            if (k + 1 <= n_max)
                bd(p * m + k + 1, p * m + k) = std::sqrt(k + 1.0);
        }
    Eigen::MatrixXd psi_dag = std::cos(theta) * ad - std::sin(theta) * bd;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    v(0) = 1;
    for (int j = 1; j <= n; ++j)
        v = psi_dag * v / std::sqrt(double(j));
    return v.cast<cplx>();
}

}  // namespace

TEST(Mixing, AngleAndVelocity)
{
    oracle::Gen gen(40);
    for (int k = 0; k < 100; ++k) {
        double W = gen.uniform(0.01, 3), g2N = gen.uniform(0, 1);
        MixingSchedule s{[W](double) { return W; }, g2N};
        double th = s.theta(0);
        EXPECT_NEAR(std::tan(th), std::sqrt(g2N) / W, 1e-12);
        EXPECT_NEAR(s.velocity(0), std::cos(th) * std::cos(th), 1e-12);
        EXPECT_EQ(mixing_angle(s, 0), th);
    }
}

TEST(Mixing, StorageScheduleEndpoints)
{
    MixingSchedule s = storage_schedule();
    EXPECT_LT(s.theta(0), 0.2);
    EXPECT_NEAR(s.theta(70), phys::pi / 2, 1e-3);
    EXPECT_LT(s.theta(250), 0.2);
}

TEST(GroupIndexStationary, IdealLimit)
{
    oracle::Gen gen(41);
    for (int k = 0; k < 50; ++k) {
        double g2N = gen.uniform(0, 1), W = gen.uniform(0.05, 2);
        GroupIndex gi = group_index_stationary(g2N, W, 0);
        MixingSchedule s{[W](double) { return W; }, g2N};
        EXPECT_NEAR(gi.v_g, s.velocity(0), 1e-12);
        GroupIndex hot = group_index_stationary(g2N, W, 0.2);
        EXPECT_LE(hot.n_g, gi.n_g);
    }
    EXPECT_THROW(group_index_stationary(0.01, 0, 0), ValidationError);
}

TEST(Field, DecomposeRecomposeRoundTrip)
{
    oracle::Gen gen(42);
    PolaritonField f = PolaritonField::on_grid(-50, 50, 401, gauss);
    for (int k = 0; k < 20; ++k) {
        f.delta_k = gen.uniform(-1, 1);
        double th = gen.uniform(0, phys::pi / 2);
        auto E = f.electric(th);
        auto S = f.spin(th);
        double e2 = 0, s2 = 0;
        for (size_t j = 0; j < E.size(); ++j) {
            e2 += std::norm(E[j]);
            s2 += std::norm(S[j]);
        }
        EXPECT_NEAR((e2 + s2) * f.spacing(), f.norm2(), 1e-12 * f.norm2());
        PolaritonField back = PolaritonField::recompose(f.x, E, S, th, f.delta_k);
        for (size_t j = 0; j < E.size(); ++j)
            EXPECT_LT(std::abs(back.psi[j] - f.psi[j]), 1e-14);
    }
}

TEST(Shift, SincShiftTranslatesBandLimited)
{
    PolaritonField f = PolaritonField::on_grid(-100, 100, 801, gauss);
    for (double d : {0.25, 3.7, -12.1, 20.0}) {
        auto out = sinc_shift(f.psi, f.spacing(), d);
        for (size_t k = 0; k < out.size(); k += 7)
            EXPECT_LT(std::abs(out[k] - gauss(f.x[k] - d)), 1e-8) << d;
    }
}

TEST(Evolution, DisplacementMatchesTrapezoid)
{
    MixingSchedule s = storage_schedule();
    double ref = oracle::trapezoid([&](double t) { return s.velocity(t); }, 0, 250, 200000);
    EXPECT_NEAR(displacement(s, 0, 250), ref, 1e-7);
    EXPECT_NEAR(displacement(s, 0, 70) + displacement(s, 70, 250), displacement(s, 0, 250), 1e-9);
}

TEST(Evolution, IdealPreservesNormAndLeavesGridLoudly)
{
    MixingSchedule s = storage_schedule();
    PolaritonField f = PolaritonField::on_grid(-60, 260, 1281, gauss);
    PolaritonField out = evolve_ideal(f, s, 0, 250);
    EXPECT_NEAR(out.norm2(), f.norm2(), 1e-8 * f.norm2());
    PolaritonField small = PolaritonField::on_grid(-60, 60, 481, gauss);
    EXPECT_THROW(evolve_ideal(small, s, 0, 250), GridError);
}

TEST(Evolution, GainWithoutDephasingIsIdeal)
{
    MixingSchedule s = storage_schedule();
    PolaritonField f = PolaritonField::on_grid(-60, 260, 1281, gauss);
    GainSetting g;
    PolaritonField a = evolve_ideal(f, s, 0, 250);
    GainDiagnostics diag;
    PolaritonField b = evolve_gain(f, s, g, 0, 250, &diag);
    EXPECT_EQ(a.psi, b.psi);
    EXPECT_EQ(diag.log_gain, 0);
    EXPECT_FALSE(diag.eta_clipped);
}

TEST(Evolution, EtaRulesAndClipping)
{
    GainSetting g;
    g.gamma1 = 0.1;
    EXPECT_DOUBLE_EQ(g.raw_eta(0.8), 0.5);
    EXPECT_DOUBLE_EQ(g.eta(0.8), 0.45);
    g.rule = GainSetting::Rule::steady_state;
    double ss = g.raw_eta(0.8);
    EXPECT_GT(ss, 0);
    EXPECT_LT(ss, 1);
    EXPECT_THROW(g.raw_eta(0), ValidationError);
}

TEST(Storage, IdealRunReturnsInputShape)
{
    StorageRun run = store_release_experiment(StorageConfig{});
    ASSERT_EQ(run.snapshots.size(), 3u);
    EXPECT_GT(run.shape_fidelity, 1 - 1e-6);
    EXPECT_LT(run.norm_drift, 1e-8);
    for (const Snapshot& sn : run.snapshots)
        EXPECT_DOUBLE_EQ(sn.commutator_deficit, 2 * sn.eta * std::sin(sn.theta) * std::sin(sn.theta));
}

TEST(Overlap, Properties)
{
    oracle::Gen gen(43);
    std::vector<cplx> a(50), b(50);
    for (auto& z : a)
        z = gen.complex_normal();
    for (auto& z : b)
        z = gen.complex_normal();
    double f = overlap_fidelity(a, b);
    EXPECT_GE(f, 0);
    EXPECT_LE(f, 1);
    std::vector<cplx> c = a;
    for (auto& z : c)
        z *= cplx(0.3, -2);
    EXPECT_NEAR(overlap_fidelity(a, c), 1, 1e-14);
    EXPECT_EQ(overlap_fidelity(a, std::vector<cplx>(50, 0)), 0);
}

TEST(SingleMode, DarkStatesMatchOperatorConstruction)
{
    oracle::Gen gen(44);
    const int n_max = 4;
    for (int k = 0; k < 10; ++k) {
        double th = gen.uniform(0, phys::pi / 2);
        Eigen::VectorXcd c = gen.unit_vector(n_max + 1);
        Eigen::VectorXcd out = single_mode_transfer({0.0, th}, c, 10);
        Eigen::VectorXcd ref = Eigen::VectorXcd::Zero(out.size());
        for (int n = 0; n <= n_max; ++n)
            ref += c(n) * dark_state_oracle(th, n, n_max);
        EXPECT_LT((out - ref).norm(), 1e-12);
        EXPECT_NEAR(out.norm(), 1, 1e-12);
    }
    EXPECT_THROW(single_mode_transfer({0.0}, Eigen::VectorXcd::Ones(5), 3), ValidationError);
}

TEST(SingleMode, DensityCopiedVerbatimAtQuarterTurn)
{
    oracle::Gen gen(45);
    Eigen::MatrixXcd rho = gen.density(4, 2);
    Eigen::MatrixXcd out = single_mode_transfer_density({0.0, phys::pi / 2}, rho, 5);
    const int m = 4;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            EXPECT_LT(std::abs(out(i, j) - rho(i, j)), 1e-12);  // |0, k> sits at index k
    Eigen::MatrixXcd raw = single_mode_transfer_density({0.0, phys::pi / 2}, rho, 5, false);
    EXPECT_LT(std::abs(raw(0, 1) + rho(0, 1)), 1e-12);
}

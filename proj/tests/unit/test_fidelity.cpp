#include <gtest/gtest.h>

#include <cmath>

#include "eit/errors.hpp"
#include "eit/fidelity.hpp"
#include "oracles.hpp"

using namespace eit;

TEST(Uhlmann, BasicProperties)
{
    oracle::Gen gen(70);
    for (int k = 0; k < 30; ++k) {
        int d = gen.integer(2, 5);
        QuantumState a = QuantumState::mixed(gen.density(d, gen.integer(1, d)));
        QuantumState b = QuantumState::mixed(gen.density(d, gen.integer(1, d)));
        double fab = uhlmann_fidelity(a, b);
        EXPECT_GE(fab, -1e-12);
        EXPECT_LE(fab, 1 + 1e-12);
        // square roots of rank-deficient states limit this to ~sqrt(eps)
        EXPECT_NEAR(fab, uhlmann_fidelity(b, a), 1e-7);
        EXPECT_NEAR(uhlmann_fidelity(a, a), 1, 1e-9);
    }
}

TEST(Uhlmann, PureStatesReduceToOverlap)
{
    oracle::Gen gen(71);
    for (int k = 0; k < 30; ++k) {
        Eigen::VectorXcd u = gen.unit_vector(4), v = gen.unit_vector(4);
        double ov = std::norm(u.dot(v));
        EXPECT_NEAR(uhlmann_fidelity(QuantumState::pure(u), QuantumState::pure(v)), ov, 1e-9);
        EXPECT_NEAR(pure_state_fidelity(u, QuantumState::pure(v)), ov, 1e-12);
    }
}

TEST(Uhlmann, CommutingStatesAreClassical)
{
    oracle::Gen gen(72);
    for (int k = 0; k < 30; ++k) {
        std::vector<double> p = gen.distribution(5), q = gen.distribution(5);
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(5, 5), B = A;
        double ref = 0;
        for (int i = 0; i < 5; ++i) {
            A(i, i) = p[i];
            B(i, i) = q[i];
            ref += std::sqrt(p[i] * q[i]);
        }
        ref *= ref;
        EXPECT_NEAR(classical_fidelity(p, q), ref, 1e-14);
        EXPECT_NEAR(uhlmann_fidelity(QuantumState::mixed(A), QuantumState::mixed(B)), ref, 1e-10);
    }
}

TEST(States, Validation)
{
    Eigen::VectorXcd v(2);
    v << 1, 1;
    EXPECT_THROW(QuantumState::pure(v), ValidationError);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
    EXPECT_THROW(QuantumState::mixed(m), ValidationError);
    QuantumState mixed = QuantumState::mixed(0.5 * m);
    EXPECT_FALSE(mixed.is_pure());
    EXPECT_THROW(mixed.vector(), ValidationError);
    EXPECT_THROW(classical_fidelity({0.5, 0.5}, {1.0}), ValidationError);
}

TEST(PsdSqrt, SquaresBackAndClips)
{
    oracle::Gen gen(73);
    Eigen::MatrixXcd r = gen.density(4, 2);
    Eigen::MatrixXcd s = psd_sqrt(r);
    EXPECT_LT((s * s - r).cwiseAbs().maxCoeff(), 1e-12);
    Eigen::MatrixXcd tiny = Eigen::MatrixXcd::Zero(2, 2);
    tiny(0, 0) = 1;
    tiny(1, 1) = -1e-14;
    EXPECT_EQ(psd_sqrt(tiny)(1, 1), cplx(0, 0));
    tiny(1, 1) = -1e-3;
    EXPECT_THROW(psd_sqrt(tiny), ValidationError);
}

TEST(AtomLoss, FockMatchesBruteForce)
{
    for (int N = 2; N <= 9; ++N)
        for (int n = 0; n < N; ++n) {
            std::vector<oracle::cplx> c(n + 1, 0);
            c[n] = 1;
            MemoryErrorModel m;
            m.kind = ErrorKind::atom_loss;
            m.atoms = N;
            m.state = StoredState::fock(n);
            EXPECT_NEAR(decoherence_fidelity(m).value, oracle::atom_loss_fidelity(c, N), 1e-12) << N << " " << n;
        }
}

TEST(AtomLoss, CoherentIsLeadingOrder)
{
    // truncated coherent amplitudes on N = 10 atoms; the closed form is O(1/N)
    const int N = 10;
    const double a2 = 0.5;
    std::vector<oracle::cplx> c;
    double fact = 1;
    for (int n = 0; n <= 4; ++n) {
        if (n > 0)
            fact *= n;
        c.push_back(std::exp(-a2 / 2) * std::pow(std::sqrt(a2), n) / std::sqrt(fact));
    }
    MemoryErrorModel m;
    m.kind = ErrorKind::atom_loss;
    m.atoms = N;
    m.state = StoredState::coherent(a2);
    FidelityValue f = decoherence_fidelity(m);
    EXPECT_TRUE(f.leading_order_only);
    EXPECT_NEAR(f.value, 1, 1e-12);
    EXPECT_NEAR(oracle::atom_loss_fidelity(c, N), f.value, 1.0 / N);
}

TEST(Motion, MatchesPhaseAveraging)
{
    oracle::Gen gen(74);
    for (int k = 0; k < 30; ++k) {
        int N = gen.integer(1, 50);
        double D = gen.uniform(0, 10), t = gen.uniform(0, 1);
        EXPECT_NEAR(motion_fidelity(N, D, t), oracle::motion_fidelity_by_averaging(N, D * t), 1e-10);
    }
    EXPECT_DOUBLE_EQ(motion_fidelity(7, 0, 1), 1);
}

TEST(SpinFlip, AsymmetricFockForms)
{
    MemoryErrorModel m;
    m.kind = ErrorKind::spin_flip_asym;
    m.atoms = 100;
    m.state = StoredState::fock(3);
    FidelityValue f = decoherence_fidelity(m);
    EXPECT_DOUBLE_EQ(f.value, 1 - 4.0 / 100);
    EXPECT_DOUBLE_EQ(f.exact_ratio, (1 - 0.01) / (1 - 0.03));
    m.kind = ErrorKind::spin_flip_sym;
    EXPECT_DOUBLE_EQ(decoherence_fidelity(m).value, 1 - 7.0 / 100);
    m.kind = ErrorKind::phase_flip;
    EXPECT_DOUBLE_EQ(decoherence_fidelity(m).value, 1 - 6.0 / 100);
    m.kind = ErrorKind::spin_flip_sym;
    m.state = StoredState::generic(2, 1);
    EXPECT_THROW(decoherence_fidelity(m), ValidationError);
}

TEST(StoredStates, Validation)
{
    EXPECT_THROW(StoredState::fock(-1), ValidationError);
    EXPECT_THROW(StoredState::coherent(-1), ValidationError);
    EXPECT_DOUBLE_EQ(StoredState::coherent(2.5).mean(), 2.5);
    EXPECT_DOUBLE_EQ(error_rate(0.9), 1 - 0.9);
}

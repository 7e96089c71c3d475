#include <gtest/gtest.h>

#include <cmath>

#include "eit/algebra.hpp"
#include "eit/errors.hpp"
#include "oracles.hpp"

using namespace eit;

TEST(Structure, RegistryIdentitiesHold)
{
    for (const StructureFunction& f : structure_registry()) {
        int dim = 8;
        for (int k = 0; k <= dim; ++k)
            if (f.at(k) < 0) {
                dim = k - 1;
                break;
            }
        OscillatorRep rep = build_rep(f, dim);
        CommutatorDiagonals c = commutators(rep);
        for (int n = 0; n < rep.faithful_dim && n < c.commutator.size(); ++n) {
            EXPECT_NEAR(c.commutator(n), c.expected_commutator(n), 1e-12) << f.name << " n=" << n;
            EXPECT_NEAR(c.anticommutator(n), c.expected_anticommutator(n), 1e-12) << f.name << " n=" << n;
        }
        EXPECT_LT(c.max_offdiagonal, 1e-12) << f.name;
        Eigen::MatrixXcd ada = rep.adag * rep.a;
        for (int n = 0; n < rep.faithful_dim; ++n)
            EXPECT_NEAR(ada(n, n).real(), f.at(n), 1e-12) << f.name;
    }
}

TEST(Structure, QDeformedTendsToHarmonic)
{
    StructureFunction h = harmonic();
    for (double q : {1.001, 0.999, 1.0 + 1e-6}) {
        StructureFunction f = q_deformed(q);
        StructureFunction g = arik_coon(q);
        for (int n = 0; n < 10; ++n) {
            EXPECT_NEAR(f.at(n), h.at(n), 1e-3 * (n + 1)) << q;
            EXPECT_NEAR(g.at(n), h.at(n), 1e-2 * (n + 1)) << q;
        }
    }
    EXPECT_THROW(q_deformed(0), ValidationError);
}

TEST(Structure, KnownValues)
{
    EXPECT_EQ(fermionic().at(2), 0);
    EXPECT_EQ(fermionic().at(1), 1);
    EXPECT_DOUBLE_EQ(parafermionic(2).at(1), 2);
    EXPECT_DOUBLE_EQ(parafermionic(2).at(3), 0);
    EXPECT_DOUBLE_EQ(parabosonic(3).at(1), 3);
    EXPECT_DOUBLE_EQ(parabosonic(3).at(2), 2);
    EXPECT_NEAR(parapolariton_structure(0.25, phys::pi / 2).at(4), 2, 1e-14);
    EXPECT_THROW(parapolariton_structure(0.5, 0), ValidationError);
}

TEST(Fock, LadderAndNormalisation)
{
    OscillatorRep rep = build_rep(q_deformed(1.3), 7);
    for (int n = 0; n < 6; ++n) {
        Eigen::VectorXcd v = fock_state(rep, n);
        EXPECT_NEAR(v.norm(), 1, 1e-12);
        EXPECT_NEAR(std::abs(v(n)), 1, 1e-12);
    }
    OscillatorRep ferm = build_rep(fermionic(), 4);
    EXPECT_THROW(fock_state(ferm, 2), SingularError);
}

TEST(Fock, NegativePhiIsRejected)
{
    StructureFunction bad{"bad", "", [](double x) { return x * (2 - x); }};
    EXPECT_THROW(build_rep(bad, 6), ValidationError);
}

TEST(Bosonization, CanonicalCommutator)
{
    oracle::Gen gen(60);
    for (int k = 0; k < 10; ++k) {
        double q = gen.uniform(0.5, 2);
        OscillatorRep rep = build_rep(q_deformed(q), 8);
        OscillatorRep b = bosonization(rep);
        Eigen::MatrixXcd c = b.a * b.adag - b.adag * b.a;
        for (int n = 0; n < 7; ++n)
            EXPECT_NEAR(c(n, n).real(), 1, 1e-10) << q;
    }
    EXPECT_THROW(bosonization(build_rep(fermionic(), 4)), SingularError);
}

TEST(Spectrum, HarmonicIsEquallySpaced)
{
    std::vector<double> E = energy_spectrum(harmonic(), 2.0, 6);
    ASSERT_EQ(E.size(), 7u);
    for (int n = 0; n <= 6; ++n)
        EXPECT_DOUBLE_EQ(E[n], 2.0 * (n + 0.5));
}

TEST(Spectrum, CompressionEndpoints)
{
    MixingSchedule s = storage_schedule();
    CompressionTrace tr = spectrum_compression_trace(s, 0.2, 1.0, 5, {0, 70, 250});
    ASSERT_EQ(tr.spacing.size(), 3u);
    // spacing = 1 - 2 eta sin^2 theta
    for (size_t k = 0; k < 3; ++k) {
        double sn = std::sin(tr.theta[k]);
        EXPECT_NEAR(tr.spacing[k], 1 - 0.4 * sn * sn, 1e-12);
    }
    EXPECT_LT(tr.spacing[1], tr.spacing[0]);
    EXPECT_NEAR(tr.spacing[1], 0.6, 1e-5);
}

#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eit/polariton.hpp"

namespace eit {

// Generalised deformed oscillator defined by a^dagger a = Phi(N).
struct StructureFunction {
    std::string name;
    std::string row;  // label in the standard table of deformation schemes
    std::function<double(double)> phi;

    // Phi at an integer argument; values within 1e-13 of zero are snapped to
    // 0 so that sin^2(pi k) style zeros are exact.
    double at(int k) const;
};

StructureFunction harmonic();                // x
StructureFunction q_deformed(double q);      // (q^x - q^-x) / (q - q^-1)
StructureFunction arik_coon(double q);       // (q^x - 1) / (q - 1)
StructureFunction parafermionic(int p);      // x (p + 1 - x)
StructureFunction parabosonic(int p);        // x cos^2(pi x/2) + (x + p - 1) sin^2(pi x/2)
StructureFunction fermionic();               // sin^2(pi x/2)
StructureFunction parapolariton_structure(double eta, double theta);  // x (1 - 2 eta sin^2 theta)

// Rows i, ii, iii, v, vii, ix with representative parameters.
std::vector<StructureFunction> structure_registry();

struct OscillatorRep {
    int dim = 0;
    Eigen::MatrixXcd a, adag, N;
    std::vector<double> phi;  // Phi(0..dim), the last entry only for the top-level check
    int faithful_dim = 0;     // identities hold on levels 0..faithful_dim-1
};

// a|n> = sqrt(Phi(n)) |n-1>, a^dagger = a^T.
OscillatorRep build_rep(const StructureFunction& f, int dim);

// (a^dagger)^n |0> / sqrt([n]!)
Eigen::VectorXcd fock_state(const OscillatorRep& rep, int n);

struct CommutatorDiagonals {
    Eigen::VectorXd commutator;      // [a, a^dagger]_nn, n < dim - 1
    Eigen::VectorXd anticommutator;  // {a, a^dagger}_nn, n < dim - 1
    Eigen::VectorXd expected_commutator;      // Phi(n+1) - Phi(n)
    Eigen::VectorXd expected_anticommutator;  // Phi(n+1) + Phi(n)
    double top_commutator;  // level dim-1, where truncation breaks the identity
    double max_offdiagonal;
};

CommutatorDiagonals commutators(const OscillatorRep& rep);

// E(n) = (hbar omega / 2)(Phi(n) + Phi(n+1)) for n = 0..n_max; hbar = 1.
std::vector<double> energy_spectrum(const StructureFunction& f, double omega, int n_max);

// Canonical boson b = a sqrt(N / Phi(N)), zero on the vacuum.
OscillatorRep bosonization(const OscillatorRep& rep);

struct CompressionTrace {
    std::vector<double> times;
    std::vector<double> theta;
    std::vector<std::vector<double>> energies;  // [time][n]
    std::vector<double> spacing;                // E(1) - E(0) at each time
};

CompressionTrace spectrum_compression_trace(const MixingSchedule& s, double eta, double omega, int n_max,
                                            const std::vector<double>& times);

}  // namespace eit

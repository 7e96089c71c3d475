#include "eit/algebra.hpp"

#include <cmath>

#include "eit/errors.hpp"

namespace eit {

double StructureFunction::at(int k) const
{
    double v = phi(double(k));
    return std::abs(v) < 1e-13 ? 0.0 : v;
}

StructureFunction harmonic()
{
    return {"harmonic", "i", [](double x) { return x; }};
}

StructureFunction q_deformed(double q)
{
    require(q > 0, "q_deformed: q must be positive");
    if (q == 1)
        return {"q-deformed", "ii", [](double x) { return x; }};
    return {"q-deformed", "ii", [q](double x) { return (std::pow(q, x) - std::pow(q, -x)) / (q - 1 / q); }};
}

StructureFunction arik_coon(double q)
{
    require(q > 0, "arik_coon: q must be positive");
    if (q == 1)
        return {"arik-coon", "iii", [](double x) { return x; }};
    return {"arik-coon", "iii", [q](double x) { return (std::pow(q, x) - 1) / (q - 1); }};
}

StructureFunction parafermionic(int p)
{
    require(p >= 1, "parafermionic: order p must be a positive integer");
    return {"parafermionic", "v", [p](double x) { return x * (p + 1 - x); }};
}

StructureFunction parabosonic(int p)
{
    require(p >= 1, "parabosonic: order p must be a positive integer");
    return {"parabosonic", "vii", [p](double x) {
                double c = std::cos(phys::pi * x / 2), s = std::sin(phys::pi * x / 2);
                return x * c * c + (x + p - 1) * s * s;
            }};
}

StructureFunction fermionic()
{
    return {"fermionic", "ix", [](double x) {
                double s = std::sin(phys::pi * x / 2);
                return s * s;
            }};
}

StructureFunction parapolariton_structure(double eta, double theta)
{
    require(eta >= 0 && eta < 0.5, "parapolariton_structure: eta must lie in [0, 1/2)");
    require(theta >= 0 && theta <= phys::pi / 2, "parapolariton_structure: theta must lie in [0, pi/2]");
    double st = std::sin(theta);
    double slope = 1 - 2 * eta * st * st;
    return {"parapolariton", "", [slope](double x) { return slope * x; }};
}

std::vector<StructureFunction> structure_registry()
{
    return {harmonic(), q_deformed(1.3), arik_coon(1.3), parafermionic(3), parabosonic(3), fermionic()};
}

OscillatorRep build_rep(const StructureFunction& f, int dim)
{
    require(dim >= 2, "build_rep: dimension must be at least 2");
    OscillatorRep r;
    r.dim = dim;
    r.phi.resize(dim + 1);
    for (int k = 0; k <= dim; ++k) {
        r.phi[k] = f.at(k);
        if (r.phi[k] < 0)
            throw ValidationError("build_rep: Phi(" + std::to_string(k) + ") = " + std::to_string(r.phi[k])
                                  + " is negative");
    }
    require(r.phi[0] == 0, "build_rep: Phi(0) must vanish");
    r.a = Eigen::MatrixXcd::Zero(dim, dim);
    r.N = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        r.N(n, n) = double(n);
        if (n > 0)
            r.a(n - 1, n) = std::sqrt(r.phi[n]);
    }
    r.adag = r.a.adjoint();
    r.faithful_dim = dim - 1;
    for (int k = 1; k < dim; ++k)
        if (r.phi[k] == 0) {
            r.faithful_dim = std::min(r.faithful_dim, k);
            break;
        }
    return r;
}

Eigen::VectorXcd fock_state(const OscillatorRep& rep, int n)
{
    require(n >= 0 && n < rep.dim, "fock_state: level outside the representation");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(rep.dim);
    v(0) = 1;
    double fact = 1;
    for (int k = 1; k <= n; ++k) {
        v = rep.adag * v;
        fact *= rep.phi[k];
    }
    if (fact == 0)
        throw SingularError("fock_state: [n]! vanishes, level " + std::to_string(n) + " is unreachable");
    return v / std::sqrt(fact);
}

CommutatorDiagonals commutators(const OscillatorRep& rep)
{
    const int m = rep.dim - 1;
    Eigen::MatrixXcd C = rep.a * rep.adag - rep.adag * rep.a;
    Eigen::MatrixXcd A = rep.a * rep.adag + rep.adag * rep.a;
    CommutatorDiagonals d;
    d.commutator.resize(m);
    d.anticommutator.resize(m);
    d.expected_commutator.resize(m);
    d.expected_anticommutator.resize(m);
    for (int n = 0; n < m; ++n) {
        d.commutator(n) = C(n, n).real();
        d.anticommutator(n) = A(n, n).real();
        d.expected_commutator(n) = rep.phi[n + 1] - rep.phi[n];
        d.expected_anticommutator(n) = rep.phi[n + 1] + rep.phi[n];
    }
    d.top_commutator = C(m, m).real();
    d.max_offdiagonal = 0;
    for (int i = 0; i < rep.dim; ++i)
        for (int j = 0; j < rep.dim; ++j)
            if (i != j)
                d.max_offdiagonal = std::max({d.max_offdiagonal, std::abs(C(i, j)), std::abs(A(i, j))});
    return d;
}

std::vector<double> energy_spectrum(const StructureFunction& f, double omega, int n_max)
{
    require(n_max >= 0, "energy_spectrum: n_max must be non-negative");
    std::vector<double> E(n_max + 1);
    for (int n = 0; n <= n_max; ++n)
        E[n] = 0.5 * omega * (f.at(n) + f.at(n + 1));
    return E;
}

OscillatorRep bosonization(const OscillatorRep& rep)
{
    OscillatorRep b = rep;
    Eigen::VectorXcd s = Eigen::VectorXcd::Zero(rep.dim);
    for (int n = 1; n < rep.dim; ++n) {
        if (rep.phi[n] <= 0)
            throw SingularError("bosonization: Phi(" + std::to_string(n) + ") = 0, the map is not invertible");
        s(n) = std::sqrt(double(n) / rep.phi[n]);
    }
    b.a = rep.a * s.asDiagonal();
    b.adag = b.a.adjoint();
    for (int k = 0; k <= rep.dim; ++k)
        b.phi[k] = k;
    b.faithful_dim = rep.dim - 1;
    return b;
}

CompressionTrace spectrum_compression_trace(const MixingSchedule& s, double eta, double omega, int n_max,
                                            const std::vector<double>& times)
{
    CompressionTrace tr;
    tr.times = times;
    for (double t : times) {
        double th = s.theta(t);
        tr.theta.push_back(th);
        auto E = energy_spectrum(parapolariton_structure(eta, th), omega, n_max);
        tr.spacing.push_back(n_max >= 1 ? E[1] - E[0] : 0.0);
        tr.energies.push_back(std::move(E));
    }
    return tr;
}

}  // namespace eit

#include "eit/atomcore.hpp"

#include <cmath>
#include <string>

#include "eit/errors.hpp"

namespace eit {

namespace phys {
// CODATA 2018; c, h and kB are exact in the SI
const double c = 299792458.0;
const double hbar = 6.62607015e-34 / (2 * pi);
const double eps0 = 8.8541878128e-12;
const double kB = 1.380649e-23;
const double amu = 1.66053906660e-27;
}  // namespace phys

void LambdaScheme::validate() const
{
    require(gamma_1_decay >= 0 && gamma_2_decay >= 0 && gamma_12_decay >= 0,
            "LambdaScheme: decay rates must be non-negative");
    require(omega_31 > 0 && omega_32 > 0, "LambdaScheme: transition frequencies must be positive");
    require(probe_wavelength > 0, "LambdaScheme: probe wavelength must be positive");
}

LambdaScheme make_scheme_rb87(double probe_wavelength)
{
    const double two_pi = 2 * phys::pi;
    LambdaScheme s;
    s.gamma_1_decay = two_pi * 5.75e6;
    s.gamma_2_decay = two_pi * 5.75e6;
    s.gamma_12_decay = two_pi * 1e3;
    s.probe_wavelength = probe_wavelength;
    s.omega_31 = two_pi * phys::c / probe_wavelength;
    // F=1 / F=2 ground splitting of Rb87, 6.834682611 GHz
    s.omega_32 = s.omega_31 - two_pi * 6.834682611e9;
    s.validate();
    return s;
}

LambdaScheme with_dephasing(LambdaScheme s, double gamma1_over_gamma3)
{
    require(gamma1_over_gamma3 >= 0, "with_dephasing: negative dephasing");
    s.gamma_12_decay = 2 * gamma1_over_gamma3 * s.gamma3();
    return s;
}

void DriveFields::validate() const
{
    require(rabi_pump >= 0 && rabi_probe >= 0, "DriveFields: Rabi frequencies must be non-negative");
    require(std::isfinite(detuning_probe) && std::isfinite(detuning_pump),
            "DriveFields: detunings must be finite");
}

Populations::Populations(double n1, double n2, double n3) : n1_(n1), n2_(n2), n3_(n3)
{
    for (double n : {n1, n2, n3})
        require(n >= 0 && n <= 1, "Populations: each n_i must lie in [0,1]");
    require(std::abs(n1 + n2 + n3 - 1) <= 1e-12, "Populations: n1+n2+n3 must equal 1");
}

DensityMatrix3::DensityMatrix3(const Matrix3c& m) : m_(m)
{
    require((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-10, "DensityMatrix3: not Hermitian");
    require(std::abs(m.trace() - cplx(1, 0)) <= 1e-10, "DensityMatrix3: trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Matrix3c> es(0.5 * (m + m.adjoint()));
    require(es.eigenvalues().minCoeff() >= -1e-9, "DensityMatrix3: negative eigenvalue");
}

Populations DensityMatrix3::populations() const
{
    auto clip = [](double x) { return std::min(1.0, std::max(0.0, x)); };
    double n1 = clip(m_(0, 0).real()), n2 = clip(m_(1, 1).real()), n3 = clip(m_(2, 2).real());
    double s = n1 + n2 + n3;
    n1 /= s;
    n2 /= s;
    return Populations(n1, n2, std::max(0.0, 1 - n1 - n2));
}

UnitSystem::UnitSystem(double g3) : gamma3(g3)
{
    require(g3 > 0, "UnitSystem: gamma3 must be positive");
}

double UnitSystem::length_to_internal(double x) const { return x * gamma3 / phys::c; }
double UnitSystem::length_to_si(double x) const { return x * phys::c / gamma3; }

double generalized_rabi(double dipole_field_product, double detuning)
{
    return std::hypot(dipole_field_product, detuning);
}

GroundSuperpositions dark_bright_states(double rabi_probe, double rabi_pump)
{
    double norm = std::hypot(rabi_probe, rabi_pump);
    if (norm == 0)
        throw ValidationError("dark_bright_states: both Rabi frequencies are zero");
    GroundSuperpositions g;
    g.coupled << rabi_probe / norm, rabi_pump / norm;
    g.noncoupled << rabi_pump / norm, -rabi_probe / norm;
    return g;
}

Matrix3c lambda_interaction(double rabi_probe, double rabi_pump)
{
    Matrix3c h = Matrix3c::Zero();
    h(2, 0) = -0.5 * rabi_probe;
    h(2, 1) = -0.5 * rabi_pump;
    h(0, 2) = std::conj(h(2, 0));
    h(1, 2) = std::conj(h(2, 1));
    return h;
}

}  // namespace eit

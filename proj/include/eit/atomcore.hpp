#pragma once

#include <complex>

#include <Eigen/Dense>

namespace eit {

using cplx = std::complex<double>;
using Matrix3c = Eigen::Matrix3cd;

namespace phys {
// SI values, CODATA 2018.
extern const double c;
extern const double hbar;
extern const double eps0;
extern const double kB;
extern const double amu;
constexpr double pi = 3.14159265358979323846;
}  // namespace phys

// Three-level Lambda atom. Levels |1>,|2> are ground states, |3> is excited.
// All rates in rad/s.
struct LambdaScheme {
    double gamma_1_decay = 0;   // Gamma1, |3> -> |1>
    double gamma_2_decay = 0;   // Gamma2, |3> -> |2>
    double gamma_12_decay = 0;  // Gamma12, incoherent |1> -> |2>
    double omega_31 = 0;
    double omega_32 = 0;
    double probe_wavelength = 0;  // m

    double gamma3() const { return 0.5 * (gamma_1_decay + gamma_2_decay); }
    double gamma1() const { return 0.5 * gamma_12_decay; }

    void validate() const;
};

// Rb87 D1 line with the linewidths used throughout. lambda_p defaults to 795 nm.
LambdaScheme make_scheme_rb87(double probe_wavelength = 795e-9);

// Same scheme with Gamma12 chosen so that gamma1 = ratio * gamma3.
LambdaScheme with_dephasing(LambdaScheme s, double gamma1_over_gamma3);

struct DriveFields {
    double rabi_pump = 0;   // Omega_P >= 0
    double rabi_probe = 0;  // Omega_p >= 0
    double phase_pump = 0;
    double phase_probe = 0;
    double detuning_probe = 0;  // delta_p = omega_31 - omega_p
    double detuning_pump = 0;   // delta_P = omega_32 - omega_P

    double two_photon_detuning() const { return detuning_probe - detuning_pump; }
    void validate() const;
};

class Populations {
public:
    Populations(double n1, double n2, double n3);
    double n1() const { return n1_; }
    double n2() const { return n2_; }
    double n3() const { return n3_; }

private:
    double n1_, n2_, n3_;
};

// Hermitian, unit-trace, positive 3x3 density matrix. Index 0..2 maps to |1>..|3>.
class DensityMatrix3 {
public:
    explicit DensityMatrix3(const Matrix3c& m);
    const Matrix3c& matrix() const { return m_; }
    cplx operator()(int i, int j) const { return m_(i - 1, j - 1); }  // 1-based like rho_ij
    Populations populations() const;

private:
    Matrix3c m_;
};

// Internal units: time in 1/gamma3, length in c/gamma3.
struct UnitSystem {
    double gamma3;  // rad/s

    explicit UnitSystem(double g3);
    double rate_to_internal(double r) const { return r / gamma3; }
    double rate_to_si(double r) const { return r * gamma3; }
    double time_to_internal(double t) const { return t * gamma3; }
    double time_to_si(double t) const { return t / gamma3; }
    double length_to_internal(double x) const;
    double length_to_si(double x) const;
};

// sqrt((mu E / hbar)^2 + delta^2)
double generalized_rabi(double dipole_field_product, double detuning);

struct GroundSuperpositions {
    Eigen::Vector2d noncoupled;  // |NC> in the {|1>,|2>} basis
    Eigen::Vector2d coupled;     // |C>
};

GroundSuperpositions dark_bright_states(double rabi_probe, double rabi_pump);

// Interaction Hamiltonian in units of hbar, basis {|1>,|2>,|3>}:
// H_I = -(1/2)(Omega_p |3><1| + Omega_P |3><2|) + h.c.
Matrix3c lambda_interaction(double rabi_probe, double rabi_pump);

}  // namespace eit

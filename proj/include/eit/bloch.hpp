#pragma once

#include <array>
#include <vector>

#include "eit/atomcore.hpp"

namespace eit {

// The six independent slowly-varying elements of the Lambda density matrix.
// The remaining three follow from Hermiticity.
struct ObeState {
    cplx rho31 = 0, rho32 = 0, rho21 = 0, rho33 = 0, rho22 = 0, rho11 = 0;

    static ObeState from_matrix(const Matrix3c& m);
    static ObeState ground(int level);  // all population in |level>
    Matrix3c to_matrix() const;
    std::array<cplx, 6> as_array() const { return {rho31, rho32, rho21, rho33, rho22, rho11}; }
    static ObeState from_array(const std::array<cplx, 6>& a);
    double trace() const { return (rho11 + rho22 + rho33).real(); }
};

// Right-hand side of the rotating-frame Bloch equations, rates in rad/s.
ObeState obe_rhs(const ObeState& s, const LambdaScheme& scheme, const DriveFields& fields);

// Linear generator acting on the row-major vectorised 3x3 matrix, rho_dot = L rho.
// Works for non-Hermitian arguments too, so the map is complex-linear.
Eigen::Matrix<cplx, 9, 9> obe_generator(const LambdaScheme& scheme, const DriveFields& fields);

struct Trajectory {
    std::vector<double> t;  // s
    std::vector<ObeState> states;
};

// Adaptive Dormand-Prince integration with dense output at sample_times
// (seconds, ascending). If sample_times is empty, 101 uniform samples on
// [0, t_end] are used. tol is the relative and absolute error target.
Trajectory integrate_obe(const ObeState& initial, const LambdaScheme& scheme, const DriveFields& fields,
                         double t_end, double tol, std::vector<double> sample_times = {});

// Solve rho_dot = 0 with the rho11 row replaced by Tr rho = 1.
DensityMatrix3 steady_state_full(const LambdaScheme& scheme, const DriveFields& fields);

// Closed-form probe coherence with populations held fixed.
cplx steady_state_unsaturated(const Populations& pops, const LambdaScheme& scheme, const DriveFields& fields);

// N_p = (lambda/2pi)^3 * N/V * orientation_factor
double scaled_density(double wavelength, double number_density, double orientation_factor = 1.0);

struct Susceptibility {
    cplx value;
    double scaled_density;
    double detuning_probe;
};

// Weak-probe susceptibility with the pump on resonance.
Susceptibility susceptibility(const Populations& pops, const LambdaScheme& scheme, const DriveFields& fields,
                              double scaled_density);

// The same quantity from the full steady state: 6 pi N_p Gamma1 rho31 / Omega_p.
// Saturation is included, so Omega_p should be small compared with gamma3.
cplx susceptibility_full(const LambdaScheme& scheme, const DriveFields& fields, double scaled_density);

}  // namespace eit

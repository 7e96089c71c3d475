#pragma once

#include <Eigen/Dense>

#include "eit/atomcore.hpp"
#include "eit/polariton.hpp"

namespace eit {

// Four-level tripod: excited |0>, ground states |1>,|2>,|3>. Probe on 1-0,
// pump on 2-0, trigger on 3-0. Basis order {|0>,|1>,|2>,|3>}.

// Population transfer rates.
struct TripodDecay {
    double to1 = 0, to2 = 0, to3 = 0;  // |0> -> |j>   (gamma_11, gamma_22, gamma_33)
    double from2_to1 = 0;              // |2> -> |1>   (gamma_12 in the population lines)
    double from3_to1 = 0;              // |3> -> |1>   (gamma_13)
    double from3_to2 = 0;              // |3> -> |2>   (gamma_23)
};

// Coherence damping rates.
struct TripodDephasing {
    double g10 = 0, g20 = 0, g30 = 0;  // optical
    double g12 = 0, g13 = 0, g23 = 0;  // ground
};

// How the ground-coherence detuning terms enter. consistent uses
// i d rho_ij/dt = +Delta_ij rho_ij, which follows from the Hamiltonian and
// damps; as_printed keeps -Delta_ij, which makes ground coherences grow.
enum class GroundSign { consistent, as_printed };

struct TripodScheme {
    cplx rabi_pump = 0;     // Omega
    cplx rabi_probe = 0;    // Omega_P
    cplx rabi_trigger = 0;  // Omega_T
    double delta1 = 0, delta2 = 0, delta3 = 0;
    TripodDecay decay;
    TripodDephasing dephasing;
    GroundSign sign = GroundSign::consistent;

    cplx Delta10() const { return {delta1, dephasing.g10}; }
    cplx Delta20() const { return {delta2, dephasing.g20}; }
    cplx Delta30() const { return {delta3, dephasing.g30}; }
    cplx Delta12() const { return {delta2 - delta1, -dephasing.g12}; }
    cplx Delta13() const { return {delta3 - delta1, -dephasing.g13}; }
    cplx Delta23() const { return {delta3 - delta2, -dephasing.g23}; }

    void validate() const;
};

class TripodState {
public:
    explicit TripodState(const Eigen::Matrix4cd& m);
    const Eigen::Matrix4cd& matrix() const { return m_; }

private:
    Eigen::Matrix4cd m_;
};

// Interaction matrix, H(0,j) = conj(Omega_j), H(j,0) = Omega_j.
Eigen::Matrix4cd tripod_interaction(const TripodScheme& s);

struct TripodEigenstates {
    Eigen::Vector4d dark1, dark2, bright_plus, bright_minus;
    double energy_plus, energy_minus;
    Eigen::Matrix4d interaction;
};

// Zero-detuning eigenstates for real Rabi frequencies. Bright states are
// (Omega_P|1> + Omega|2> + Omega_T|3>)/W +- |0>, over sqrt(2).
// With Omega_P = Omega_T = 0 the dark pair is |1>, |3>.
TripodEigenstates tripod_eigenstates(double rabi_pump, double rabi_probe, double rabi_trigger);

// d rho / dt from the eleven displayed lines plus Hermitian closure.
Eigen::Matrix4cd tripod_obe_rhs(const Eigen::Matrix4cd& rho, const TripodScheme& s);

// Fixed-step RK4; adequate for the smooth mean-field dynamics.
Eigen::Matrix4cd tripod_integrate(const Eigen::Matrix4cd& rho0, const TripodScheme& s, double t_end, int steps);

// (rho10)_ss / Omega_P in closed form with rho11 = rho33 = 1/2.
// sign = consistent substitutes -Delta_ij for the ground-coherence factors.
cplx rho10_steady(const TripodScheme& s);

// Same quantity by solving the coherence equations with the populations
// frozen at rho11 = rho33 = 1/2, no weak-field expansion.
cplx rho10_frozen_populations(const TripodScheme& s);

struct TwoPolaritonField {
    PolaritonField probe;
    PolaritonField trigger;
    cplx rho13 = 0;  // ground coherence, frozen in the decoupled regime
};

TwoPolaritonField copropagate(const TwoPolaritonField& f, const MixingSchedule& s, double t0, double t1);

struct ScatteringRun {
    std::vector<double> times;
    std::vector<double> thetas;
    std::vector<TwoPolaritonField> snapshots;
    double displacement;
    double correlation_probe;    // |<in shifted|out>| / norms
    double correlation_trigger;
    double norm_drift_probe;
    double norm_drift_trigger;
};

struct ScatteringConfig {
    double x_lo = -100, x_hi = 260;
    size_t points = 1441;
    double probe_center = 0;
    double trigger_center = -30;
    double width = 10;  // envelopes exp(-((x - x0)/width)^2)
    MixingSchedule schedule = storage_schedule(0.01);
    double theta_mid = 3 * phys::pi / 7;
    double t_end = 250;
};

// Snapshots at theta = 0, theta_mid (first crossing) and the end.
ScatteringRun scattering_experiment(const ScatteringConfig& cfg);

}  // namespace eit

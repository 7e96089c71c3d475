#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eit/atomcore.hpp"

namespace eit {

// Everything here is in internal units: gamma3 = 1 and c = 1.

struct MixingSchedule {
    std::function<double(double)> rabi_pump;  // Omega_P(t) > 0
    double coupling = 0;                      // g^2 N

    double theta(double t) const;
    double velocity(double t) const;  // cos^2 theta, v_g / c
};

// 0.8 (1 - 0.5 tanh[0.1 (t - 15)] + 0.5 tanh[0.1 (t - 125)])
double storage_rabi(double t);
MixingSchedule storage_schedule(double coupling = 0.01);

double mixing_angle(const MixingSchedule& s, double t);

struct GroupIndex {
    double n_g;
    double v_g;
};

// Stationary group index with ground-state dephasing.
GroupIndex group_index_stationary(double coupling, double rabi_pump, double gamma1, double gamma3 = 1);

struct PolaritonField {
    std::vector<double> x;  // uniform
    std::vector<cplx> psi;
    double delta_k = 0;  // wavevector mismatch of the spin-wave phase

    static PolaritonField on_grid(double lo, double hi, size_t n, const std::function<cplx(double)>& f);
    double spacing() const { return x[1] - x[0]; }
    double norm2() const;  // int |psi|^2 dx

    std::vector<cplx> electric(double theta) const;  // cos theta psi
    std::vector<cplx> spin(double theta) const;      // sqrt(N) rho12 = -sin theta psi e^{-i dk x}
    static PolaritonField recompose(const std::vector<double>& x, const std::vector<cplx>& E,
                                    const std::vector<cplx>& S, double theta, double delta_k = 0);
};

// dk = (omega_32 / c)(cos angle - 1) for a pump tilted by angle.
double wavevector_mismatch(double omega_32_over_c, double angle);

// Translate along the characteristics; displacement from adaptive quadrature.
PolaritonField evolve_ideal(const PolaritonField& f, const MixingSchedule& s, double t0, double t1);

double displacement(const MixingSchedule& s, double t0, double t1);

struct GainSetting {
    enum class Rule { rate_estimate, steady_state };

    double gamma1 = 0;
    double gamma3 = 1;
    double eta_max = 0.45;
    Rule rule = Rule::rate_estimate;

    // Population of |2> at control Rabi frequency omega, before clipping.
    double raw_eta(double rabi_pump) const;
    double eta(double rabi_pump) const;
};

struct GainDiagnostics {
    double displacement = 0;
    double log_gain = 0;  // integral of the amplitude rate
    bool eta_clipped = false;
    std::vector<std::string> warnings;
};

PolaritonField evolve_gain(const PolaritonField& f, const MixingSchedule& s, const GainSetting& g, double t0, double t1,
                           GainDiagnostics* diag = nullptr);

// |d theta/dt| max(1, tan theta) / sqrt(g^2 N)
double adiabaticity(const MixingSchedule& s, double t);

struct Snapshot {
    double t;
    double theta;
    PolaritonField field;
    std::vector<cplx> electric;
    std::vector<cplx> spin;
    double eta;
    double commutator_deficit;  // 2 eta sin^2 theta
    double adiabaticity;
};

struct StorageConfig {
    double x_lo = -60, x_hi = 260;
    size_t points = 1281;
    std::function<cplx(double)> envelope = [](double x) { return cplx(std::exp(-(x / 10) * (x / 10)), 0); };
    MixingSchedule schedule = storage_schedule();
    std::vector<double> times{0, 70, 250};  // theta ~ 0, pi/2, 0
    std::optional<GainSetting> gain;
};

struct StorageRun {
    std::vector<Snapshot> snapshots;
    double shape_fidelity;     // input E against the last E translated back
    double peak_ratio;         // max|E| last / max|E| first
    double norm_drift;         // relative change of int |psi|^2
    double total_displacement;
    std::vector<std::string> warnings;
};

StorageRun store_release_experiment(const StorageConfig& cfg);

// Normalised L2 overlap |<a|b>|^2 / (<a|a><b|b>) of two samples on the same grid.
double overlap_fidelity(const std::vector<cplx>& a, const std::vector<cplx>& b);

// Band-limited shift: out(x_k) = f(x_k - d).
std::vector<cplx> sinc_shift(const std::vector<cplx>& f, double spacing, double d);

// Single-mode transfer. Joint basis |p photons, k spin excitations>, index
// p * (n_max + 1) + k; spin states are (S^dagger)^k / sqrt(k!) on the ground
// state, S^dagger the collective flip |1> -> |2>. Photon-number amplitudes
// c_n map onto the dark states
//   |D,n> = sum_k sqrt(C(n,k)) cos^{n-k} theta (-sin theta)^k |n-k, k>
// evaluated at the end of the theta path. Bosonic collective spin (n_max <= N).
Eigen::VectorXcd single_mode_transfer(const std::vector<double>& theta_path, const Eigen::VectorXcd& photon_amplitudes,
                                      int atoms);

// Density-matrix form. With absorb_spin_phase the (-1)^k of the spin basis is
// absorbed into |2^k>, so theta = pi/2 copies rho_nm verbatim.
Eigen::MatrixXcd single_mode_transfer_density(const std::vector<double>& theta_path, const Eigen::MatrixXcd& rho,
                                              int atoms, bool absorb_spin_phase = true);

}  // namespace eit

#pragma once

#include <string>
#include <vector>

#include "eit/atomcore.hpp"

namespace eit {

struct GaussianPulse {
    double carrier_detuning = 0;  // delta_c = omega_31 - omega_c, rad/s
    double spectral_width = 1;    // sigma_p, rad/s
    double peak_power = 1;        // S0, W/m^2

    void validate() const;
};

// (1/2 pi sigma^2)^(1/4) exp(-(delta - delta_c)^2 / 4 sigma^2)
double pulse_spectrum(const GaussianPulse& p, double detuning);

// A homogeneous slab of three-level atoms with the pump on resonance.
struct SlabMedium {
    LambdaScheme scheme;
    double rabi_pump = 0;  // rad/s
    Populations populations{1, 0, 0};
    double scaled_density = 0;
    double thickness = 0;  // m

    cplx chi(double detuning) const;
    cplx index(double detuning) const;
    cplx transmission(double detuning) const;
    double intensity_transmission(double detuning) const;
    // c/v_g from analytic-function differences of chi, no grid needed.
    double group_index(double detuning) const;
};

struct ScenarioPreset {
    std::string name;
    SlabMedium medium;
    GaussianPulse pulse;
};

struct QuadratureOptions {
    int nodes = 2048;
    double half_width_sigmas = 8;
    bool check_convergence = true;
    double rtol = 1e-6;  // relative to the profile maximum
};

// Normal-order Poynting vector S(x, t) behind the slab. x in m, t in s.
double transmitted_power(const ScenarioPreset& preset, double x, double t, const QuadratureOptions& q = {});

// Closed form for T = 1.
double vacuum_power(const GaussianPulse& p, double x, double t);

struct PropagatedProfile {
    std::vector<double> x;  // m, at t = 0
    std::vector<double> medium;
    std::vector<double> vacuum;
};

PropagatedProfile propagate(const ScenarioPreset& preset, const std::vector<double>& x, double t = 0,
                            const QuadratureOptions& q = {});

struct PeakMetrics {
    double shift;       // x_peak(medium) - x_peak(vacuum), m. Negative means retarded.
    double peak_ratio;  // S_max(medium) / S_max(vacuum)
    double x_peak_medium;
    double x_peak_vacuum;
};

PeakMetrics peak_metrics(const PropagatedProfile& profile);

// Observation window: +-7 vacuum widths around the vacuum peak, widened to
// contain the stationary-phase estimate of the shift.
std::vector<double> default_window(const ScenarioPreset& preset, size_t points = 4001);

struct ScenarioResult {
    PropagatedProfile profile;
    PeakMetrics metrics;
};

ScenarioResult run_scenario(const ScenarioPreset& preset, const QuadratureOptions& q = {});

struct GainPoint {
    double gamma1;  // in units of gamma3
    Populations populations;
    double gain_percent;  // 100 (G_T(0) - 1)
};

// Populations from the full steady state at each dephasing, then the
// centreline intensity gain of the slab.
std::vector<GainPoint> gain_vs_dephasing(const SlabMedium& base, const std::vector<double>& gamma1_over_gamma3);

// Absorption coefficient at line centre normalised to the unpumped,
// uninverted resonant absorption 3 pi N_p Gamma1 / gamma3. Negative is loss.
double normalized_centerline_gain(const SlabMedium& m);

// Populations of the full steady state for a weak probe.
Populations steady_populations(const LambdaScheme& scheme, double rabi_pump);

// Detuning > 0 of the most negative c/v_g, bracketed in [lo, hi].
double negative_vg_detuning(const SlabMedium& m, double lo, double hi);

}  // namespace eit

#pragma once

#include <string>
#include <vector>

#include "eit/pulse.hpp"

namespace eit::scenarios {

// Cold cloud: 10 um slab. The number density is not quoted with the cloud
// geometry; 1.4e12 cm^-3 reproduces the ~55 m EIT delay at Omega_P = 0.8 gamma3.
inline constexpr double cold_density = 1.4e18;  // m^-3
inline constexpr double cold_thickness = 10e-6;  // m
inline constexpr double cold_width_over_gamma1 = 0.01;  // sigma_p / Gamma1

// Hot vapour cell at 35 C.
inline constexpr double hot_density = 5.296e13;  // m^-3
inline constexpr double hot_thickness = 0.1;     // m
inline constexpr double hot_width_over_bandwidth = 0.05;  // sigma_p / Gamma_G
// Orientation factor multiplying N_p in the hot cell. 1 keeps the (lambda/2pi)^3
// density convention bare; 1/3 applies the dipole/polarisation average.
inline constexpr double hot_orientation_factor = 1.0;

inline constexpr double pump_over_gamma3 = 0.8;

SlabMedium cold_cloud(const Populations& p);
SlabMedium hot_cell(const Populations& p, double gamma1_over_gamma3 = -1,
                    double orientation_factor = hot_orientation_factor);

double cold_pulse_width(const SlabMedium& m);
double hot_pulse_width(const SlabMedium& m);

// Most negative c/v_g for delta_p > 0.
double advance_detuning(const SlabMedium& m);

// gamma1/gamma3 in [lo, hi] maximising the steady-state centreline gain.
double max_gain_dephasing(const SlabMedium& base, double lo = 0.01, double hi = 0.5);

// Hot cell at a given dephasing with the steady-state populations.
SlabMedium hot_cell_at_dephasing(double gamma1_over_gamma3, double orientation_factor = hot_orientation_factor);

ScenarioPreset make_preset(const std::string& name, const SlabMedium& m, double carrier, double width);

// The population splits used for the cold-cloud pulse figures.
std::vector<Populations> retarded_splits();  // (1,0) (0.9,0.1) (0.7,0.3) (0,1)
std::vector<Populations> advanced_splits();  // (1,0) (0.9,0.1) (0.7,0.3) (0.1,0.9)

}  // namespace eit::scenarios

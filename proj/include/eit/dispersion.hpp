#pragma once

#include <functional>
#include <vector>

#include "eit/atomcore.hpp"

namespace eit {

struct IndexPair {
    double eta;    // real refractive index
    double kappa;  // extinction
};

// Principal square root of 1 + chi, eta >= 0. On the negative real axis the
// branch is fixed by kappa >= 0.
IndexPair refractive_index(cplx chi);

// chi sampled on a uniform probe-detuning grid. Probe angular frequency is
// omega = omega_31 - delta_p, so d/d omega = -d/d delta_p.
struct OpticalResponse {
    std::vector<double> detuning;  // rad/s
    std::vector<cplx> chi;
    std::vector<double> eta, kappa;
    double omega_31 = 0;

    double omega(size_t i) const { return omega_31 - detuning[i]; }
    double spacing() const { return detuning[1] - detuning[0]; }
    cplx wavevector(size_t i) const;  // (eta + i kappa) omega / c, 1/m
    size_t nearest(double delta) const;
};

OpticalResponse sample_response(const std::function<cplx(double)>& chi_of_detuning, double omega_31,
                                double lo, double hi, size_t n);

// c/v_g = eta + omega d eta/d omega at grid index i (5-point stencil).
double group_index(const OpticalResponse& r, size_t i);

// Returns +inf when the denominator is within 1e-12 of zero.
double group_velocity(const OpticalResponse& r, size_t i);

struct Gvd {
    double d_g;  // -(v_g^2/c)(omega eta'' + 2 eta')
    double D;    // -Gamma1 d_g / v_g^2
};

Gvd gvd_function(const OpticalResponse& r, size_t i, double gamma_1_decay);

// Detunings in [lo, hi] where D changes sign between neighbouring grid points,
// located by linear interpolation.
std::vector<double> gvd_zero_crossings(const OpticalResponse& r, double gamma_1_decay, double lo, double hi);

// Fabry-Perot slab of index n and thickness d at angular frequency omega.
cplx slab_transmission(cplx n, double omega, double d);

struct VgExtrema {
    double c_over_vg_min_positive;  // analytic minimum of positive v_g, written as c/v_g
    double c_over_vg_min_negative;  // analytic negative extremum, written as c/v_g
    double delta_inf;               // |delta_inf|, the Re chi extremum
    double negative_min_detuning;   // ~ 2 |delta_inf|
};

// Analytic extrema for all population in |1>.
VgExtrema vg_extrema(const LambdaScheme& scheme, double rabi_pump, double scaled_density);

// Width of the transparency window and its gaussian approximation.
double transparency_bandwidth(const LambdaScheme& scheme, double rabi_pump, double scaled_density, double d);
double gaussian_transmission(double detuning, double bandwidth);

struct Einstein {
    double A;  // 1/s
    double B;  // m^3 / (J s^2)
};

Einstein einstein_coefficients(double omega, double dipole);

enum class Broadening { natural, doppler };

// Threshold pump power 2 kappa hbar omega^3 / (pi^2 c^3 g(omega)) with g = 1/width.
// For natural broadening the width is the Einstein A of (omega, dipole) and the
// lineshape_width argument is ignored. For Doppler broadening the caller passes
// the Doppler width, e.g. from doppler_width().
double lwi_threshold_power(double cavity_loss, double omega, double lineshape_width, Broadening broadening,
                           double dipole);

// FWHM Doppler width omega sqrt(8 kB T ln2 / (m c^2)).
double doppler_width(double omega, double temperature, double mass);

// Kramers-Kronig reconstruction of Re chi from Im chi sampled on an ascending
// (not necessarily uniform) detuning grid. chi must be analytic in the lower
// half delta plane, which holds when delta = omega_0 - omega. Evaluated at the
// requested target detunings by principal-value trapezoid with subtraction.
std::vector<double> kramers_kronig_real(const std::vector<double>& detuning, const std::vector<double>& im_chi,
                                        const std::vector<double>& targets);

// Max-norm relative error of the reconstruction over [lo, hi] in units of the
// detuning variable, using a wide sinh-stretched sampling grid around the window.
double kramers_kronig_error(const std::function<cplx(double)>& chi_of_detuning, double lo, double hi,
                            double scale);

}  // namespace eit

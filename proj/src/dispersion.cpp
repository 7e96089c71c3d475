#include "eit/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eit/errors.hpp"

namespace eit {

namespace {

void require_stencil(const OpticalResponse& r, size_t i)
{
    if (r.detuning.size() < 5 || i < 2 || i + 2 >= r.detuning.size())
        throw ConvergenceError("dispersion: 5-point stencil does not fit at this grid index");
}

// d eta / d delta and d^2 eta / d delta^2
double d1(const OpticalResponse& r, size_t i)
{
    const auto& e = r.eta;
    return (-e[i + 2] + 8 * e[i + 1] - 8 * e[i - 1] + e[i - 2]) / (12 * r.spacing());
}

double d2(const OpticalResponse& r, size_t i)
{
    const auto& e = r.eta;
    double h = r.spacing();
    return (-e[i + 2] + 16 * e[i + 1] - 30 * e[i] + 16 * e[i - 1] - e[i - 2]) / (12 * h * h);
}

}  // namespace

IndexPair refractive_index(cplx chi)
{
    cplx z = 1.0 + chi;
    if (z == cplx(0, 0))
        throw ValidationError("refractive_index: 1 + chi = 0");
    cplx n = std::sqrt(z);
    if (z.imag() == 0 && z.real() < 0)
        n = cplx(0, std::sqrt(-z.real()));
    return {n.real(), n.imag()};
}

cplx OpticalResponse::wavevector(size_t i) const
{
    return cplx(eta[i], kappa[i]) * omega(i) / phys::c;
}

size_t OpticalResponse::nearest(double delta) const
{
    auto it = std::lower_bound(detuning.begin(), detuning.end(), delta);
    if (it == detuning.end())
        return detuning.size() - 1;
    size_t k = it - detuning.begin();
    if (k > 0 && delta - detuning[k - 1] < detuning[k] - delta)
        --k;
    return k;
}

OpticalResponse sample_response(const std::function<cplx(double)>& chi_of_detuning, double omega_31, double lo,
                                double hi, size_t n)
{
    require(n >= 5 && hi > lo, "sample_response: need at least 5 points on a non-empty interval");
    OpticalResponse r;
    r.omega_31 = omega_31;
    r.detuning.resize(n);
    r.chi.resize(n);
    r.eta.resize(n);
    r.kappa.resize(n);
    for (size_t i = 0; i < n; ++i) {
        double d = lo + (hi - lo) * double(i) / double(n - 1);
        r.detuning[i] = d;
        r.chi[i] = chi_of_detuning(d);
        IndexPair ip = refractive_index(r.chi[i]);
        r.eta[i] = ip.eta;
        r.kappa[i] = ip.kappa;
    }
    return r;
}

double group_index(const OpticalResponse& r, size_t i)
{
    require_stencil(r, i);
    return r.eta[i] - r.omega(i) * d1(r, i);
}

double group_velocity(const OpticalResponse& r, size_t i)
{
    double ng = group_index(r, i);
    if (std::abs(ng) < 1e-12)
        return std::numeric_limits<double>::infinity();
    return phys::c / ng;
}

Gvd gvd_function(const OpticalResponse& r, size_t i, double gamma_1_decay)
{
    require_stencil(r, i);
    double vg = group_velocity(r, i);
    // omega derivatives: first flips sign, second does not
    double deta = -d1(r, i);
    double d2eta = d2(r, i);
    Gvd g;
    g.d_g = -(vg * vg / phys::c) * (r.omega(i) * d2eta + 2 * deta);
    g.D = -gamma_1_decay * g.d_g / (vg * vg);
    return g;
}

std::vector<double> gvd_zero_crossings(const OpticalResponse& r, double gamma_1_decay, double lo, double hi)
{
    std::vector<double> zeros;
    const size_t n = r.detuning.size();
    double prev = 0, prev_d = 0;
    bool have_prev = false;
    for (size_t i = 2; i + 2 < n; ++i) {
        double d = r.detuning[i];
        if (d < lo || d > hi)
            continue;
        double D = gvd_function(r, i, gamma_1_decay).D;
        if (have_prev && ((prev < 0 && D >= 0) || (prev > 0 && D <= 0)) && D != prev) {
            double t = prev / (prev - D);
            zeros.push_back(prev_d + t * (d - prev_d));
        }
        prev = D;
        prev_d = d;
        have_prev = true;
    }
    return zeros;
}

cplx slab_transmission(cplx n, double omega, double d)
{
    require(d >= 0, "slab_transmission: negative thickness");
    const cplx I(0, 1);
    const double phase = omega * d / phys::c;
    cplx num = 4.0 * n * std::exp(I * (n - 1.0) * phase);
    cplx den = (n + 1.0) * (n + 1.0) - (n - 1.0) * (n - 1.0) * std::exp(2.0 * I * n * phase);
    if (std::abs(den) < 1e-300)
        throw SingularError("slab_transmission: etalon denominator vanishes");
    return num / den;
}

VgExtrema vg_extrema(const LambdaScheme& s, double rabi_pump, double Np)
{
    const double g1 = s.gamma1(), g3 = s.gamma3(), W = rabi_pump;
    const double pre = 3 * phys::pi * Np * s.omega_31 * s.gamma_1_decay / (2 * g3 * g3);
    VgExtrema v;
    double den = g1 + W * W / (4 * g3);
    v.c_over_vg_min_positive = 1 - pre * (g1 * g1 - W * W / 4) / (den * den);

    double r = 1 - std::sqrt(1 + (W / g3) * (W / g3));
    double q = W * W / (4 * r * r * g3 * g3);
    double u = r * r * (1 - q) * (1 - q);
    v.c_over_vg_min_negative = -pre * (1 + q) * (1 - u) / ((1 + u) * (1 + u));

    v.delta_inf = std::abs(0.5 * (g3 - std::sqrt(g3 * g3 + W * W)));
    v.negative_min_detuning = 2 * v.delta_inf;
    return v;
}

double transparency_bandwidth(const LambdaScheme& s, double rabi_pump, double Np, double d)
{
    require(rabi_pump > 0 && Np > 0 && d > 0, "transparency_bandwidth: needs positive pump, density and length");
    return 0.06 * rabi_pump * rabi_pump / std::sqrt(s.gamma3() * s.gamma_1_decay)
           * std::sqrt(phys::c / (s.omega_31 * d * Np));
}

double gaussian_transmission(double detuning, double bandwidth)
{
    return std::exp(-detuning * detuning / (2 * bandwidth * bandwidth));
}

Einstein einstein_coefficients(double omega, double dipole)
{
    require(omega > 0, "einstein_coefficients: omega must be positive");
    const double c3 = phys::c * phys::c * phys::c;
    double A = omega * omega * omega * dipole * dipole / (3 * phys::pi * phys::eps0 * phys::hbar * c3);
    double B = A * phys::pi * phys::pi * c3 / (phys::hbar * omega * omega * omega);
    return {A, B};
}

double lwi_threshold_power(double cavity_loss, double omega, double lineshape_width, Broadening broadening,
                           double dipole)
{
    require(cavity_loss > 0 && omega > 0, "lwi_threshold_power: inputs must be positive");
    double width = broadening == Broadening::natural ? einstein_coefficients(omega, dipole).A : lineshape_width;
    require(width > 0, "lwi_threshold_power: lineshape width must be positive");
    const double c3 = phys::c * phys::c * phys::c;
    double g = 1.0 / width;
    return 2 * cavity_loss * phys::hbar * omega * omega * omega / (phys::pi * phys::pi * c3 * g);
}

double doppler_width(double omega, double temperature, double mass)
{
    require(omega > 0 && temperature > 0 && mass > 0, "doppler_width: inputs must be positive");
    return omega * std::sqrt(8 * phys::kB * temperature * std::log(2.0) / (mass * phys::c * phys::c));
}

std::vector<double> kramers_kronig_real(const std::vector<double>& x, const std::vector<double>& f,
                                        const std::vector<double>& targets)
{
    require(x.size() == f.size() && x.size() >= 3, "kramers_kronig_real: size mismatch");
    const size_t n = x.size();
    const double a = x.front(), b = x.back();
    std::vector<double> out;
    out.reserve(targets.size());
    for (double x0 : targets) {
        require(x0 > a && x0 < b, "kramers_kronig_real: target outside sampling grid");
        // f(x0) by linear interpolation, slope from the bracketing interval
        size_t k = std::upper_bound(x.begin(), x.end(), x0) - x.begin();
        double t = (x0 - x[k - 1]) / (x[k] - x[k - 1]);
        double f0 = f[k - 1] + t * (f[k] - f[k - 1]);
        double slope = (f[k] - f[k - 1]) / (x[k] - x[k - 1]);

        auto g = [&](size_t j) {
            double dx = x[j] - x0;
            return std::abs(dx) < 1e-14 * (std::abs(x0) + 1) ? slope : (f[j] - f0) / dx;
        };
        double integral = 0;
        double gprev = g(0);
        for (size_t j = 1; j < n; ++j) {
            double gj = g(j);
            integral += 0.5 * (gprev + gj) * (x[j] - x[j - 1]);
            gprev = gj;
        }
        integral += f0 * std::log((b - x0) / (x0 - a));
        out.push_back(-integral / phys::pi);
    }
    return out;
}

double kramers_kronig_error(const std::function<cplx(double)>& chi, double lo, double hi, double scale)
{
    require(hi > lo && scale > 0, "kramers_kronig_error: bad window");
    const double span = 2e4 * std::max(std::abs(lo), std::abs(hi));
    const double U = std::asinh(span / scale);
    const size_t n = 40001;
    std::vector<double> x(n), im(n);
    for (size_t j = 0; j < n; ++j) {
        double u = -U + 2 * U * double(j) / double(n - 1);
        x[j] = scale * std::sinh(u);
        im[j] = chi(x[j]).imag();
    }
    std::vector<double> targets;
    const size_t m = 201;
    for (size_t k = 0; k < m; ++k)
        targets.push_back(lo + (hi - lo) * double(k) / double(m - 1));
    std::vector<double> re = kramers_kronig_real(x, im, targets);
    double err = 0, norm = 0;
    for (size_t k = 0; k < m; ++k) {
        double exact = chi(targets[k]).real();
        err = std::max(err, std::abs(re[k] - exact));
        norm = std::max(norm, std::abs(exact));
    }
    return norm > 0 ? err / norm : err;
}

}  // namespace eit

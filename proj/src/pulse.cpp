#include "eit/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include <boost/math/tools/minima.hpp>
#include <gsl/gsl_integration.h>

#include "eit/bloch.hpp"
#include "eit/dispersion.hpp"
#include "eit/errors.hpp"

namespace eit {

namespace {

struct GlTable {
    std::vector<double> x, w;  // on [-1, 1]
};

const GlTable& gauss_legendre(int n)
{
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GlTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) {
        slot = std::make_unique<GlTable>();
        gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(n);
        slot->x.resize(n);
        slot->w.resize(n);
        for (int i = 0; i < n; ++i)
            gsl_integration_glfixed_point(-1, 1, i, &slot->x[i], &slot->w[i], t);
        gsl_integration_glfixed_table_free(t);
    }
    return *slot;
}

// S(x_k) for all k with a given node count; vacuum when use_medium is false.
std::vector<double> poynting(const ScenarioPreset& p, const std::vector<double>& x, double t, int nodes,
                             double half_width, bool use_medium)
{
    const GaussianPulse& g = p.pulse;
    const GlTable& gl = gauss_legendre(nodes);
    const double mid = g.carrier_detuning, half = half_width * g.spectral_width;
    std::vector<double> delta(nodes);
    std::vector<cplx> weight(nodes);
    for (int i = 0; i < nodes; ++i) {
        delta[i] = mid + half * gl.x[i];
        double env = std::exp(-std::pow(delta[i] - mid, 2) / (4 * g.spectral_width * g.spectral_width));
        cplx T = use_medium ? p.medium.transmission(delta[i]) : cplx(1, 0);
        weight[i] = half * gl.w[i] * env * T;
    }
    const cplx I(0, 1);
    const double norm = g.peak_power / (4 * phys::pi * g.spectral_width * g.spectral_width);
    std::vector<double> S(x.size());
    for (size_t k = 0; k < x.size(); ++k) {
        double tau = x[k] / phys::c - t;
        cplx acc = 0;
        for (int i = 0; i < nodes; ++i)
            acc += weight[i] * std::exp(-I * delta[i] * tau);
        S[k] = norm * std::norm(acc);
    }
    return S;
}

std::vector<double> converged_poynting(const ScenarioPreset& p, const std::vector<double>& x, double t,
                                       const QuadratureOptions& q, bool use_medium)
{
    std::vector<double> S = poynting(p, x, t, q.nodes, q.half_width_sigmas, use_medium);
    if (!q.check_convergence)
        return S;
    std::vector<double> S2 = poynting(p, x, t, 2 * q.nodes, q.half_width_sigmas, use_medium);
    double scale = *std::max_element(S2.begin(), S2.end());
    double worst = 0;
    for (size_t k = 0; k < S.size(); ++k)
        worst = std::max(worst, std::abs(S[k] - S2[k]));
    if (scale > 0 && worst > q.rtol * scale)
        throw ConvergenceError("transmitted_power: node doubling changed S by " + std::to_string(worst / scale)
                               + " relative");
    return S2;
}

// Vertex of the parabola through three equally spaced samples.
double parabolic_vertex(const std::vector<double>& x, const std::vector<double>& y, size_t k, double* ymax)
{
    double y0 = y[k - 1], y1 = y[k], y2 = y[k + 1];
    double den = y0 - 2 * y1 + y2;
    double off = den == 0 ? 0 : 0.5 * (y0 - y2) / den;
    double h = x[k + 1] - x[k];
    if (ymax)
        *ymax = y1 - 0.25 * (y0 - y2) * off;
    return x[k] + off * h;
}

}  // namespace

void GaussianPulse::validate() const
{
    require(spectral_width > 0, "GaussianPulse: spectral width must be positive");
    require(peak_power >= 0, "GaussianPulse: negative peak power");
}

double pulse_spectrum(const GaussianPulse& p, double detuning)
{
    double s2 = p.spectral_width * p.spectral_width;
    return std::pow(1.0 / (2 * phys::pi * s2), 0.25) * std::exp(-std::pow(detuning - p.carrier_detuning, 2) / (4 * s2));
}

cplx SlabMedium::chi(double detuning) const
{
    DriveFields f;
    f.rabi_pump = rabi_pump;
    f.detuning_probe = detuning;
    return susceptibility(populations, scheme, f, scaled_density).value;
}

cplx SlabMedium::index(double detuning) const
{
    IndexPair ip = refractive_index(chi(detuning));
    return {ip.eta, ip.kappa};
}

cplx SlabMedium::transmission(double detuning) const
{
    return slab_transmission(index(detuning), scheme.omega_31 - detuning, thickness);
}

double SlabMedium::intensity_transmission(double detuning) const
{
    return std::norm(transmission(detuning));
}

double SlabMedium::group_index(double detuning) const
{
    const double h = 1e-4 * scheme.gamma3();
    cplx dchi = (-chi(detuning + 2 * h) + 8.0 * chi(detuning + h) - 8.0 * chi(detuning - h) + chi(detuning - 2 * h))
                / (12 * h);
    cplx n = index(detuning);
    double deta_ddelta = (dchi / (2.0 * n)).real();
    return n.real() - (scheme.omega_31 - detuning) * deta_ddelta;
}

double transmitted_power(const ScenarioPreset& p, double x, double t, const QuadratureOptions& q)
{
    p.pulse.validate();
    return converged_poynting(p, {x}, t, q, true).front();
}

double vacuum_power(const GaussianPulse& p, double x, double t)
{
    double u = x - phys::c * t;
    return p.peak_power * std::exp(-2 * p.spectral_width * p.spectral_width * u * u / (phys::c * phys::c));
}

PropagatedProfile propagate(const ScenarioPreset& p, const std::vector<double>& x, double t,
                            const QuadratureOptions& q)
{
    p.pulse.validate();
    PropagatedProfile out;
    out.x = x;
    out.medium = converged_poynting(p, x, t, q, true);
    out.vacuum = converged_poynting(p, x, t, q, false);
    return out;
}

PeakMetrics peak_metrics(const PropagatedProfile& prof)
{
    require(prof.x.size() >= 3 && prof.medium.size() == prof.x.size() && prof.vacuum.size() == prof.x.size(),
            "peak_metrics: inconsistent profile");
    auto locate = [&](const std::vector<double>& y, double* ymax) {
        size_t k = std::max_element(y.begin(), y.end()) - y.begin();
        if (k == 0 || k + 1 == y.size())
            throw ConvergenceError("peak_metrics: maximum on the grid boundary, widen the window");
        return parabolic_vertex(prof.x, y, k, ymax);
    };
    double smed = 0, svac = 0;
    PeakMetrics m;
    m.x_peak_medium = locate(prof.medium, &smed);
    m.x_peak_vacuum = locate(prof.vacuum, &svac);
    m.shift = m.x_peak_medium - m.x_peak_vacuum;
    m.peak_ratio = smed / svac;
    return m;
}

std::vector<double> default_window(const ScenarioPreset& p, size_t points)
{
    const double width = phys::c / (2 * p.pulse.spectral_width);
    const double shift = -(p.medium.group_index(p.pulse.carrier_detuning) - 1) * p.medium.thickness;
    double lo = std::min(-7 * width, shift - 7 * width);
    double hi = std::max(7 * width, shift + 7 * width);
    std::vector<double> x(points);
    for (size_t k = 0; k < points; ++k)
        x[k] = lo + (hi - lo) * double(k) / double(points - 1);
    return x;
}

ScenarioResult run_scenario(const ScenarioPreset& p, const QuadratureOptions& q)
{
    ScenarioResult r;
    r.profile = propagate(p, default_window(p), 0, q);
    r.metrics = peak_metrics(r.profile);
    return r;
}

Populations steady_populations(const LambdaScheme& scheme, double rabi_pump)
{
    DriveFields f;
    f.rabi_pump = rabi_pump;
    f.rabi_probe = 1e-3 * scheme.gamma3();
    return steady_state_full(scheme, f).populations();
}

std::vector<GainPoint> gain_vs_dephasing(const SlabMedium& base, const std::vector<double>& gammas)
{
    std::vector<GainPoint> out;
    for (double g : gammas) {
        require(g >= 0 && g <= 0.5, "gain_vs_dephasing: gamma1 must lie in [0, 0.5] gamma3");
        SlabMedium m = base;
        m.scheme = with_dephasing(base.scheme, g);
        m.populations = steady_populations(m.scheme, m.rabi_pump);
        out.push_back({g, m.populations, 100 * (m.intensity_transmission(0) - 1)});
    }
    return out;
}

double normalized_centerline_gain(const SlabMedium& m)
{
    double unpumped = 3 * phys::pi * m.scaled_density * m.scheme.gamma_1_decay / m.scheme.gamma3();
    return -m.chi(0).imag() / unpumped;
}

double negative_vg_detuning(const SlabMedium& m, double lo, double hi)
{
    require(hi > lo, "negative_vg_detuning: empty bracket");
    const int n = 400;
    double best = lo, best_val = m.group_index(lo);
    for (int k = 1; k <= n; ++k) {
        double d = lo + (hi - lo) * k / n;
        double v = m.group_index(d);
        if (v < best_val) {
            best_val = v;
            best = d;
        }
    }
    double step = (hi - lo) / n;
    auto f = [&m](double d) { return m.group_index(d); };
    auto r = boost::math::tools::brent_find_minima(f, std::max(lo, best - step), std::min(hi, best + step), 40);
    return r.first;
}

}  // namespace eit

#include "eit/scenarios.hpp"

#include <boost/math/tools/minima.hpp>

#include "eit/bloch.hpp"
#include "eit/dispersion.hpp"

namespace eit::scenarios {

SlabMedium cold_cloud(const Populations& p)
{
    SlabMedium m;
    m.scheme = make_scheme_rb87();
    m.rabi_pump = pump_over_gamma3 * m.scheme.gamma3();
    m.populations = p;
    m.scaled_density = scaled_density(m.scheme.probe_wavelength, cold_density);
    m.thickness = cold_thickness;
    return m;
}

SlabMedium hot_cell(const Populations& p, double gamma1_over_gamma3, double orientation_factor)
{
    SlabMedium m;
    m.scheme = make_scheme_rb87();
    if (gamma1_over_gamma3 >= 0)
        m.scheme = with_dephasing(m.scheme, gamma1_over_gamma3);
    m.rabi_pump = pump_over_gamma3 * m.scheme.gamma3();
    m.populations = p;
    m.scaled_density = scaled_density(m.scheme.probe_wavelength, hot_density, orientation_factor);
    m.thickness = hot_thickness;
    return m;
}

double cold_pulse_width(const SlabMedium& m)
{
    return cold_width_over_gamma1 * m.scheme.gamma_1_decay;
}

double hot_pulse_width(const SlabMedium& m)
{
    return hot_width_over_bandwidth * transparency_bandwidth(m.scheme, m.rabi_pump, m.scaled_density, m.thickness);
}

double advance_detuning(const SlabMedium& m)
{
    double g3 = m.scheme.gamma3();
    return negative_vg_detuning(m, 0.05 * g3, 1.5 * g3);
}

double max_gain_dephasing(const SlabMedium& base, double lo, double hi)
{
    auto neg_gain = [&base](double g) { return -gain_vs_dephasing(base, {g}).front().gain_percent; };
    return boost::math::tools::brent_find_minima(neg_gain, lo, hi, 40).first;
}

SlabMedium hot_cell_at_dephasing(double g, double orientation_factor)
{
    SlabMedium m = hot_cell(Populations(1, 0, 0), g, orientation_factor);
    m.populations = steady_populations(m.scheme, m.rabi_pump);
    return m;
}

ScenarioPreset make_preset(const std::string& name, const SlabMedium& m, double carrier, double width)
{
    ScenarioPreset p;
    p.name = name;
    p.medium = m;
    p.pulse.carrier_detuning = carrier;
    p.pulse.spectral_width = width;
    p.pulse.peak_power = 1.0;
    return p;
}

std::vector<Populations> retarded_splits()
{
    return {Populations(1, 0, 0), Populations(0.9, 0.1, 0), Populations(0.7, 0.3, 0), Populations(0, 1, 0)};
}

std::vector<Populations> advanced_splits()
{
    return {Populations(1, 0, 0), Populations(0.9, 0.1, 0), Populations(0.7, 0.3, 0), Populations(0.1, 0.9, 0)};
}

}  // namespace eit::scenarios

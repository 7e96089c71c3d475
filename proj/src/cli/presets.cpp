#include "eit/cli/presets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "eit/algebra.hpp"
#include "eit/bloch.hpp"
#include "eit/dispersion.hpp"
#include "eit/polariton.hpp"
#include "eit/pulse.hpp"
#include "eit/scenarios.hpp"
#include "eit/tripod.hpp"

namespace eit::cli {

namespace sc = eit::scenarios;

namespace {

const double nan_value = std::nan("");

std::string num_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string split_label(const Populations& p)
{
    std::string s = "n1_" + num_label(p.n1()) + "_n2_" + num_label(p.n2());
    if (p.n3() > 0)
        s += "_n3_" + num_label(p.n3());
    return s;
}

// ---- parameter blocks shared by the slab models ----

json cold_slab_defaults()
{
    LambdaScheme s = make_scheme_rb87();
    return {
        {"scheme", {{"wavelength", s.probe_wavelength}, {"gamma1", s.gamma1() / s.gamma3()}}},
        {"fields", {{"rabi_pump", sc::pump_over_gamma3}, {"rabi_probe", 0.01}}},
        {"geometry", {{"density", sc::cold_density}, {"thickness", sc::cold_thickness}, {"orientation", 1.0}}},
    };
}

json hot_geometry()
{
    return {{"density", sc::hot_density}, {"thickness", sc::hot_thickness}, {"orientation", sc::hot_orientation_factor}};
}

json splits_json(const std::vector<Populations>& ps)
{
    json a = json::array();
    for (const Populations& p : ps)
        a.push_back({p.n1(), p.n2(), p.n3()});
    return a;
}

SlabMedium base_medium(const json& p)
{
    double wl = number_in(p, "scheme.wavelength", 1e-7, 1e-4);
    double g1 = number_in(p, "scheme.gamma1", 0, 10);
    SlabMedium m;
    m.scheme = with_dephasing(make_scheme_rb87(wl), g1);
    m.rabi_pump = number_in(p, "fields.rabi_pump", 0, 1e3) * m.scheme.gamma3();
    double density = number_in(p, "geometry.density", 0, 1e30);
    double orientation = number_in(p, "geometry.orientation", 1e-6, 10);
    m.scaled_density = scaled_density(wl, density, orientation);
    m.thickness = number_in(p, "geometry.thickness", 1e-9, 10);
    if (m.thickness <= 0)
        throw ConfigError("geometry.thickness", "must be positive");
    return m;
}

std::vector<Populations> population_splits(const json& p, const std::string& key)
{
    const json& a = at_path(p, key);
    if (!a.is_array() || a.empty())
        throw ConfigError(key, "expected a non-empty array of [n1, n2, n3]");
    std::vector<Populations> out;
    for (size_t i = 0; i < a.size(); ++i) {
        std::string k = key + "[" + std::to_string(i) + "]";
        if (!a[i].is_array() || a[i].size() != 3)
            throw ConfigError(k, "expected [n1, n2, n3]");
        try {
            out.emplace_back(a[i][0].get<double>(), a[i][1].get<double>(), a[i][2].get<double>());
        } catch (const ValidationError& e) {
            throw ConfigError(k, e.what());
        } catch (const json::exception&) {
            throw ConfigError(k, "entries must be numbers");
        }
    }
    return out;
}

std::vector<double> uniform_grid(const json& p, const std::string& section, int max_points = 200001)
{
    double lo = number(p, section + ".lo"), hi = number(p, section + ".hi");
    int n = integer_in(p, section + ".points", 2, max_points);
    if (hi <= lo)
        throw ConfigError(section + ".hi", "must exceed " + section + ".lo");
    std::vector<double> x(n);
    for (int k = 0; k < n; ++k)
        x[k] = lo + (hi - lo) * double(k) / double(n - 1);
    return x;
}

double pulse_width(const json& p, const SlabMedium& m)
{
    std::string rule = string_of(p, "pulse.width_rule", {"gamma1_decay", "bandwidth"});
    double f = number_in(p, "pulse.width_factor", 1e-6, 10);
    if (rule == "gamma1_decay")
        return f * m.scheme.gamma_1_decay;
    return f * transparency_bandwidth(m.scheme, m.rabi_pump, m.scaled_density, m.thickness);
}

// Carrier detuning in rad/s for a mode name.
double carrier_for(const std::string& mode, const json& p, const SlabMedium& m, const SlabMedium& reference)
{
    if (mode == "resonance")
        return 0;
    if (mode == "advance")
        return sc::advance_detuning(reference);
    if (mode == "advance_own")
        return sc::advance_detuning(m);
    return number(p, "pulse.detuning") * m.scheme.gamma3();
}

const std::vector<std::string> carrier_modes = {"resonance", "advance", "advance_own", "fixed"};

double centroid(const std::vector<double>& x, const std::vector<double>& y)
{
    double s = 0, sx = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        s += y[i];
        sx += x[i] * y[i];
    }
    return s > 0 ? sx / s : nan_value;
}

// ---- models ----

ModelOutput run_response(const json& p, const RunContext& ctx)
{
    SlabMedium base = base_medium(p);
    std::vector<Populations> splits = boolean(p, "populations.steady_state")
                                          ? std::vector<Populations>{steady_populations(base.scheme, base.rabi_pump)}
                                          : population_splits(p, "populations.splits");
    std::vector<double> grid = uniform_grid(p, "grid");
    const double g3 = base.scheme.gamma3();
    const size_t n = grid.size();
    const double h = n > 1 ? (grid[1] - grid[0]) * g3 : 0;

    ModelOutput out;
    auto table = [&](const std::string& name, const std::string& title, const std::string& ylabel) {
        Table t;
        t.name = name;
        t.add("detuning", "gamma3").values = grid;
        t.plot = PlotSpec{title, "probe detuning / gamma3", ylabel, {}};
        return t;
    };
    Table chi = table("chi", "susceptibility", "chi");
    Table index = table("index", "refractive index", "n");
    Table absorption = table("absorption", "absorption coefficient", "alpha [1/m]");
    Table group = table("group", "group index c/v_g", "c/v_g");
    Table gvd = table("gvd", "group velocity dispersion D", "D [s/m]");
    Table trans = table("transmission", "intensity transmission G_T", "G_T");

    struct Columns {
        std::vector<double> re, im, eta, alpha, ng, D, G;
    };
    std::vector<Columns> cols(splits.size());
    parallel_for(splits.size(), ctx.jobs, [&](size_t k) {
        SlabMedium m = base;
        m.populations = splits[k];
        OpticalResponse r = sample_response([&m](double d) { return m.chi(d); }, m.scheme.omega_31,
                                            grid.front() * g3 - 2 * h, grid.back() * g3 + 2 * h, n + 4);
        Columns& c = cols[k];
        for (size_t i = 2; i < n + 2; ++i) {
            double d = grid[i - 2] * g3;
            c.re.push_back(r.chi[i].real());
            c.im.push_back(r.chi[i].imag());
            c.eta.push_back(r.eta[i]);
            c.alpha.push_back(2 * r.kappa[i] * r.omega(i) / phys::c);
            c.ng.push_back(group_index(r, i));
            c.D.push_back(gvd_function(r, i, m.scheme.gamma_1_decay).D);
            c.G.push_back(m.intensity_transmission(d));
        }
    });
    for (size_t k = 0; k < splits.size(); ++k) {
        std::string l = split_label(splits[k]);
        auto put = [&](Table& t, const std::string& prefix, const std::string& unit, std::vector<double>& v) {
            t.add(prefix + "_" + l, unit).values = std::move(v);
            t.plot->y.push_back(prefix + "_" + l);
        };
        put(chi, "re_chi", "1", cols[k].re);
        put(chi, "im_chi", "1", cols[k].im);
        put(index, "n", "1", cols[k].eta);
        put(absorption, "alpha", "1/m", cols[k].alpha);
        put(group, "c_over_vg", "1", cols[k].ng);
        put(gvd, "D", "s/m", cols[k].D);
        put(trans, "G_T", "1", cols[k].G);
        out.summary["splits"].push_back({{"n1", splits[k].n1()}, {"n2", splits[k].n2()}, {"n3", splits[k].n3()}});
    }
    if (boolean(p, "full.enabled")) {
        DriveFields f;
        f.rabi_pump = base.rabi_pump;
        f.rabi_probe = number_in(p, "fields.rabi_probe", 1e-9, 1e3) * g3;
        std::vector<double> re(n), im(n);
        for (size_t i = 0; i < n; ++i) {
            f.detuning_probe = grid[i] * g3;
            cplx c = susceptibility_full(base.scheme, f, base.scaled_density);
            re[i] = c.real();
            im[i] = c.imag();
        }
        chi.add("re_chi_full", "1").values = re;
        chi.add("im_chi_full", "1").values = im;
        chi.plot->y.push_back("re_chi_full");
        chi.plot->y.push_back("im_chi_full");
        Populations sp = steady_populations(base.scheme, base.rabi_pump);
        out.summary["steady_populations"] = {sp.n1(), sp.n2(), sp.n3()};
    }
    out.tables = {chi, index, absorption, group, gvd, trans};
    return out;
}

struct ScenarioOutcome {
    PropagatedProfile profile;
    PeakMetrics metrics{nan_value, nan_value, nan_value, nan_value};
    double centroid_shift = nan_value;
    std::string warning;
};

ScenarioOutcome scenario(const ScenarioPreset& sp, const std::vector<double>& x)
{
    ScenarioOutcome o;
    o.profile = propagate(sp, x);
    try {
        o.metrics = peak_metrics(o.profile);
    } catch (const ConvergenceError& e) {
        o.warning = e.what();
    }
    o.centroid_shift = centroid(o.profile.x, o.profile.medium) - centroid(o.profile.x, o.profile.vacuum);
    return o;
}

std::vector<std::string> carrier_list(const json& p)
{
    const json& a = at_path(p, "pulse.carriers");
    if (!a.is_array() || a.empty())
        throw ConfigError("pulse.carriers", "expected a non-empty array of carrier modes");
    std::vector<std::string> out;
    for (size_t i = 0; i < a.size(); ++i) {
        std::string k = "pulse.carriers[" + std::to_string(i) + "]";
        if (!a[i].is_string())
            throw ConfigError(k, "expected a string");
        std::string m = a[i].get<std::string>();
        if (std::find(carrier_modes.begin(), carrier_modes.end(), m) == carrier_modes.end())
            throw ConfigError(k, "'" + m + "' is not one of resonance, advance, advance_own, fixed");
        out.push_back(m);
    }
    return out;
}

ModelOutput run_pulse(const json& p, const RunContext& ctx)
{
    SlabMedium base = base_medium(p);
    std::vector<Populations> splits = population_splits(p, "populations.splits");
    std::vector<std::string> modes = carrier_list(p);
    const size_t points = size_t(integer_in(p, "pulse.window_points", 11, 100001));
    const double g3 = base.scheme.gamma3();
    SlabMedium reference = base;
    reference.populations = Populations(1, 0, 0);

    ModelOutput out;
    for (const std::string& mode : modes) {
        std::vector<ScenarioPreset> sps;
        for (const Populations& s : splits) {
            SlabMedium m = base;
            m.populations = s;
            sps.push_back(sc::make_preset(mode, m, carrier_for(mode, p, m, reference), pulse_width(p, m)));
        }
        // one grid for all splits, covering every default window
        double lo = INFINITY, hi = -INFINITY;
        for (const ScenarioPreset& sp : sps) {
            std::vector<double> w = default_window(sp, 2);
            lo = std::min(lo, w.front());
            hi = std::max(hi, w.back());
        }
        std::vector<double> x(points);
        for (size_t k = 0; k < points; ++k)
            x[k] = lo + (hi - lo) * double(k) / double(points - 1);

        std::vector<ScenarioOutcome> res(sps.size());
        parallel_for(sps.size(), ctx.jobs, [&](size_t k) { res[k] = scenario(sps[k], x); });

        Table prof;
        prof.name = "profile_" + mode;
        prof.add("x", "m").values = x;
        prof.add("vacuum", "1").values = res.front().profile.vacuum;
        prof.plot = PlotSpec{"power density behind the slab, carrier: " + mode, "x [m]", "S / S0", {"vacuum"}};
        Table met;
        met.name = "metrics_" + mode;
        for (const char* c : {"n1", "n2", "n3"})
            met.add(c, "1");
        met.add("carrier", "gamma3");
        met.add("shift", "m");
        met.add("peak_ratio", "1");
        met.add("centroid_shift", "m");
        for (size_t k = 0; k < sps.size(); ++k) {
            std::string l = split_label(splits[k]);
            prof.add("medium_" + l, "1").values = res[k].profile.medium;
            prof.plot->y.push_back("medium_" + l);
            const double row[] = {splits[k].n1(), splits[k].n2(), splits[k].n3(), sps[k].pulse.carrier_detuning / g3,
                                  res[k].metrics.shift, res[k].metrics.peak_ratio, res[k].centroid_shift};
            for (size_t c = 0; c < met.columns.size(); ++c)
                met.columns[c].values.push_back(row[c]);
            if (!res[k].warning.empty())
                out.warnings.push_back(mode + ", " + l + ": " + res[k].warning);
            out.summary[mode].push_back({{"populations", {splits[k].n1(), splits[k].n2(), splits[k].n3()}},
                                         {"carrier_gamma3", row[3]},
                                         {"shift_m", row[4]},
                                         {"peak_ratio", row[5]}});
        }
        out.tables.push_back(std::move(prof));
        out.tables.push_back(std::move(met));
    }
    return out;
}

ModelOutput run_population_scan(const json& p, const RunContext& ctx)
{
    SlabMedium base = base_medium(p);
    std::string mode = string_of(p, "pulse.carrier", carrier_modes);
    std::vector<double> diff = uniform_grid(p, "scan", 1001);
    if (diff.front() < -1 || diff.back() > 1)
        throw ConfigError("scan", "n1 - n2 must lie in [-1, 1]");
    const size_t points = size_t(integer_in(p, "pulse.window_points", 11, 100001));
    SlabMedium reference = base;
    reference.populations = Populations(1, 0, 0);

    // index 0 is the n1 = 1 normalisation run
    std::vector<ScenarioOutcome> res(diff.size() + 1);
    parallel_for(res.size(), ctx.jobs, [&](size_t k) {
        SlabMedium m = base;
        double d = k == 0 ? 1.0 : diff[k - 1];
        m.populations = Populations(0.5 * (1 + d), 0.5 * (1 - d), 0);
        ScenarioPreset sp = sc::make_preset(mode, m, carrier_for(mode, p, m, reference), pulse_width(p, m));
        res[k] = scenario(sp, default_window(sp, points));
    });
    ModelOutput out;
    Table t;
    t.name = "scan";
    t.add("n1_minus_n2", "1").values = diff;
    auto& ratio = t.add("peak_ratio", "1").values;
    auto& shift = t.add("shift", "m").values;
    auto& norm = t.add("shift_normalized", "1").values;
    for (size_t k = 1; k < res.size(); ++k) {
        ratio.push_back(res[k].metrics.peak_ratio);
        shift.push_back(res[k].metrics.shift);
        norm.push_back(res[k].metrics.shift / res[0].metrics.shift);
        if (!res[k].warning.empty())
            out.warnings.push_back("n1 - n2 = " + num_label(diff[k - 1]) + ": " + res[k].warning);
    }
    t.plot = PlotSpec{"peak amplitude and normalised shift, carrier: " + mode, "n1 - n2", "",
                      {"peak_ratio", "shift_normalized"}};
    out.summary["reference_shift_m"] = res[0].metrics.shift;
    out.tables.push_back(std::move(t));
    return out;
}

ModelOutput run_dephasing_scan(const json& p, const RunContext& ctx)
{
    SlabMedium base = base_medium(p);
    std::vector<double> gs = uniform_grid(p, "scan", 10001);
    if (gs.front() < 0 || gs.back() > 0.5)
        throw ConfigError("scan", "gamma1 must lie in [0, 0.5] gamma3");
    std::vector<GainPoint> pts = gain_vs_dephasing(base, gs);

    ModelOutput out;
    Table t;
    t.name = "dephasing";
    t.add("gamma1", "gamma3").values = gs;
    auto& r21 = t.add("rho22_over_rho11", "1").values;
    auto& r31 = t.add("rho33_over_rho11", "1").values;
    auto& gain = t.add("gain_percent", "%").values;
    for (const GainPoint& g : pts) {
        r21.push_back(g.populations.n2() / g.populations.n1());
        r31.push_back(g.populations.n3() / g.populations.n1());
        gain.push_back(g.gain_percent);
    }
    t.plot = PlotSpec{"steady state vs ground-state dephasing", "gamma1 / gamma3", "", {"rho22_over_rho11",
                                                                                        "rho33_over_rho11"}};
    Table g;
    g.name = "gain";
    g.columns = {t.columns[0], t.columns[3]};
    g.plot = PlotSpec{"centreline gain vs dephasing", "gamma1 / gamma3", "gain [%]", {"gain_percent"}};
    size_t arg = 0;
    for (size_t k = 0; k < pts.size(); ++k)
        if (pts[k].gain_percent > pts[arg].gain_percent)
            arg = k;
    out.summary["max_gain_percent"] = pts[arg].gain_percent;
    out.summary["max_gain_gamma1"] = gs[arg];

    if (boolean(p, "pulses.enabled")) {
        const size_t points = size_t(integer_in(p, "pulse.window_points", 11, 100001));
        std::vector<ScenarioOutcome> delay(gs.size()), advance(gs.size());
        std::vector<double> adv_det(gs.size(), nan_value);
        std::vector<std::string> errs(gs.size());
        parallel_for(gs.size(), ctx.jobs, [&](size_t k) {
            SlabMedium m = base;
            m.scheme = with_dephasing(base.scheme, gs[k]);
            m.populations = pts[k].populations;
            double w = pulse_width(p, m);
            ScenarioPreset r = sc::make_preset("resonance", m, 0, w);
            delay[k] = scenario(r, default_window(r, points));
            try {
                double d = sc::advance_detuning(m);
                adv_det[k] = d / m.scheme.gamma3();
                ScenarioPreset a = sc::make_preset("advance", m, d, w);
                advance[k] = scenario(a, default_window(a, points));
            } catch (const std::exception& e) {
                errs[k] = e.what();
            }
        });
        Table d;
        d.name = "delay_advance";
        d.add("gamma1", "gamma3").values = gs;
        auto& dl = d.add("delay", "m").values;
        auto& dr = d.add("delay_peak_ratio", "1").values;
        auto& ad = d.add("advance", "m").values;
        auto& ar = d.add("advance_peak_ratio", "1").values;
        d.add("advance_detuning", "gamma3").values = adv_det;
        for (size_t k = 0; k < gs.size(); ++k) {
            dl.push_back(-delay[k].metrics.shift);
            dr.push_back(delay[k].metrics.peak_ratio);
            ad.push_back(advance[k].metrics.shift);
            ar.push_back(advance[k].metrics.peak_ratio);
            for (const std::string* w : {&delay[k].warning, &advance[k].warning, &errs[k]})
                if (!w->empty())
                    out.warnings.push_back("gamma1 = " + num_label(gs[k]) + ": " + *w);
        }
        d.plot = PlotSpec{"pulse delay and advance vs dephasing", "gamma1 / gamma3", "[m]", {"delay", "advance"}};
        out.tables.push_back(std::move(d));
    }
    out.tables.insert(out.tables.begin(), {t, g});
    return out;
}

json schedule_defaults()
{
    return {{"amplitude", 0.8}, {"rate", 0.1}, {"t_off", 15.0}, {"t_on", 125.0}, {"coupling", 0.01}};
}

MixingSchedule make_schedule(const json& p)
{
    double a = number_in(p, "schedule.amplitude", 1e-9, 1e6);
    double r = number_in(p, "schedule.rate", 1e-9, 1e6);
    double t_off = number(p, "schedule.t_off");
    double t_on = number(p, "schedule.t_on");
    if (t_on <= t_off)
        throw ConfigError("schedule.t_on", "must come after schedule.t_off");
    MixingSchedule s;
    s.coupling = number_in(p, "schedule.coupling", 1e-12, 1e12);
    s.rabi_pump = [a, r, t_off, t_on](double t) {
        return a * (1 - 0.5 * std::tanh(r * (t - t_off)) + 0.5 * std::tanh(r * (t - t_on)));
    };
    return s;
}

ModelOutput run_schedule(const json& p, const RunContext&)
{
    MixingSchedule s = make_schedule(p);
    std::vector<double> t = uniform_grid(p, "time");
    double r0 = s.rabi_pump(t.front());
    Table tab;
    tab.name = "schedule";
    tab.add("t", "1/gamma3").values = t;
    auto& rr = tab.add("rabi_over_initial", "1").values;
    auto& th = tab.add("theta_over_half_pi", "1").values;
    auto& vg = tab.add("v_g", "c").values;
    auto& ad = tab.add("adiabaticity", "1").values;
    for (double x : t) {
        rr.push_back(s.rabi_pump(x) / r0);
        th.push_back(s.theta(x) / (phys::pi / 2));
        vg.push_back(s.velocity(x));
        ad.push_back(adiabaticity(s, x));
    }
    tab.plot = PlotSpec{"control field and mixing angle", "t gamma3", "", {"rabi_over_initial", "theta_over_half_pi"}};
    ModelOutput out;
    out.tables.push_back(std::move(tab));
    return out;
}

ModelOutput run_storage(const json& p, const RunContext& ctx)
{
    StorageConfig base;
    base.schedule = make_schedule(p);
    base.x_lo = number(p, "grid.lo");
    base.x_hi = number(p, "grid.hi");
    base.points = size_t(integer_in(p, "grid.points", 16, 1000001));
    if (base.x_hi <= base.x_lo)
        throw ConfigError("grid.hi", "must exceed grid.lo");
    double x0 = number(p, "envelope.center"), w = number_in(p, "envelope.width", 1e-9, 1e9);
    base.envelope = [x0, w](double x) { return cplx(std::exp(-((x - x0) / w) * ((x - x0) / w)), 0); };
    base.times = numbers(p, "times");
    if (base.times.size() < 2)
        throw ConfigError("times", "need at least two snapshot times");
    for (size_t k = 1; k < base.times.size(); ++k)
        if (base.times[k] <= base.times[k - 1])
            throw ConfigError("times", "snapshot times must increase");
    std::vector<double> gammas = numbers(p, "gain.gamma1");
    GainSetting gs;
    gs.eta_max = number_in(p, "gain.eta_max", 0, 0.5);
    gs.rule = string_of(p, "gain.rule", {"rate_estimate", "steady_state"}) == "steady_state"
                  ? GainSetting::Rule::steady_state
                  : GainSetting::Rule::rate_estimate;
    for (size_t k = 0; k < gammas.size(); ++k)
        if (gammas[k] < 0)
            throw ConfigError("gain.gamma1[" + std::to_string(k) + "]", "must be non-negative");

    std::vector<StorageRun> runs(gammas.size() + 1);
    parallel_for(runs.size(), ctx.jobs, [&](size_t k) {
        StorageConfig c = base;
        if (k > 0) {
            GainSetting g = gs;
            g.gamma1 = gammas[k - 1];
            c.gain = g;
        }
        runs[k] = store_release_experiment(c);
    });

    ModelOutput out;
    const StorageRun& ideal = runs.front();
    for (size_t s = 0; s < ideal.snapshots.size(); ++s) {
        const Snapshot& sn = ideal.snapshots[s];
        Table t;
        t.name = "snapshot_" + std::to_string(s);
        t.add("x", "c/gamma3").values = sn.field.x;
        auto put = [&](const std::string& name, const std::vector<cplx>& v) {
            auto& c = t.add(name, "1").values;
            for (const cplx& z : v)
                c.push_back(z.real());
        };
        put("E_ideal", sn.electric);
        put("psi_ideal", sn.field.psi);
        put("S_ideal", sn.spin);
        t.plot = PlotSpec{"t = " + num_label(sn.t) + ", theta/(pi/2) = " + num_label(sn.theta / (phys::pi / 2)),
                          "x [c/gamma3]", "amplitude", {"E_ideal", "psi_ideal", "S_ideal"}};
        for (size_t k = 1; k < runs.size(); ++k) {
            std::string n = "E_gamma1_" + num_label(gammas[k - 1]);
            put(n, runs[k].snapshots[s].electric);
            t.plot->y.push_back(n);
        }
        out.summary["snapshots"].push_back({{"t", sn.t}, {"theta", sn.theta}});
        out.tables.push_back(std::move(t));
    }
    Table r;
    r.name = "released";
    auto& g = r.add("gamma1", "gamma3").values;
    auto& peak = r.add("released_peak", "1").values;
    auto& fid = r.add("shape_fidelity", "1").values;
    auto& drift = r.add("norm_drift", "1").values;
    for (size_t k = 0; k < runs.size(); ++k) {
        double pk = 0;
        for (const cplx& z : runs[k].snapshots.back().electric)
            pk = std::max(pk, std::abs(z));
        g.push_back(k == 0 ? 0.0 : gammas[k - 1]);
        peak.push_back(pk);
        fid.push_back(runs[k].shape_fidelity);
        drift.push_back(runs[k].norm_drift);
        for (const std::string& wn : runs[k].warnings)
            out.warnings.push_back("gamma1 = " + num_label(g.back()) + ": " + wn);
    }
    out.summary["displacement"] = ideal.total_displacement;
    out.summary["shape_fidelity"] = ideal.shape_fidelity;
    out.summary["norm_drift"] = ideal.norm_drift;
    out.tables.push_back(std::move(r));
    return out;
}

ModelOutput run_spectrum(const json& p, const RunContext&)
{
    MixingSchedule s = make_schedule(p);
    double eta = number(p, "algebra.eta");
    if (eta < 0 || eta >= 0.5)
        throw ConfigError("algebra.eta", "must lie in [0, 0.5)");
    double omega = number_in(p, "algebra.omega", 1e-12, 1e12);
    int n_max = integer_in(p, "algebra.n_max", 0, 10000);
    std::vector<double> times = numbers(p, "times");
    CompressionTrace snap = spectrum_compression_trace(s, eta, omega, n_max, times);

    ModelOutput out;
    Table lv;
    lv.name = "levels";
    auto& n = lv.add("n", "1").values;
    for (int k = 0; k <= n_max; ++k)
        n.push_back(k);
    lv.add("E_boson", "hbar omega").values = energy_spectrum(harmonic(), omega, n_max);
    lv.plot = PlotSpec{"deformed oscillator spectrum", "n", "E [hbar omega]", {"E_boson"}};
    for (size_t k = 0; k < times.size(); ++k) {
        std::string name = "E_t_" + num_label(times[k]);
        lv.add(name, "hbar omega").values = snap.energies[k];
        lv.plot->y.push_back(name);
        out.summary["snapshots"].push_back({{"t", times[k]}, {"theta", snap.theta[k]}, {"spacing", snap.spacing[k]}});
    }
    std::vector<double> grid = uniform_grid(p, "trace");
    CompressionTrace tr = spectrum_compression_trace(s, eta, omega, n_max, grid);
    Table t;
    t.name = "compression";
    t.add("t", "1/gamma3").values = grid;
    auto& th = t.add("theta_over_half_pi", "1").values;
    for (double x : tr.theta)
        th.push_back(x / (phys::pi / 2));
    t.add("spacing", "hbar omega").values = tr.spacing;
    t.plot = PlotSpec{"level spacing along the storage schedule", "t gamma3", "", {"theta_over_half_pi", "spacing"}};
    out.tables = {lv, t};
    return out;
}

TripodScheme tripod_from(const json& p)
{
    TripodScheme s;
    s.rabi_pump = number_in(p, "tripod.pump", 0, 1e6);
    s.rabi_probe = number_in(p, "tripod.probe", 0, 1e6);
    s.rabi_trigger = number_in(p, "tripod.trigger", 0, 1e6);
    s.delta2 = number(p, "tripod.delta2");
    s.dephasing.g10 = number_in(p, "tripod.g10", 0, 1e6);
    s.dephasing.g20 = number_in(p, "tripod.g20", 0, 1e6);
    s.dephasing.g30 = number_in(p, "tripod.g30", 0, 1e6);
    s.dephasing.g12 = number_in(p, "tripod.g12", 0, 1e6);
    s.dephasing.g13 = number_in(p, "tripod.g13", 0, 1e6);
    s.dephasing.g23 = number_in(p, "tripod.g23", 0, 1e6);
    s.sign = string_of(p, "tripod.sign", {"consistent", "as_printed"}) == "as_printed" ? GroundSign::as_printed
                                                                                        : GroundSign::consistent;
    return s;
}

ModelOutput run_tripod_response(const json& p, const RunContext&)
{
    TripodScheme base = tripod_from(p);
    std::vector<double> grid = uniform_grid(p, "grid");
    ModelOutput out;
    for (const char* which : {"matched", "mismatched"}) {
        double d3 = number(p, std::string("cases.trigger_detuning_") + which);
        Table t;
        t.name = std::string("rho10_") + which;
        t.add("delta1", "gamma").values = grid;
        auto& re = t.add("re_rho10", "1").values;
        auto& im = t.add("im_rho10", "1").values;
        auto& fre = t.add("re_rho10_frozen", "1").values;
        auto& fim = t.add("im_rho10_frozen", "1").values;
        for (double d : grid) {
            TripodScheme s = base;
            s.delta1 = d;
            s.delta3 = d3;
            cplx c = rho10_steady(s), f = rho10_frozen_populations(s);
            re.push_back(c.real());
            im.push_back(c.imag());
            fre.push_back(f.real());
            fim.push_back(f.imag());
        }
        t.plot = PlotSpec{std::string("probe coherence, trigger detuning ") + num_label(d3), "probe detuning / gamma",
                          "rho10 / Omega_P", {"re_rho10", "im_rho10"}};
        out.tables.push_back(std::move(t));
    }
    return out;
}

ModelOutput run_scattering(const json& p, const RunContext&)
{
    ScatteringConfig c;
    c.schedule = make_schedule(p);
    c.x_lo = number(p, "grid.lo");
    c.x_hi = number(p, "grid.hi");
    c.points = size_t(integer_in(p, "grid.points", 16, 1000001));
    if (c.x_hi <= c.x_lo)
        throw ConfigError("grid.hi", "must exceed grid.lo");
    c.probe_center = number(p, "envelope.probe_center");
    c.trigger_center = number(p, "envelope.trigger_center");
    c.width = number_in(p, "envelope.width", 1e-9, 1e9);
    c.theta_mid = number_in(p, "storage.theta_mid", 1e-6, phys::pi / 2 - 1e-9);
    c.t_end = number_in(p, "storage.t_end", 1e-9, 1e9);
    ScatteringRun run = scattering_experiment(c);

    ModelOutput out;
    for (size_t s = 0; s < run.snapshots.size(); ++s) {
        const TwoPolaritonField& f = run.snapshots[s];
        Table t;
        t.name = "snapshot_" + std::to_string(s);
        t.add("x", "c/gamma3").values = f.probe.x;
        auto& ep = t.add("E_probe", "1").values;
        auto& et = t.add("E_trigger", "1").values;
        for (const cplx& z : f.probe.electric(run.thetas[s]))
            ep.push_back(z.real());
        for (const cplx& z : f.trigger.electric(run.thetas[s]))
            et.push_back(z.real());
        t.plot = PlotSpec{"t = " + num_label(run.times[s]) + ", theta/(pi/2) = " +
                              num_label(run.thetas[s] / (phys::pi / 2)),
                          "x [c/gamma3]", "field", {"E_probe", "E_trigger"}};
        out.tables.push_back(std::move(t));
        out.summary["snapshots"].push_back({{"t", run.times[s]}, {"theta", run.thetas[s]}});
    }
    out.summary["correlation_probe"] = run.correlation_probe;
    out.summary["correlation_trigger"] = run.correlation_trigger;
    out.summary["displacement"] = run.displacement;
    return out;
}

// ---- registry ----

std::vector<Model> build_models()
{
    json slab = cold_slab_defaults();
    json response = slab;
    response["populations"] = {{"splits", splits_json({Populations(1, 0, 0)})}, {"steady_state", false}};
    response["grid"] = {{"lo", -3.0}, {"hi", 3.0}, {"points", 601}};
    response["full"] = {{"enabled", false}};

    json pulse = slab;
    pulse["populations"] = {{"splits", splits_json({Populations(1, 0, 0)})}};
    pulse["pulse"] = {{"carriers", json::array({"resonance"})},
                      {"detuning", 0.0},
                      {"width_rule", "gamma1_decay"},
                      {"width_factor", sc::cold_width_over_gamma1},
                      {"window_points", 4001}};

    json scan = slab;
    scan["scan"] = {{"lo", -1.0}, {"hi", 1.0}, {"points", 11}};
    scan["pulse"] = {{"carrier", "resonance"},
                     {"detuning", 0.0},
                     {"width_rule", "gamma1_decay"},
                     {"width_factor", sc::cold_width_over_gamma1},
                     {"window_points", 2001}};

    json deph = slab;
    deph["geometry"] = hot_geometry();
    deph["scan"] = {{"lo", 0.0}, {"hi", 0.5}, {"points", 51}};
    deph["pulses"] = {{"enabled", false}};
    deph["pulse"] = {{"width_rule", "bandwidth"}, {"width_factor", sc::hot_width_over_bandwidth},
                     {"window_points", 2001}};

    json sched = {{"schedule", schedule_defaults()}, {"time", {{"lo", 0.0}, {"hi", 250.0}, {"points", 501}}}};

    json storage = {{"schedule", schedule_defaults()},
                    {"grid", {{"lo", -60.0}, {"hi", 260.0}, {"points", 1281}}},
                    {"envelope", {{"center", 0.0}, {"width", 10.0}}},
                    {"times", json::array({0.0, 70.0, 250.0})},
                    {"gain", {{"gamma1", json::array()}, {"eta_max", 0.45}, {"rule", "rate_estimate"}}}};

    json spectrum = {{"schedule", schedule_defaults()},
                     {"algebra", {{"eta", 0.45}, {"omega", 1.0}, {"n_max", 10}}},
                     {"times", json::array({0.0, 70.0, 250.0})},
                     {"trace", {{"lo", 0.0}, {"hi", 250.0}, {"points", 251}}}};

    json tripod = {{"tripod",
                    {{"pump", 1.0},
                     {"probe", 0.1},
                     {"trigger", 0.1},
                     {"delta2", 0.0},
                     {"g10", 0.5},
                     {"g20", 0.5},
                     {"g30", 0.5},
                     {"g12", 1e-3},
                     {"g13", 1e-3},
                     {"g23", 1e-3},
                     {"sign", "consistent"}}},
                   {"cases", {{"trigger_detuning_matched", 0.0}, {"trigger_detuning_mismatched", 0.5}}},
                   {"grid", {{"lo", -3.0}, {"hi", 3.0}, {"points", 601}}}};

    ScatteringConfig sdef;
    json scatter = {{"schedule", schedule_defaults()},
                    {"grid", {{"lo", sdef.x_lo}, {"hi", sdef.x_hi}, {"points", sdef.points}}},
                    {"envelope",
                     {{"probe_center", sdef.probe_center}, {"trigger_center", sdef.trigger_center}, {"width", sdef.width}}},
                    {"storage", {{"theta_mid", sdef.theta_mid}, {"t_end", sdef.t_end}}}};

    return {
        {"response", "susceptibility, index, absorption, group index, GVD and transmission vs probe detuning",
         response, run_response},
        {"pulse", "gaussian pulse transmitted through the slab, with peak metrics", pulse, run_pulse},
        {"population_scan", "peak amplitude and shift vs population difference", scan, run_population_scan},
        {"dephasing_scan", "steady populations, gain and optional pulse delay/advance vs dephasing", deph,
         run_dephasing_scan},
        {"schedule", "control field and mixing angle of the storage schedule", sched, run_schedule},
        {"storage", "dark-state polariton storage and release snapshots", storage, run_storage},
        {"spectrum", "deformed-oscillator spectrum along the storage schedule", spectrum, run_spectrum},
        {"tripod_response", "tripod probe coherence vs probe detuning", tripod, run_tripod_response},
        {"scattering", "two dark-state polaritons stored and released together", scatter, run_scattering},
    };
}

std::vector<Preset> build_presets()
{
    json retarded = splits_json(sc::retarded_splits());
    json advanced = splits_json(sc::advanced_splits());
    json hot_pair = splits_json({Populations(1, 0, 0), Populations(0.7, 0.3, 0)});
    json hot = hot_geometry();
    json no_pump = {{"rabi_pump", 0.0}};
    json wide = {{"lo", -3.0}, {"hi", 3.0}, {"points", 1201}};
    auto response = [&](json splits, json extra = json::object()) {
        json o = {{"populations", {{"splits", splits}}}, {"grid", wide}};
        o.merge_patch(extra);
        return o;
    };
    json hot_scheme = {{"gamma1", 0.2}};
    json hot_pulse = {{"carriers", json::array({"resonance", "advance_own"})},
                      {"width_rule", "bandwidth"},
                      {"width_factor", sc::hot_width_over_bandwidth}};

    std::vector<double> storage_gammas = {0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0};
    return {
        {"fig1_3", "full steady-state vs unsaturated susceptibility, all population in |1>", "response",
         response(splits_json({Populations(1, 0, 0)}), {{"full", {{"enabled", true}}}})},
        {"fig2_5", "refractive index without pump", "response", response(retarded, {{"fields", no_pump}})},
        {"fig2_6", "absorption without pump", "response", response(retarded, {{"fields", no_pump}})},
        {"fig2_7", "pulse through the unpumped cloud", "pulse",
         {{"fields", no_pump}, {"populations", {{"splits", retarded}}}}},
        {"fig2_8", "refractive index with the pump on", "response", response(retarded)},
        {"fig2_9", "absorption with the pump on", "response", response(retarded)},
        {"fig2_10", "reciprocal group velocity", "response", response(retarded)},
        {"fig2_11", "group velocity dispersion", "response", response(retarded)},
        {"fig2_12", "retarded pulses at resonance", "pulse", {{"populations", {{"splits", retarded}}}}},
        {"fig2_13", "peak and shift vs population difference at resonance", "population_scan", json::object()},
        {"fig2_14", "advanced pulses at the n1 = 1 negative group velocity extremum", "pulse",
         {{"populations", {{"splits", advanced}}}, {"pulse", {{"carriers", json::array({"advance"})}}}}},
        {"fig2_15", "peak and shift vs population difference at the advance detuning", "population_scan",
         {{"pulse", {{"carrier", "advance"}}}}},
        {"fig2_16", "full inversion at its own negative group velocity extremum", "pulse",
         {{"populations", {{"splits", splits_json({Populations(0, 1, 0)})}}},
          {"pulse", {{"carriers", json::array({"advance_own"})}}}}},
        {"fig2_20", "hot-cell population ratios vs dephasing", "dephasing_scan", json::object()},
        {"fig2_21", "hot-cell susceptibility and transmission at gamma1 = 0.2", "response",
         {{"scheme", hot_scheme},
          {"geometry", hot},
          {"populations", {{"splits", hot_pair}}},
          {"grid", {{"lo", -3.0}, {"hi", 3.0}, {"points", 1201}}},
          {"full", {{"enabled", true}}}}},
        {"fig2_22", "hot-cell centreline gain vs dephasing", "dephasing_scan", json::object()},
        {"fig2_23", "hot-cell group index and GVD at gamma1 = 0.2", "response",
         {{"scheme", hot_scheme},
          {"geometry", hot},
          {"populations", {{"splits", hot_pair}}},
          {"grid", {{"lo", -1.5}, {"hi", 1.5}, {"points", 1201}}}}},
        {"fig2_24", "hot-cell retarded and advanced pulses", "pulse",
         {{"scheme", hot_scheme},
          {"geometry", hot},
          {"populations", {{"splits", hot_pair}}},
          {"pulse", hot_pulse}}},
        {"fig2_25", "hot-cell delay and advance vs dephasing", "dephasing_scan",
         {{"scan", {{"points", 11}}}, {"pulses", {{"enabled", true}}}}},
        {"fig3_5", "control field and mixing angle", "schedule", json::object()},
        {"fig3_6", "ideal storage and release snapshots", "storage", json::object()},
        {"fig3_7", "storage with gain from ground-state dephasing", "storage",
         {{"gain", {{"gamma1", storage_gammas}}}}},
        {"fig4_1", "spectrum compression during storage", "spectrum", json::object()},
        {"fig5_2", "tripod probe coherence, matched and mismatched trigger", "tripod_response", json::object()},
        {"fig5_3", "two-polariton storage and release", "scattering", json::object()},
    };
}

}  // namespace

const std::vector<Model>& models()
{
    static const std::vector<Model> m = build_models();
    return m;
}

const std::vector<Preset>& presets()
{
    static const std::vector<Preset> p = build_presets();
    return p;
}

const Model& find_model(const std::string& name)
{
    for (const Model& m : models())
        if (m.name == name)
            return m;
    throw ConfigError("model", "unknown model '" + name + "'");
}

const Preset& find_preset(const std::string& name)
{
    for (const Preset& p : presets())
        if (p.name == name)
            return p;
    throw ConfigError("preset", "unknown preset '" + name + "'");
}

json preset_parameters(const Preset& p)
{
    return merge_checked(find_model(p.model).defaults, p.overrides);
}

}  // namespace eit::cli

#include "eit/polariton.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/binomial.hpp>

#include "eit/bloch.hpp"
#include "eit/errors.hpp"

namespace eit {

namespace {

double integrate(const std::function<double(double)>& f, double a, double b)
{
    if (a == b)
        return 0;
    double err = 0;
    double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-10, &err);
    if (!(err <= 1e-8 * std::max(1.0, std::abs(v))))
        throw ConvergenceError("polariton: displacement quadrature did not converge");
    return v;
}

double checked_rabi(const MixingSchedule& s, double t)
{
    double w = s.rabi_pump(t);
    if (!(w > 0))
        throw ValidationError("MixingSchedule: Omega_P(t) must stay positive");
    return w;
}

// Indices of the first and last samples above a small fraction of the peak.
std::pair<size_t, size_t> support(const std::vector<cplx>& f)
{
    double peak = 0;
    for (const cplx& v : f)
        peak = std::max(peak, std::abs(v));
    size_t lo = f.size(), hi = 0;
    for (size_t k = 0; k < f.size(); ++k)
        if (std::abs(f[k]) > 1e-10 * peak) {
            lo = std::min(lo, k);
            hi = k;
        }
    return {lo, hi};
}

void check_on_grid(const PolaritonField& f, double d)
{
    auto [lo, hi] = support(f.psi);
    if (lo > hi)
        return;
    double a = f.x[lo] + d, b = f.x[hi] + d;
    if (a < f.x.front() || b > f.x.back()) {
        std::ostringstream os;
        os << "polariton: support [" << a << ", " << b << "] leaves the grid [" << f.x.front() << ", " << f.x.back()
           << "], extend it";
        throw GridError(os.str());
    }
}

double max_abs(const std::vector<cplx>& v)
{
    double m = 0;
    for (const cplx& z : v)
        m = std::max(m, std::abs(z));
    return m;
}

}  // namespace

double MixingSchedule::theta(double t) const
{
    return std::atan(std::sqrt(coupling) / checked_rabi(*this, t));
}

double MixingSchedule::velocity(double t) const
{
    double w = checked_rabi(*this, t);
    return w * w / (w * w + coupling);
}

double storage_rabi(double t)
{
    return 0.8 * (1 - 0.5 * std::tanh(0.1 * (t - 15)) + 0.5 * std::tanh(0.1 * (t - 125)));
}

MixingSchedule storage_schedule(double coupling)
{
    require(coupling >= 0, "storage_schedule: negative coupling");
    return {storage_rabi, coupling};
}

double mixing_angle(const MixingSchedule& s, double t)
{
    return s.theta(t);
}

GroupIndex group_index_stationary(double coupling, double rabi_pump, double gamma1, double gamma3)
{
    require(rabi_pump > 0, "group_index_stationary: Omega_P must be positive");
    require(coupling >= 0 && gamma1 >= 0 && gamma3 > 0, "group_index_stationary: negative rate");
    double B = (rabi_pump * rabi_pump + (gamma1 + gamma3) * gamma1) / rabi_pump;
    double ng = coupling / (rabi_pump * B);
    return {ng, 1 / (1 + ng)};
}

PolaritonField PolaritonField::on_grid(double lo, double hi, size_t n, const std::function<cplx(double)>& f)
{
    require(n >= 2 && hi > lo, "PolaritonField: need at least two points on a non-empty interval");
    PolaritonField p;
    p.x.resize(n);
    p.psi.resize(n);
    for (size_t k = 0; k < n; ++k) {
        p.x[k] = lo + (hi - lo) * double(k) / double(n - 1);
        p.psi[k] = f(p.x[k]);
    }
    return p;
}

double PolaritonField::norm2() const
{
    double s = 0;
    for (const cplx& v : psi)
        s += std::norm(v);
    return s * spacing();
}

std::vector<cplx> PolaritonField::electric(double theta) const
{
    std::vector<cplx> E(psi.size());
    double c = std::cos(theta);
    for (size_t k = 0; k < psi.size(); ++k)
        E[k] = c * psi[k];
    return E;
}

std::vector<cplx> PolaritonField::spin(double theta) const
{
    std::vector<cplx> S(psi.size());
    double s = std::sin(theta);
    for (size_t k = 0; k < psi.size(); ++k)
        S[k] = delta_k == 0 ? -s * psi[k] : -s * psi[k] * std::exp(cplx(0, -delta_k * x[k]));
    return S;
}

PolaritonField PolaritonField::recompose(const std::vector<double>& x, const std::vector<cplx>& E,
                                         const std::vector<cplx>& S, double theta, double delta_k)
{
    require(x.size() == E.size() && x.size() == S.size(), "PolaritonField::recompose: size mismatch");
    PolaritonField p;
    p.x = x;
    p.delta_k = delta_k;
    p.psi.resize(x.size());
    double c = std::cos(theta), s = std::sin(theta);
    for (size_t k = 0; k < x.size(); ++k) {
        cplx spin = delta_k == 0 ? S[k] : S[k] * std::exp(cplx(0, delta_k * x[k]));
        p.psi[k] = c * E[k] - s * spin;
    }
    return p;
}

double wavevector_mismatch(double omega_32_over_c, double angle)
{
    return omega_32_over_c * (std::cos(angle) - 1);
}

std::vector<cplx> sinc_shift(const std::vector<cplx>& f, double spacing, double d)
{
    const long n = long(f.size());
    const double s = d / spacing;
    std::vector<cplx> out(f.size(), cplx(0, 0));
    if (s == std::round(s)) {
        long m = long(std::round(s));
        for (long k = 0; k < n; ++k)
            if (k - m >= 0 && k - m < n)
                out[k] = f[k - m];
        return out;
    }
    // out[k] = sum_j f[j] sinc(k - j - s), a Toeplitz kernel in k - j
    std::vector<double> K(2 * n - 1);
    const double sps = std::sin(phys::pi * s);
    for (long m = -(n - 1); m <= n - 1; ++m) {
        double u = double(m) - s;
        // sin(pi (m - s)) = (-1)^m sin(-pi s)
        double num = (m % 2 == 0 ? 1.0 : -1.0) * -sps;
        K[m + n - 1] = num / (phys::pi * u);
    }
    for (long k = 0; k < n; ++k) {
        cplx acc = 0;
        const double* row = &K[k + n - 1];
        for (long j = 0; j < n; ++j)
            acc += f[j] * row[-j];
        out[k] = acc;
    }
    return out;
}

double displacement(const MixingSchedule& s, double t0, double t1)
{
    return integrate([&s](double t) { return s.velocity(t); }, t0, t1);
}

PolaritonField evolve_ideal(const PolaritonField& f, const MixingSchedule& s, double t0, double t1)
{
    require(f.x.size() >= 2 && f.x.size() == f.psi.size(), "evolve_ideal: malformed field");
    double d = displacement(s, t0, t1);
    check_on_grid(f, d);
    PolaritonField out = f;
    out.psi = sinc_shift(f.psi, f.spacing(), d);
    return out;
}

double GainSetting::raw_eta(double rabi_pump) const
{
    require(rabi_pump > 0, "GainSetting: Omega_P must be positive");
    if (gamma1 == 0)
        return 0;
    if (rule == Rule::rate_estimate)
        return 4 * gamma1 / rabi_pump;
    LambdaScheme sc;
    sc.gamma_1_decay = sc.gamma_2_decay = gamma3;
    sc.gamma_12_decay = 2 * gamma1;
    sc.omega_31 = sc.omega_32 = 1e6 * gamma3;
    sc.probe_wavelength = 1;
    DriveFields fl;
    fl.rabi_pump = rabi_pump;
    fl.rabi_probe = 1e-3 * gamma3;
    return steady_state_full(sc, fl).populations().n2();
}

double GainSetting::eta(double rabi_pump) const
{
    return std::clamp(raw_eta(rabi_pump), 0.0, eta_max);
}

PolaritonField evolve_gain(const PolaritonField& f, const MixingSchedule& s, const GainSetting& g, double t0,
                           double t1, GainDiagnostics* diag)
{
    require(g.gamma1 >= 0 && g.gamma3 > 0, "evolve_gain: rates must be non-negative");
    require(g.eta_max >= 0 && g.eta_max < 0.5, "evolve_gain: eta bound must lie in [0, 1/2)");
    PolaritonField out = evolve_ideal(f, s, t0, t1);
    double log_gain = 0;
    bool clipped = false;
    if (g.gamma1 != 0) {
        auto rate = [&](double t) {
            double w = checked_rabi(s, t);
            double raw = g.raw_eta(w);
            if (raw > g.eta_max)
                clipped = true;
            double eta = std::clamp(raw, 0.0, g.eta_max);
            double c2 = w * w / (w * w + s.coupling);
            return s.coupling / g.gamma3 * eta * c2 - g.gamma1 * (1 - c2);
        };
        log_gain = integrate(rate, t0, t1);
        double factor = std::exp(log_gain);
        for (cplx& v : out.psi)
            v *= factor;
    }
    if (diag) {
        diag->displacement = displacement(s, t0, t1);
        diag->log_gain = log_gain;
        diag->eta_clipped = clipped;
        if (clipped)
            diag->warnings.push_back("evolve_gain: eta clipped at " + std::to_string(g.eta_max));
    }
    return out;
}

double adiabaticity(const MixingSchedule& s, double t)
{
    const double h = 1e-4;
    double w = checked_rabi(s, t);
    double dw = (s.rabi_pump(t + h) - s.rabi_pump(t - h)) / (2 * h);
    double g = std::sqrt(s.coupling);
    if (g == 0)
        return 0;
    double dtheta = -g * dw / (w * w + g * g);
    return std::abs(dtheta) * std::max(1.0, g / w) / g;
}

double overlap_fidelity(const std::vector<cplx>& a, const std::vector<cplx>& b)
{
    require(a.size() == b.size(), "overlap_fidelity: size mismatch");
    cplx ab = 0;
    double aa = 0, bb = 0;
    for (size_t k = 0; k < a.size(); ++k) {
        ab += std::conj(a[k]) * b[k];
        aa += std::norm(a[k]);
        bb += std::norm(b[k]);
    }
    if (aa == 0 || bb == 0)
        return 0;
    return std::norm(ab) / (aa * bb);
}

StorageRun store_release_experiment(const StorageConfig& cfg)
{
    require(cfg.times.size() >= 2, "store_release_experiment: need at least two snapshot times");
    require(std::is_sorted(cfg.times.begin(), cfg.times.end()), "store_release_experiment: times must ascend");
    const MixingSchedule& s = cfg.schedule;
    PolaritonField input = PolaritonField::on_grid(cfg.x_lo, cfg.x_hi, cfg.points, cfg.envelope);
    const double t0 = cfg.times.front();

    StorageRun run;
    for (double t : cfg.times) {
        Snapshot snap;
        snap.t = t;
        snap.theta = s.theta(t);
        if (cfg.gain) {
            GainDiagnostics d;
            snap.field = evolve_gain(input, s, *cfg.gain, t0, t, &d);
            for (auto& w : d.warnings)
                if (std::find(run.warnings.begin(), run.warnings.end(), w) == run.warnings.end())
                    run.warnings.push_back(w);
            snap.eta = cfg.gain->eta(s.rabi_pump(t));
        } else {
            snap.field = evolve_ideal(input, s, t0, t);
            snap.eta = 0;
        }
        snap.electric = snap.field.electric(snap.theta);
        snap.spin = snap.field.spin(snap.theta);
        snap.commutator_deficit = 2 * snap.eta * std::sin(snap.theta) * std::sin(snap.theta);
        snap.adiabaticity = adiabaticity(s, t);
        if (snap.adiabaticity > 0.1) {
            std::ostringstream os;
            os << "adiabaticity " << snap.adiabaticity << " > 0.1 at t = " << t;
            run.warnings.push_back(os.str());
        }
        run.snapshots.push_back(std::move(snap));
    }

    const Snapshot& first = run.snapshots.front();
    const Snapshot& last = run.snapshots.back();
    run.total_displacement = displacement(s, t0, last.t);
    std::vector<cplx> back = sinc_shift(last.electric, input.spacing(), -run.total_displacement);
    run.shape_fidelity = overlap_fidelity(first.electric, back);
    run.peak_ratio = max_abs(last.electric) / max_abs(first.electric);
    double n0 = first.field.norm2();
    run.norm_drift = std::abs(last.field.norm2() - n0) / n0;
    return run;
}

namespace {

int check_transfer_inputs(const std::vector<double>& theta_path, long dim, int atoms)
{
    require(!theta_path.empty(), "single_mode_transfer: empty theta path");
    for (double th : theta_path)
        require(th >= 0 && th <= phys::pi / 2 + 1e-12, "single_mode_transfer: theta must lie in [0, pi/2]");
    require(dim >= 1, "single_mode_transfer: empty input state");
    int n_max = int(dim) - 1;
    if (n_max > atoms)
        throw ValidationError("single_mode_transfer: n_max exceeds the number of atoms (excitation overflow)");
    return n_max;
}

// Columns: |D,n> in the joint basis.
Eigen::MatrixXcd dark_state_map(double theta, int n_max, bool absorb_spin_phase)
{
    const int m = n_max + 1;
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(m * m, m);
    double c = std::cos(theta), s = std::sin(theta);
    for (int n = 0; n <= n_max; ++n)
        for (int k = 0; k <= n; ++k) {
            double amp = std::sqrt(boost::math::binomial_coefficient<double>(n, k)) * std::pow(c, n - k)
                         * std::pow(absorb_spin_phase ? s : -s, k);
            U((n - k) * m + k, n) = amp;
        }
    return U;
}

}  // namespace

Eigen::VectorXcd single_mode_transfer(const std::vector<double>& theta_path, const Eigen::VectorXcd& photon_amplitudes,
                                      int atoms)
{
    int n_max = check_transfer_inputs(theta_path, photon_amplitudes.size(), atoms);
    return dark_state_map(theta_path.back(), n_max, false) * photon_amplitudes;
}

Eigen::MatrixXcd single_mode_transfer_density(const std::vector<double>& theta_path, const Eigen::MatrixXcd& rho,
                                              int atoms, bool absorb_spin_phase)
{
    require(rho.rows() == rho.cols(), "single_mode_transfer_density: rho must be square");
    int n_max = check_transfer_inputs(theta_path, rho.rows(), atoms);
    Eigen::MatrixXcd U = dark_state_map(theta_path.back(), n_max, absorb_spin_phase);
    return U * rho * U.adjoint();
}

}  // namespace eit

#include "eit/tripod.hpp"

#include <cmath>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "eit/errors.hpp"

namespace eit {

namespace {

const cplx I(0, 1);

cplx nonzero(cplx v, const char* what)
{
    if (std::abs(v) < 1e-300)
        throw SingularError(std::string("rho10_steady: vanishing factor ") + what);
    return v;
}

}  // namespace

void TripodScheme::validate() const
{
    const TripodDecay& d = decay;
    const TripodDephasing& g = dephasing;
    for (double r : {d.to1, d.to2, d.to3, d.from2_to1, d.from3_to1, d.from3_to2, g.g10, g.g20, g.g30, g.g12, g.g13,
                     g.g23})
        require(r >= 0, "TripodScheme: rates must be non-negative");
}

TripodState::TripodState(const Eigen::Matrix4cd& m) : m_(m)
{
    require((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-10, "TripodState: matrix is not Hermitian");
    require(std::abs(m.trace() - 1.0) <= 1e-10, "TripodState: trace must be 1");
}

Eigen::Matrix4cd tripod_interaction(const TripodScheme& s)
{
    Eigen::Matrix4cd H = Eigen::Matrix4cd::Zero();
    const cplx W[4] = {0, s.rabi_probe, s.rabi_pump, s.rabi_trigger};
    for (int j = 1; j < 4; ++j) {
        H(j, 0) = W[j];
        H(0, j) = std::conj(W[j]);
    }
    return H;
}

TripodEigenstates tripod_eigenstates(double W, double WP, double WT)
{
    const double dark = WP * WP + WT * WT;
    const double all = dark + W * W;
    require(all > 0, "tripod_eigenstates: all Rabi frequencies are zero");
    TripodEigenstates e;
    if (dark > 0) {
        double n1 = std::sqrt(dark), n2 = std::sqrt(dark * all);
        e.dark1 = Eigen::Vector4d(0, WT / n1, 0, -WP / n1);
        e.dark2 = Eigen::Vector4d(0, W * WP / n2, -dark / n2, W * WT / n2);
    } else {
        e.dark1 = Eigen::Vector4d(0, 1, 0, 0);
        e.dark2 = Eigen::Vector4d(0, 0, 0, 1);
    }
    const double w = std::sqrt(all);
    Eigen::Vector4d B(0, WP / w, W / w, WT / w), Z(1, 0, 0, 0);
    e.bright_plus = (B + Z) / std::sqrt(2.0);
    e.bright_minus = (B - Z) / std::sqrt(2.0);
    e.energy_plus = w;
    e.energy_minus = -w;
    e.interaction = Eigen::Matrix4d::Zero();
    const double R[4] = {0, WP, W, WT};
    for (int j = 1; j < 4; ++j)
        e.interaction(j, 0) = e.interaction(0, j) = R[j];
    return e;
}

Eigen::Matrix4cd tripod_obe_rhs(const Eigen::Matrix4cd& r, const TripodScheme& s)
{
    const cplx P = s.rabi_probe, W = s.rabi_pump, T = s.rabi_trigger;
    const cplx Pc = std::conj(P), Wc = std::conj(W), Tc = std::conj(T);
    const TripodDecay& d = s.decay;
    const double sg = s.sign == GroundSign::consistent ? 1.0 : -1.0;
    const cplx D10 = s.Delta10(), D20 = s.Delta20(), D30 = s.Delta30();
    const cplx D12 = sg * s.Delta12(), D13 = sg * s.Delta13(), D23 = sg * s.Delta23();

    Eigen::Matrix4cd q;
    q(0, 0) = -(d.to1 + d.to2 + d.to3) * r(0, 0)
              - I * (Pc * r(1, 0) - P * r(0, 1) + Wc * r(2, 0) - W * r(0, 2) + Tc * r(3, 0) - T * r(0, 3));
    q(1, 1) = d.to1 * r(0, 0) + d.from2_to1 * r(2, 2) + d.from3_to1 * r(3, 3) - I * (P * r(0, 1) - Pc * r(1, 0));
    q(2, 2) = d.to2 * r(0, 0) - d.from2_to1 * r(2, 2) + d.from3_to2 * r(3, 3) - I * (W * r(0, 2) - Wc * r(2, 0));
    q(3, 3) = d.to3 * r(0, 0) - (d.from3_to1 + d.from3_to2) * r(3, 3) - I * (T * r(0, 3) - Tc * r(3, 0));

    q(1, 0) = -I * (-D10 * r(1, 0) + P * r(0, 0) - P * r(1, 1) - W * r(1, 2) - T * r(1, 3));
    q(2, 0) = -I * (-D20 * r(2, 0) + W * r(0, 0) - W * r(2, 2) - P * r(2, 1) - T * r(2, 3));
    q(3, 0) = -I * (-D30 * r(3, 0) + T * r(0, 0) - T * r(3, 3) - P * r(3, 1) - W * r(3, 2));
    q(1, 2) = -I * (D12 * r(1, 2) + P * r(0, 2) - Wc * r(1, 0));
    q(1, 3) = -I * (D13 * r(1, 3) + P * r(0, 3) - Tc * r(1, 0));
    q(2, 3) = -I * (D23 * r(2, 3) + W * r(0, 3) - Tc * r(2, 0));

    // Conjugate lines, written out so the map stays complex-linear.
    q(0, 1) = I * (-std::conj(D10) * r(0, 1) + Pc * r(0, 0) - Pc * r(1, 1) - Wc * r(2, 1) - Tc * r(3, 1));
    q(0, 2) = I * (-std::conj(D20) * r(0, 2) + Wc * r(0, 0) - Wc * r(2, 2) - Pc * r(1, 2) - Tc * r(3, 2));
    q(0, 3) = I * (-std::conj(D30) * r(0, 3) + Tc * r(0, 0) - Tc * r(3, 3) - Pc * r(1, 3) - Wc * r(2, 3));
    q(2, 1) = I * (std::conj(D12) * r(2, 1) + Pc * r(2, 0) - W * r(0, 1));
    q(3, 1) = I * (std::conj(D13) * r(3, 1) + Pc * r(3, 0) - T * r(0, 1));
    q(3, 2) = I * (std::conj(D23) * r(3, 2) + Wc * r(3, 0) - T * r(0, 2));
    return q;
}

Eigen::Matrix4cd tripod_integrate(const Eigen::Matrix4cd& rho0, const TripodScheme& s, double t_end, int steps)
{
    require(steps > 0 && t_end >= 0, "tripod_integrate: need positive step count");
    s.validate();
    const double h = t_end / steps;
    Eigen::Matrix4cd r = rho0;
    for (int n = 0; n < steps; ++n) {
        Eigen::Matrix4cd k1 = tripod_obe_rhs(r, s);
        Eigen::Matrix4cd k2 = tripod_obe_rhs(r + 0.5 * h * k1, s);
        Eigen::Matrix4cd k3 = tripod_obe_rhs(r + 0.5 * h * k2, s);
        Eigen::Matrix4cd k4 = tripod_obe_rhs(r + h * k3, s);
        r += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return r;
}

cplx rho10_steady(const TripodScheme& s)
{
    s.validate();
    const double sg = s.sign == GroundSign::consistent ? -1.0 : 1.0;
    const cplx D10 = s.Delta10(), D30c = std::conj(s.Delta30());
    const cplx D12 = sg * s.Delta12(), D13 = sg * s.Delta13(), D23 = sg * s.Delta23();
    const double W2 = std::norm(s.rabi_pump), P2 = std::norm(s.rabi_probe), T2 = std::norm(s.rabi_trigger);

    nonzero(D13, "Delta13");
    cplx a = nonzero(D10 * D12 - W2, "Delta10 Delta12 - |Omega|^2");
    cplx b = nonzero(D30c * D23 - W2, "Delta30* Delta23 - |Omega|^2");
    cplx pre = nonzero(1.0 + 0.25 * (D12 * D23 / (D13 * D13)) * P2 * T2 / (a * b), "1 + cross term");
    cplx den1 = nonzero(D10 * D12 * D13 - D13 * W2 - D12 * T2, "first bracket denominator");
    cplx den2 = nonzero(D30c * D13 * D23 - D13 * W2 - D23 * P2, "second bracket denominator");
    cplx t1 = -0.5 * D12 * D13 / den1;
    cplx t2 = -0.5 * D12 * D13 * D23 * T2 / den2;
    return (t1 + t2) / pre;
}

cplx rho10_frozen_populations(const TripodScheme& s)
{
    s.validate();
    require(std::abs(s.rabi_probe) > 0, "rho10_frozen_populations: Omega_P must be non-zero");
    // unknowns: the twelve off-diagonal elements
    int idx[4][4];
    int n = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            idx[i][j] = i == j ? -1 : n++;
    Eigen::Matrix<cplx, 12, 12> A;
    Eigen::Matrix<cplx, 12, 1> b;
    Eigen::Matrix4cd pops = Eigen::Matrix4cd::Zero();
    pops(1, 1) = pops(3, 3) = 0.5;
    Eigen::Matrix4cd q0 = tripod_obe_rhs(pops, s);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j)
                continue;
            Eigen::Matrix4cd e = Eigen::Matrix4cd::Zero();
            e(i, j) = 1;
            Eigen::Matrix4cd q = tripod_obe_rhs(e, s);
            for (int a = 0; a < 4; ++a)
                for (int c = 0; c < 4; ++c)
                    if (a != c)
                        A(idx[a][c], idx[i][j]) = q(a, c);
        }
    for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c)
            if (a != c)
                b(idx[a][c]) = -q0(a, c);
    Eigen::FullPivLU<Eigen::Matrix<cplx, 12, 12>> lu(A);
    if (lu.rank() < 12)
        throw SingularError("rho10_frozen_populations: coherence equations are singular");
    Eigen::Matrix<cplx, 12, 1> x = lu.solve(b);
    return x(idx[1][0]) / s.rabi_probe;
}

TwoPolaritonField copropagate(const TwoPolaritonField& f, const MixingSchedule& s, double t0, double t1)
{
    require(f.probe.x == f.trigger.x, "copropagate: probe and trigger must share a grid");
    TwoPolaritonField out;
    out.probe = evolve_ideal(f.probe, s, t0, t1);
    out.trigger = evolve_ideal(f.trigger, s, t0, t1);
    out.rho13 = f.rho13;
    return out;
}

ScatteringRun scattering_experiment(const ScatteringConfig& cfg)
{
    const MixingSchedule& s = cfg.schedule;
    require(cfg.theta_mid > s.theta(0) && cfg.theta_mid < phys::pi / 2,
            "scattering_experiment: theta_mid must lie between theta(0) and pi/2");
    auto gauss = [&](double x0) {
        return [x0, w = cfg.width](double x) { return cplx(std::exp(-std::pow((x - x0) / w, 2)), 0); };
    };
    TwoPolaritonField in;
    in.probe = PolaritonField::on_grid(cfg.x_lo, cfg.x_hi, cfg.points, gauss(cfg.probe_center));
    in.trigger = PolaritonField::on_grid(cfg.x_lo, cfg.x_hi, cfg.points, gauss(cfg.trigger_center));

    // first time theta reaches theta_mid
    double lo = 0, hi = 0;
    const double step = 0.5;
    while (s.theta(hi) < cfg.theta_mid) {
        lo = hi;
        hi += step;
        require(hi <= cfg.t_end, "scattering_experiment: theta_mid is never reached");
    }
    auto f = [&](double t) { return s.theta(t) - cfg.theta_mid; };
    auto tol = [](double a, double b) { return std::abs(b - a) < 1e-12; };
    auto root = boost::math::tools::bisect(f, lo, hi, tol);
    double t_mid = 0.5 * (root.first + root.second);

    ScatteringRun run;
    run.times = {0, t_mid, cfg.t_end};
    for (double t : run.times) {
        run.thetas.push_back(s.theta(t));
        run.snapshots.push_back(copropagate(in, s, 0, t));
    }
    run.displacement = displacement(s, 0, cfg.t_end);
    const TwoPolaritonField& out = run.snapshots.back();
    const double h = in.probe.spacing();
    auto corr = [&](const PolaritonField& a, const PolaritonField& b) {
        return std::sqrt(overlap_fidelity(sinc_shift(a.psi, h, run.displacement), b.psi));
    };
    run.correlation_probe = corr(in.probe, out.probe);
    run.correlation_trigger = corr(in.trigger, out.trigger);
    run.norm_drift_probe = std::abs(out.probe.norm2() - in.probe.norm2()) / in.probe.norm2();
    run.norm_drift_trigger = std::abs(out.trigger.norm2() - in.trigger.norm2()) / in.trigger.norm2();
    return run;
}

}  // namespace eit

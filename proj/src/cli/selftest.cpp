#include "eit/cli/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "eit/algebra.hpp"
#include "eit/bloch.hpp"
#include "eit/dispersion.hpp"
#include "eit/fidelity.hpp"
#include "eit/polariton.hpp"
#include "eit/pulse.hpp"
#include "eit/scenarios.hpp"
#include "eit/tripod.hpp"

namespace eit::cli {

namespace {

namespace sc = eit::scenarios;

struct Check {
    std::string name;
    std::string tolerance;
    // k scales the reference constant of the check; 1 unless corrupted
    std::function<double(double k)> value;
    std::function<bool(double)> ok;
};

double speed_of_light(double k)
{
    return std::abs(phys::c - k * 299792458.0);
}

double ideal_eit_null(double k)
{
    SlabMedium m = sc::cold_cloud(Populations(1, 0, 0));
    m.scheme = with_dephasing(m.scheme, 0);
    return std::max(std::abs(m.chi(0).imag()), std::abs(m.intensity_transmission(0) - k));
}

double steady_vs_integration(double k)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0, 1);
    LambdaScheme base = make_scheme_rb87();
    const double g3 = base.gamma3();
    double worst = 0;
    for (int i = 0; i < 5; ++i) {
        LambdaScheme s = with_dephasing(base, 0.05 + 0.4 * u(rng));
        DriveFields f;
        f.rabi_pump = (0.2 + u(rng)) * g3;
        f.rabi_probe = (0.05 + 0.5 * u(rng)) * g3;
        f.detuning_probe = (u(rng) - 0.5) * g3;
        DensityMatrix3 ss = steady_state_full(s, f);
        // run until the slowest generator mode has decayed well below tolerance
        Eigen::ComplexEigenSolver<Eigen::Matrix<cplx, 9, 9>> es(obe_generator(s, f) / g3);
        double slow = 1e9;
        for (int j = 0; j < 9; ++j)
            if (-es.eigenvalues()(j).real() > 1e-9)
                slow = std::min(slow, -es.eigenvalues()(j).real());
        double t_end = 25 / slow / g3;
        Trajectory tr = integrate_obe(ObeState::ground(1), s, f, t_end, 1e-11, {t_end});
        Matrix3c d = tr.states.back().to_matrix() - k * ss.matrix();
        worst = std::max(worst, d.cwiseAbs().maxCoeff());
    }
    return worst;
}

double kramers_kronig(double k)
{
    SlabMedium m = sc::cold_cloud(Populations(0.7, 0.3, 0));
    double g = m.scheme.gamma3();
    return kramers_kronig_error([&](double d) { return k * m.chi(d); }, -3 * g, 3 * g, 0.05 * g) +
           std::abs(k - 1);
}

double storage_fidelity(double k)
{
    StorageRun r = store_release_experiment(StorageConfig{});
    return k * r.shape_fidelity;
}

double algebra_identity(double k)
{
    double worst = 0;
    for (const StructureFunction& f : structure_registry()) {
        OscillatorRep r = build_rep(f, f.row == "v" ? 4 : 6);
        Eigen::MatrixXcd ada = r.adag * r.a;
        for (int n = 0; n < r.dim; ++n)
            worst = std::max(worst, std::abs(ada(n, n) - k * r.phi[n]));
    }
    return worst;
}

double uhlmann_classical(double k)
{
    std::vector<double> p = {0.5, 0.3, 0.2}, q = {0.1, 0.6, 0.3};
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 3), b = a;
    for (int i = 0; i < 3; ++i) {
        a(i, i) = p[i];
        b(i, i) = q[i];
    }
    return std::abs(uhlmann_fidelity(QuantumState::mixed(a), QuantumState::mixed(b)) - k * classical_fidelity(p, q));
}

double tripod_dark(double k)
{
    TripodEigenstates e = tripod_eigenstates(1.0, 0.3, 0.4);
    return std::max(std::abs((e.interaction * e.dark1)(0)), std::abs((e.interaction * e.dark2)(0))) + std::abs(k - 1);
}

double tripod_closed_form(double k)
{
    TripodScheme s;
    s.rabi_pump = 1;
    s.rabi_probe = 1e-3;
    s.rabi_trigger = 1e-3;
    s.delta1 = 0.3;
    s.delta3 = -0.2;
    s.dephasing = {0.5, 0.5, 0.5, 0.01, 0.01, 0.01};
    cplx a = rho10_steady(s), b = rho10_frozen_populations(s);
    return std::abs(a - k * b) / std::abs(b);
}

double atom_loss(double k)
{
    MemoryErrorModel m;
    m.kind = ErrorKind::atom_loss;
    m.atoms = 10;
    m.state = StoredState::fock(2);
    return std::abs(decoherence_fidelity(m).value - k * 0.8);
}

std::vector<Check> checks()
{
    auto below = [](double tol) { return [tol](double v) { return std::isfinite(v) && v <= tol; }; };
    return {
        {"speed of light", "0", speed_of_light, below(0)},
        {"ideal EIT null", "1e-10", ideal_eit_null, below(1e-10)},
        {"steady state vs integration", "1e-6", steady_vs_integration, below(1e-6)},
        {"Kramers-Kronig", "3e-2", kramers_kronig, below(3e-2)},
        {"storage shape fidelity", ">= 0.999", storage_fidelity,
         [](double v) { return v >= 0.999 && v <= 1 + 1e-12; }},
        {"a^dagger a = Phi(N)", "1e-13", algebra_identity, below(1e-13)},
        {"Uhlmann = classical", "1e-10", uhlmann_classical, below(1e-10)},
        {"tripod dark states", "1e-14", tripod_dark, below(1e-14)},
        {"tripod closed form, weak field", "1e-4", tripod_closed_form, below(1e-4)},
        {"atom loss 1 - n/N", "1e-15", atom_loss, below(1e-15)},
    };
}

}  // namespace

std::vector<CheckResult> selftest(const std::string& corrupt)
{
    std::vector<CheckResult> out;
    bool known = corrupt.empty();
    for (const Check& c : checks()) {
        double k = 1;
        if (c.name == corrupt) {
            k = 1 + 1e-3;
            known = true;
        }
        double v;
        try {
            v = c.value(k);
        } catch (const std::exception&) {
            v = std::nan("");
        }
        out.push_back({c.name, c.tolerance, v, c.ok(v)});
    }
    if (!known)
        out.push_back({"corruption hook: unknown check '" + corrupt + "'", "-", std::nan(""), false});
    return out;
}

bool print_selftest(const std::vector<CheckResult>& results, std::ostream& os)
{
    bool all = true;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-34s %-10s %-12s %s\n", "check", "tolerance", "value", "result");
    os << buf;
    for (const CheckResult& r : results) {
        std::snprintf(buf, sizeof buf, "%-34s %-10s %-12.3e %s\n", r.name.c_str(), r.tolerance.c_str(), r.value,
                      r.pass ? "PASS" : "FAIL");
        os << buf;
        all = all && r.pass;
    }
    os << (all ? "all checks passed\n" : "selftest FAILED\n");
    return all;
}

}  // namespace eit::cli

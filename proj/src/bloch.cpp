#include "eit/bloch.hpp"

#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "eit/errors.hpp"

namespace eit {

namespace {

// Coefficients of the rotating-frame equations in internal units (gamma3 = 1).
struct Coeffs {
    double g1, g3, G2;
    double dp, dP, d;
    cplx a;   // (i/2) Omega_p e^{-i phi_p}
    cplx b;   // (i/2) Omega_P e^{-i phi_P}
    cplx bp;  // (i/2) Omega_P e^{+i phi_P}
};

Coeffs make_coeffs(const LambdaScheme& s, const DriveFields& f, double unit)
{
    const cplx I(0, 1);
    Coeffs c;
    c.g1 = s.gamma1() / unit;
    c.g3 = s.gamma3() / unit;
    c.G2 = s.gamma_2_decay / unit;
    c.dp = f.detuning_probe / unit;
    c.dP = f.detuning_pump / unit;
    c.d = f.two_photon_detuning() / unit;
    c.a = 0.5 * I * (f.rabi_probe / unit) * std::exp(-I * f.phase_probe);
    c.b = 0.5 * I * (f.rabi_pump / unit) * std::exp(-I * f.phase_pump);
    c.bp = 0.5 * I * (f.rabi_pump / unit) * std::exp(I * f.phase_pump);
    return c;
}

// rho_dot for a general 3x3 matrix. Upper-triangle equations are the
// conjugates of the lower ones with conjugated coefficients, written out
// explicitly so that the map stays complex-linear.
Matrix3c generator_apply(const Coeffs& c, const Matrix3c& r)
{
    const cplx I(0, 1);
    auto R = [&](int i, int j) { return r(i - 1, j - 1); };
    Matrix3c out;
    cplx r31 = -(c.g1 + c.g3 + I * c.dp) * R(3, 1) + c.b * R(2, 1) - c.a * (R(3, 3) - R(1, 1));
    cplx r13 = -(c.g1 + c.g3 - I * c.dp) * R(1, 3) + std::conj(c.b) * R(1, 2) - std::conj(c.a) * (R(3, 3) - R(1, 1));
    cplx r32 = -(c.g3 + I * c.dP) * R(3, 2) + c.a * R(1, 2) - c.b * (R(3, 3) - R(2, 2));
    cplx r23 = -(c.g3 - I * c.dP) * R(2, 3) + std::conj(c.a) * R(2, 1) - std::conj(c.b) * (R(3, 3) - R(2, 2));
    cplx r21 = -(c.g1 + I * c.d) * R(2, 1) + c.bp * R(3, 1) - c.a * R(2, 3);
    cplx r12 = -(c.g1 - I * c.d) * R(1, 2) + std::conj(c.bp) * R(1, 3) - std::conj(c.a) * R(3, 2);
    cplx r33 = c.a * R(1, 3) + c.b * R(2, 3) + std::conj(c.a) * R(3, 1) + std::conj(c.b) * R(3, 2) - 2 * c.g3 * R(3, 3);
    cplx r22 = -c.b * R(2, 3) - std::conj(c.b) * R(3, 2) + c.G2 * R(3, 3) + 2 * c.g1 * R(1, 1);
    cplx r11 = -r22 - r33;
    out << r11, r12, r13, r21, r22, r23, r31, r32, r33;
    return out;
}

Eigen::Matrix<cplx, 9, 9> build_generator(const Coeffs& c)
{
    Eigen::Matrix<cplx, 9, 9> L;
    for (int k = 0; k < 9; ++k) {
        Matrix3c e = Matrix3c::Zero();
        e(k / 3, k % 3) = 1.0;
        Matrix3c col = generator_apply(c, e);
        for (int j = 0; j < 9; ++j)
            L(j, k) = col(j / 3, j % 3);
    }
    return L;
}

double unit_of(const LambdaScheme& s)
{
    double u = s.gamma3();
    if (u > 0)
        return u;
    u = std::max(s.gamma1(), 1.0);
    return u;
}

}  // namespace

ObeState ObeState::from_matrix(const Matrix3c& m)
{
    ObeState s;
    s.rho31 = m(2, 0);
    s.rho32 = m(2, 1);
    s.rho21 = m(1, 0);
    s.rho33 = m(2, 2);
    s.rho22 = m(1, 1);
    s.rho11 = m(0, 0);
    return s;
}

ObeState ObeState::ground(int level)
{
    require(level >= 1 && level <= 3, "ObeState::ground: level must be 1, 2 or 3");
    ObeState s;
    (level == 1 ? s.rho11 : level == 2 ? s.rho22 : s.rho33) = 1.0;
    return s;
}

Matrix3c ObeState::to_matrix() const
{
    Matrix3c m;
    m << rho11, std::conj(rho21), std::conj(rho31),
         rho21, rho22, std::conj(rho32),
         rho31, rho32, rho33;
    return m;
}

ObeState ObeState::from_array(const std::array<cplx, 6>& a)
{
    return ObeState{a[0], a[1], a[2], a[3], a[4], a[5]};
}

ObeState obe_rhs(const ObeState& s, const LambdaScheme& scheme, const DriveFields& fields)
{
    // Evaluate in rad/s directly (unit = 1).
    Coeffs c = make_coeffs(scheme, fields, 1.0);
    return ObeState::from_matrix(generator_apply(c, s.to_matrix()));
}

Eigen::Matrix<cplx, 9, 9> obe_generator(const LambdaScheme& scheme, const DriveFields& fields)
{
    return build_generator(make_coeffs(scheme, fields, 1.0));
}

Trajectory integrate_obe(const ObeState& initial, const LambdaScheme& scheme, const DriveFields& fields,
                         double t_end, double tol, std::vector<double> sample_times)
{
    namespace odeint = boost::numeric::odeint;
    using state_t = std::array<cplx, 6>;

    require(tol > 1e-14 && tol < 1e-3, "integrate_obe: tol must lie in (1e-14, 1e-3)");
    require(t_end > 0, "integrate_obe: t_end must be positive");
    scheme.validate();
    fields.validate();

    if (sample_times.empty()) {
        for (int k = 0; k <= 100; ++k)
            sample_times.push_back(t_end * k / 100.0);
    }
    require(std::is_sorted(sample_times.begin(), sample_times.end()), "integrate_obe: sample times must ascend");
    require(sample_times.front() >= 0 && sample_times.back() <= t_end * (1 + 1e-12),
            "integrate_obe: sample times must lie in [0, t_end]");
    if (sample_times.front() > 0)
        sample_times.insert(sample_times.begin(), 0.0);

    const double unit = unit_of(scheme);
    const Coeffs c = make_coeffs(scheme, fields, unit);
    std::vector<double> tau(sample_times.size());
    for (size_t k = 0; k < tau.size(); ++k)
        tau[k] = sample_times[k] * unit;

    auto system = [&c](const state_t& x, state_t& dxdt, double) {
        dxdt = ObeState::from_matrix(generator_apply(c, ObeState::from_array(x).to_matrix())).as_array();
    };

    Trajectory out;
    double last_t = 0;
    auto observer = [&](const state_t& x, double t) {
        out.t.push_back(t / unit);
        out.states.push_back(ObeState::from_array(x));
        last_t = t / unit;
    };

    state_t x = initial.as_array();
    auto stepper = odeint::make_dense_output(tol, tol, odeint::runge_kutta_dopri5<state_t>());
    try {
        odeint::integrate_times(stepper, system, x, tau.begin(), tau.end(), 1e-3, observer,
                                odeint::max_step_checker(50000000));
    } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "integrate_obe: step-size control failed after t = " << last_t << " s (" << e.what() << ")";
        throw ConvergenceError(msg.str());
    }
    return out;
}

DensityMatrix3 steady_state_full(const LambdaScheme& scheme, const DriveFields& fields)
{
    scheme.validate();
    fields.validate();
    if (scheme.gamma_1_decay == 0 && scheme.gamma_2_decay == 0 && scheme.gamma_12_decay == 0)
        throw SingularError("steady_state_full: no decay channel, steady state is not unique");

    const double unit = unit_of(scheme);
    const Eigen::Matrix<cplx, 9, 9> L = build_generator(make_coeffs(scheme, fields, unit));
    Eigen::Matrix<cplx, 9, 9> A = L;
    Eigen::Matrix<cplx, 9, 1> rhs = Eigen::Matrix<cplx, 9, 1>::Zero();
    A.row(0).setZero();
    A(0, 0) = A(0, 4) = A(0, 8) = 1.0;
    rhs(0) = 1.0;

    Eigen::FullPivLU<Eigen::Matrix<cplx, 9, 9>> lu(A);
    lu.setThreshold(1e-13);
    if (lu.rank() < 9)
        throw SingularError("steady_state_full: singular system, no unique steady state");
    Eigen::Matrix<cplx, 9, 1> x = lu.solve(rhs);

    Matrix3c rho;
    for (int j = 0; j < 9; ++j)
        rho(j / 3, j % 3) = x(j);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();

    double resid = (L * x).cwiseAbs().maxCoeff();
    if (resid > 1e-10)
        throw ConvergenceError("steady_state_full: residual " + std::to_string(resid) + " above 1e-10");
    return DensityMatrix3(rho);
}

cplx steady_state_unsaturated(const Populations& p, const LambdaScheme& scheme, const DriveFields& f)
{
    const cplx I(0, 1);
    const double g1 = scheme.gamma1(), g3 = scheme.gamma3();
    const double Wp = f.rabi_probe, WP = f.rabi_pump;
    const cplx prefactor = I * Wp * std::exp(-I * f.phase_probe) / (2.0 * (g1 + g3 + I * f.detuning_probe));
    const cplx K = 4.0 * (g3 - I * f.detuning_pump) * (g1 + I * f.two_photon_detuning()) + Wp * Wp;
    const cplx denom = 1.0 + WP * WP * (g3 - I * f.detuning_pump) / ((g1 + g3 + I * f.detuning_probe) * K);
    const cplx brace = (p.n3() - p.n1()) - WP * WP / K * (p.n3() - p.n2());
    return -prefactor / denom * brace;
}

double scaled_density(double wavelength, double number_density, double orientation_factor)
{
    require(wavelength > 0 && number_density >= 0 && orientation_factor > 0, "scaled_density: bad arguments");
    return std::pow(wavelength / (2 * phys::pi), 3) * number_density * orientation_factor;
}

Susceptibility susceptibility(const Populations& p, const LambdaScheme& scheme, const DriveFields& f,
                              double Np)
{
    require(f.rabi_pump >= 0, "susceptibility: negative pump Rabi frequency");
    require(f.detuning_pump == 0, "susceptibility: the pump must be on resonance");
    const cplx I(0, 1);
    const double dp = f.detuning_probe, g1 = scheme.gamma1(), g3 = scheme.gamma3();
    const double half = 0.5 * f.rabi_pump;
    const cplx D = (dp - I * g3) * (dp - I * g1) - half * half;
    const cplx bracket = (dp - I * g1) / D * (p.n1() - p.n3()) - (I / g3) * half * half * (p.n3() - p.n2()) / D;
    return {3 * phys::pi * Np * scheme.gamma_1_decay * bracket, Np, dp};
}

cplx susceptibility_full(const LambdaScheme& scheme, const DriveFields& f, double Np)
{
    require(f.rabi_probe > 0, "susceptibility_full: the probe Rabi frequency must be positive");
    DensityMatrix3 rho = steady_state_full(scheme, f);
    const cplx I(0, 1);
    return 6 * phys::pi * Np * scheme.gamma_1_decay * rho(3, 1) * std::exp(I * f.phase_probe) / f.rabi_probe;
}

}  // namespace eit

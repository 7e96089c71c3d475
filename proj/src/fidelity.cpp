#include "eit/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eit/errors.hpp"

namespace eit {

namespace {

void check_density(const Eigen::MatrixXcd& rho)
{
    require(rho.rows() == rho.cols() && rho.rows() > 0, "QuantumState: density matrix must be square");
    require((rho - rho.adjoint()).cwiseAbs().maxCoeff() <= 1e-10, "QuantumState: density matrix is not Hermitian");
    require(std::abs(rho.trace() - 1.0) <= 1e-10, "QuantumState: trace must be 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() >= -1e-10, "QuantumState: density matrix is not positive");
}

double clip(double x)
{
    return x < 0 ? 0 : x;
}

}  // namespace

QuantumState QuantumState::pure(const Eigen::VectorXcd& psi)
{
    require(psi.size() > 0, "QuantumState: empty vector");
    require(std::abs(psi.norm() - 1) <= 1e-10, "QuantumState: state vector must have unit norm");
    QuantumState s;
    s.pure_ = true;
    s.psi_ = psi;
    s.rho_ = psi * psi.adjoint();
    return s;
}

QuantumState QuantumState::mixed(const Eigen::MatrixXcd& rho)
{
    check_density(rho);
    QuantumState s;
    s.rho_ = 0.5 * (rho + rho.adjoint());
    return s;
}

const Eigen::VectorXcd& QuantumState::vector() const
{
    if (!pure_)
        throw ValidationError("QuantumState: not a pure state");
    return psi_;
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()));
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -1e-12)
            throw ValidationError("psd_sqrt: matrix has a negative eigenvalue " + std::to_string(ev(i)));
        ev(i) = std::sqrt(clip(ev(i)));
    }
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double uhlmann_fidelity(const QuantumState& rho, const QuantumState& sigma)
{
    require(rho.dim() == sigma.dim(), "uhlmann_fidelity: dimension mismatch");
    if (rho.is_pure())
        return pure_state_fidelity(rho.vector(), sigma);
    if (sigma.is_pure())
        return pure_state_fidelity(sigma.vector(), rho);
    Eigen::MatrixXcd s = psd_sqrt(rho.density());
    Eigen::MatrixXcd M = s * sigma.density() * s;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (M + M.adjoint()), Eigen::EigenvaluesOnly);
    double tr = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        tr += std::sqrt(clip(es.eigenvalues()(i)));
    return std::min(1.0, tr * tr);
}

double classical_fidelity(const std::vector<double>& p, const std::vector<double>& q)
{
    require(p.size() == q.size() && !p.empty(), "classical_fidelity: distributions differ in length");
    double sp = 0, sq = 0, acc = 0;
    for (size_t i = 0; i < p.size(); ++i) {
        require(p[i] >= 0 && q[i] >= 0, "classical_fidelity: negative probability");
        sp += p[i];
        sq += q[i];
        acc += std::sqrt(p[i] * q[i]);
    }
    require(std::abs(sp - 1) <= 1e-10 && std::abs(sq - 1) <= 1e-10, "classical_fidelity: probabilities must sum to 1");
    return std::min(1.0, acc * acc);
}

double pure_state_fidelity(const Eigen::VectorXcd& psi, const QuantumState& rho)
{
    require(psi.size() == rho.dim(), "pure_state_fidelity: dimension mismatch");
    require(std::abs(psi.norm() - 1) <= 1e-10, "pure_state_fidelity: state vector must have unit norm");
    double f = psi.dot(rho.density() * psi).real();
    return std::clamp(f, 0.0, 1.0);
}

StoredState StoredState::fock(int n)
{
    require(n >= 0, "StoredState: negative photon number");
    StoredState s;
    s.kind = Kind::fock;
    s.n = n;
    return s;
}

StoredState StoredState::coherent(double alpha_sq)
{
    require(alpha_sq >= 0, "StoredState: |alpha|^2 must be non-negative");
    StoredState s;
    s.kind = Kind::coherent;
    s.alpha_sq = alpha_sq;
    return s;
}

StoredState StoredState::generic(double mean_number, double mean_field_sq)
{
    require(mean_number >= 0 && mean_field_sq >= 0, "StoredState: moments must be non-negative");
    require(mean_field_sq <= mean_number * (1 + 1e-12), "StoredState: |<Psi>|^2 cannot exceed <Psi^dagger Psi>");
    StoredState s;
    s.kind = Kind::generic;
    s.mean_number = mean_number;
    s.mean_field_sq = mean_field_sq;
    return s;
}

double StoredState::mean() const
{
    switch (kind) {
    case Kind::fock:
        return n;
    case Kind::coherent:
        return alpha_sq;
    case Kind::generic:
        return mean_number;
    }
    return 0;
}

double motion_fidelity(int atoms, double D, double t)
{
    require(atoms >= 1, "motion_fidelity: need at least one atom");
    require(D >= 0 && t >= 0, "motion_fidelity: D and t must be non-negative");
    return (1 + (atoms - 1) * std::exp(-D * t)) / atoms;
}

FidelityValue decoherence_fidelity(const MemoryErrorModel& m)
{
    require(m.atoms >= 1, "decoherence_fidelity: need at least one atom");
    const double N = m.atoms;
    const StoredState& s = m.state;
    if (s.kind == StoredState::Kind::fock && s.n > m.atoms)
        throw ValidationError("decoherence_fidelity: n exceeds the number of atoms");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const bool fock = s.kind == StoredState::Kind::fock;
    const bool coherent = s.kind == StoredState::Kind::coherent;

    FidelityValue f{nan, nan, nan, true};
    switch (m.kind) {
    case ErrorKind::spin_flip_asym:
        if (fock) {
            f.leading_order = 1 - (s.n + 1) / N;
            f.exact_ratio = s.n < m.atoms ? (1 - 1 / N) / (1 - s.n / N) : nan;
            f.value = f.leading_order;
        } else if (coherent) {
            f.value = (1 - 1 / N + s.alpha_sq / N) / (1 + s.alpha_sq / N);
            f.leading_order = 1 - 1 / N;
            f.leading_order_only = false;
        } else {
            throw ValidationError("decoherence_fidelity: spin flips are defined for Fock or coherent states");
        }
        break;
    case ErrorKind::spin_flip_sym:
        if (fock)
            f.value = f.leading_order = 1 - (2 * s.n + 1) / N;
        else if (coherent)
            f.value = f.leading_order = 1 - 1 / N;
        else
            throw ValidationError("decoherence_fidelity: spin flips are defined for Fock or coherent states");
        break;
    case ErrorKind::phase_flip:
        f.value = f.leading_order = 1 - 2 * s.mean() / N;
        break;
    case ErrorKind::atom_loss:
        if (fock) {
            f.value = f.leading_order = 1 - s.n / N;
            f.leading_order_only = false;
        } else {
            double mf = coherent ? s.alpha_sq : s.mean_field_sq;
            f.value = f.leading_order = 1 - (s.mean() - mf) / N;
        }
        break;
    case ErrorKind::motion:
        require(fock, "decoherence_fidelity: motion is defined for Fock states");
        if (s.n == 0) {
            f.value = f.leading_order = 1;
            f.leading_order_only = false;
        } else if (s.n == 1) {
            f.value = motion_fidelity(m.atoms, m.diffusion, m.time);
            f.leading_order = std::exp(-m.diffusion * m.time);
            f.leading_order_only = false;
        } else {
            require(m.diffusion >= 0 && m.time >= 0, "decoherence_fidelity: D and t must be non-negative");
            f.value = f.leading_order = std::exp(-s.n * m.diffusion * m.time);
        }
        break;
    }
    // the O(1/N) expansions leave [0, 1] once the excitation number approaches N
    f.value = std::clamp(f.value, 0.0, 1.0);
    return f;
}

}  // namespace eit

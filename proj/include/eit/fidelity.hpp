#pragma once

#include <vector>

#include <Eigen/Dense>

#include "eit/atomcore.hpp"

namespace eit {

class QuantumState {
public:
    static QuantumState pure(const Eigen::VectorXcd& psi);
    static QuantumState mixed(const Eigen::MatrixXcd& rho);

    bool is_pure() const { return pure_; }
    int dim() const { return int(rho_.rows()); }
    const Eigen::MatrixXcd& density() const { return rho_; }
    const Eigen::VectorXcd& vector() const;  // pure states only

private:
    QuantumState() = default;
    bool pure_ = false;
    Eigen::VectorXcd psi_;
    Eigen::MatrixXcd rho_;
};

// Square root of a Hermitian PSD matrix; eigenvalues above -1e-12 are clipped to 0.
Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m);

// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2
double uhlmann_fidelity(const QuantumState& rho, const QuantumState& sigma);
double classical_fidelity(const std::vector<double>& p, const std::vector<double>& q);
double pure_state_fidelity(const Eigen::VectorXcd& psi, const QuantumState& rho);
inline double error_rate(double fidelity) { return 1 - fidelity; }

enum class ErrorKind { spin_flip_asym, spin_flip_sym, phase_flip, atom_loss, motion };

struct StoredState {
    enum class Kind { fock, coherent, generic };
    Kind kind = Kind::fock;
    int n = 0;                  // fock
    double alpha_sq = 0;        // coherent, |alpha|^2
    double mean_number = 0;     // generic, <Psi^dagger Psi>
    double mean_field_sq = 0;   // generic, |<Psi>|^2

    static StoredState fock(int n);
    static StoredState coherent(double alpha_sq);
    static StoredState generic(double mean_number, double mean_field_sq);
    double mean() const;
};

struct MemoryErrorModel {
    ErrorKind kind = ErrorKind::atom_loss;
    int atoms = 1;  // N
    StoredState state;
    double diffusion = 0;  // D, 1/s
    double time = 0;       // t, s
};

struct FidelityValue {
    double value;          // the closed form quoted as the result
    double leading_order;  // 1 - O(1/N) expansion
    double exact_ratio;    // asymmetric flip of a Fock state only: (1 - 1/N)/(1 - n/N); NaN otherwise
    bool leading_order_only;  // true where only the O(1/N) term is known
};

FidelityValue decoherence_fidelity(const MemoryErrorModel& m);

// Single excitation: (1 + (N - 1) e^{-D t}) / N
double motion_fidelity(int atoms, double diffusion, double time);

}  // namespace eit

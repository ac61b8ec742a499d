#pragma once

#include <Eigen/Dense>

#include "sykmagic/fock.hpp"

namespace sykmagic {

// Full dense decomposition, eigenvalues ascending, columns orthonormal.
// `degenerate_ground` is set when the gap above the smallest eigenvalue is
// below 1e-10 (first-column tie-break applies downstream).
struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;
    bool degenerate_ground = false;
};

inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kDegeneracyGap = 1e-10;

EigenDecomposition eig_hermitian(const Eigen::MatrixXcd& h);

// Embeds the lowest eigenvector into the full Fock space.
PureState ground_state(const EigenDecomposition& dec, const SectorBasis& basis);

// |psi(t)> = sum_n c_n e^{-i E_n t} |E_n>, c_n = <E_n|psi0>; exact in the
// eigenbasis, no time-step error.
Eigen::VectorXcd evolve(const EigenDecomposition& dec, const Eigen::VectorXcd& psi0,
                        double t);

}  // namespace sykmagic

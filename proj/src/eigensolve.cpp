#include "sykmagic/eigensolve.hpp"

#include <stdexcept>

namespace sykmagic {

EigenDecomposition eig_hermitian(const Eigen::MatrixXcd& h) {
    if (h.rows() != h.cols())
        throw std::invalid_argument("eig_hermitian: matrix not square");
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > kHermiticityTolerance * scale)
        throw std::invalid_argument("eig_hermitian: input not Hermitian within tolerance");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eig_hermitian: eigensolver failed to converge");

    EigenDecomposition dec;
    dec.eigenvalues = solver.eigenvalues();
    dec.eigenvectors = solver.eigenvectors();
    if (dec.eigenvalues.size() > 1)
        dec.degenerate_ground = (dec.eigenvalues[1] - dec.eigenvalues[0]) < kDegeneracyGap;
    return dec;
}

PureState ground_state(const EigenDecomposition& dec, const SectorBasis& basis) {
    if (dec.eigenvalues.size() == 0)
        throw std::invalid_argument("ground_state: empty decomposition");
    if (static_cast<std::size_t>(dec.eigenvectors.rows()) != basis.size())
        throw std::invalid_argument("ground_state: basis size mismatch");
    return embed_sector_vector(dec.eigenvectors.col(0), basis);
}

Eigen::VectorXcd evolve(const EigenDecomposition& dec, const Eigen::VectorXcd& psi0,
                        double t) {
    if (psi0.size() != dec.eigenvectors.rows())
        throw std::invalid_argument("evolve: dimension mismatch");
    if (t == 0.0) return psi0;
    Eigen::VectorXcd c = dec.eigenvectors.adjoint() * psi0;
    const std::complex<double> mi{0, -1};
    for (Eigen::Index n = 0; n < c.size(); ++n)
        c[n] *= std::exp(mi * dec.eigenvalues[n] * t);
    return dec.eigenvectors * c;
}

}  // namespace sykmagic

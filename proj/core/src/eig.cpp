#include "thermolab/eig.hpp"

#include <complex>
#include <stdexcept>
#include <vector>

#include <lapacke.h>

namespace thermolab {

HermitianEig eigh(const Eigen::MatrixXcd& matrix) {
    const lapack_int n = static_cast<lapack_int>(matrix.rows());
    HermitianEig out;
    out.vectors = matrix;  // zheevd overwrites in place with eigenvectors
    out.values.resize(n);
    if (n == 0) return out;
    lapack_int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, 'V', 'L', n,
        reinterpret_cast<lapack_complex_double*>(out.vectors.data()), n,
        out.values.data());
    if (info != 0) {
        // zheevd can fail to converge on rare inputs; fall back to Eigen's QR
        // based solver rather than aborting.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("Hermitian eigendecomposition failed");
        out.values = es.eigenvalues();
        out.vectors = es.eigenvectors();
    }
    return out;
}

Eigen::VectorXd eigh_values(const Eigen::MatrixXcd& matrix) {
    const lapack_int n = static_cast<lapack_int>(matrix.rows());
    Eigen::VectorXd values(n);
    if (n == 0) return values;
    Eigen::MatrixXcd work = matrix;
    lapack_int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, 'N', 'L', n,
        reinterpret_cast<lapack_complex_double*>(work.data()), n, values.data());
    if (info != 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix,
                                                           Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("Hermitian eigendecomposition failed");
        values = es.eigenvalues();
    }
    return values;
}

}  // namespace thermolab

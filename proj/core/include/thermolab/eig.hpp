#pragma once

#include <Eigen/Dense>

namespace thermolab {

// Eigendecomposition of a Hermitian matrix, ascending eigenvalues.
// Backed by LAPACKE zheevd with an Eigen fallback; both fill `values`
// ascending and `vectors` column-wise.
struct HermitianEig {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
};

HermitianEig eigh(const Eigen::MatrixXcd& matrix);

// Eigenvalues only (cheaper when vectors are not needed).
Eigen::VectorXd eigh_values(const Eigen::MatrixXcd& matrix);

}  // namespace thermolab

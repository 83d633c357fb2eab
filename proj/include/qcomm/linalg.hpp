#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "qcomm/errors.hpp"

namespace qcomm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Hermitian eigendecomposition A = V diag(eigenvalues) V^*.
struct HermitianEig {
    RealVector eigenvalues; // ascending
    Matrix vectors;         // unitary, eigenvectors in columns
    double residual;        // ||A V - V Lambda||
};

/// General eigendecomposition A = V diag(eigenvalues) V^{-1}.
struct GeneralEig {
    Vector eigenvalues;
    Matrix vectors;
    double conditioning; // spectral condition number of `vectors`
};

enum class OperatorClassTag {
    Hermitian,
    Normal,
    DiagonalizableGeneral,
    GeneralSquare,
};

const char* to_string(OperatorClassTag tag);

/// Largest singular value. Computed from a full SVD for determinism.
double spectral_norm(const Matrix& m);

/// Spectral condition number sigma_max / sigma_min; +inf when singular.
double condition_number(const Matrix& m);

double default_class_tol(const Matrix& m); // 1e-10 * (1 + ||m||)

/// Eigendecomposition of a Hermitian matrix. `class_tol < 0` means the
/// default tolerance. Throws ClassViolationError when ||m - m^*|| exceeds it.
HermitianEig hermitian_eig(const Matrix& m, double class_tol = -1.0);

/// Eigendecomposition of a general square matrix. Throws
/// NonDiagonalizableError when the eigenvector matrix conditioning exceeds
/// `cond_threshold` (the matrix is defective to working precision).
GeneralEig general_eig(const Matrix& m, double cond_threshold = 1e8);

/// Solve a x = b. Throws SingularMatrixError when cond(a) > cond_threshold.
Matrix solve(const Matrix& a, const Matrix& b, double cond_threshold = 1e14);

/// Strongest applicable tag, in order Hermitian > Normal >
/// DiagonalizableGeneral > GeneralSquare. `tol` is an absolute threshold on
/// the defect norms ||A - A^*|| and ||A A^* - A^* A||.
OperatorClassTag classify(const Matrix& m, double tol);
OperatorClassTag classify(const Matrix& m);

Matrix identity_matrix(Index n);

void require_finite(const Matrix& m);
void require_square(const Matrix& m);
void require_nonempty(const Matrix& m);

} // namespace qcomm

#include "qcomm/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <sstream>

namespace qcomm {

const char* to_string(OperatorClassTag tag) {
    switch (tag) {
    case OperatorClassTag::Hermitian: return "Hermitian";
    case OperatorClassTag::Normal: return "Normal";
    case OperatorClassTag::DiagonalizableGeneral: return "DiagonalizableGeneral";
    case OperatorClassTag::GeneralSquare: return "GeneralSquare";
    }
    return "Unknown";
}

void require_finite(const Matrix& m) {
    if (!m.allFinite())
        throw InputError("matrix has non-finite entries");
}

void require_square(const Matrix& m) {
    if (m.rows() != m.cols()) {
        std::ostringstream os;
        os << "expected square matrix, got " << m.rows() << "x" << m.cols();
        throw ShapeError(os.str());
    }
}

void require_nonempty(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0)
        throw ShapeError("matrix is empty");
}

Matrix identity_matrix(Index n) { return Matrix::Identity(n, n); }

double spectral_norm(const Matrix& m) {
    require_nonempty(m);
    require_finite(m);
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

double condition_number(const Matrix& m) {
    require_nonempty(m);
    require_finite(m);
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    double smax = sv(0);
    double smin = sv(sv.size() - 1);
    if (smin <= 0.0 || smax <= 0.0)
        return std::numeric_limits<double>::infinity();
    return smax / smin;
}

double default_class_tol(const Matrix& m) { return 1e-10 * (1.0 + spectral_norm(m)); }

HermitianEig hermitian_eig(const Matrix& m, double class_tol) {
    require_square(m);
    require_nonempty(m);
    require_finite(m);
    if (class_tol < 0.0)
        class_tol = default_class_tol(m);
    double defect = spectral_norm(m - m.adjoint());
    if (defect > class_tol) {
        std::ostringstream os;
        os << "matrix is not Hermitian: ||A - A*|| = " << defect << " > " << class_tol;
        throw ClassViolationError(os.str());
    }
    Matrix symmetrized = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized);
    if (solver.info() != Eigen::Success)
        throw Error("Hermitian eigensolver did not converge");
    HermitianEig result;
    result.eigenvalues = solver.eigenvalues();
    result.vectors = solver.eigenvectors();
    Matrix lambda = result.eigenvalues.cast<Complex>().asDiagonal();
    result.residual = spectral_norm(m * result.vectors - result.vectors * lambda);
    return result;
}

GeneralEig general_eig(const Matrix& m, double cond_threshold) {
    require_square(m);
    require_nonempty(m);
    require_finite(m);
    Eigen::ComplexEigenSolver<Matrix> solver(m, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw Error("general eigensolver did not converge");
    GeneralEig result;
    result.eigenvalues = solver.eigenvalues();
    result.vectors = solver.eigenvectors();
    result.conditioning = condition_number(result.vectors);
    if (!std::isfinite(result.conditioning) || result.conditioning > cond_threshold) {
        std::ostringstream os;
        os << "matrix is defective to working precision: eigenvector conditioning "
           << result.conditioning << " > " << cond_threshold;
        throw NonDiagonalizableError(os.str());
    }
    return result;
}

Matrix solve(const Matrix& a, const Matrix& b, double cond_threshold) {
    require_square(a);
    require_nonempty(a);
    require_finite(a);
    require_finite(b);
    if (b.rows() != a.rows()) {
        std::ostringstream os;
        os << "right-hand side has " << b.rows() << " rows, expected " << a.rows();
        throw ShapeError(os.str());
    }
    double cond = condition_number(a);
    if (!std::isfinite(cond) || cond > cond_threshold) {
        std::ostringstream os;
        os << "matrix is singular to working precision (condition " << cond << ")";
        throw SingularMatrixError(os.str());
    }
    return a.fullPivLu().solve(b);
}

OperatorClassTag classify(const Matrix& m, double tol) {
    require_square(m);
    require_nonempty(m);
    require_finite(m);
    if (spectral_norm(m - m.adjoint()) <= tol)
        return OperatorClassTag::Hermitian;
    if (spectral_norm(m * m.adjoint() - m.adjoint() * m) <= tol)
        return OperatorClassTag::Normal;
    try {
        general_eig(m);
        return OperatorClassTag::DiagonalizableGeneral;
    } catch (const NonDiagonalizableError&) {
        return OperatorClassTag::GeneralSquare;
    }
}

OperatorClassTag classify(const Matrix& m) { return classify(m, default_class_tol(m)); }

} // namespace qcomm

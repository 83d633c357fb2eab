#include "qcomm/ensemble.hpp"

#include <Eigen/QR>
#include <cmath>

namespace qcomm {

const char* to_string(Ensemble ensemble) {
    switch (ensemble) {
    case Ensemble::HermitianGaussian: return "HermitianGaussian";
    case Ensemble::NormalRandom: return "NormalRandom";
    case Ensemble::DiagonalizableRandom: return "DiagonalizableRandom";
    case Ensemble::CommutingDiagonalPair: return "CommutingDiagonalPair";
    }
    return "Unknown";
}

Ensemble parse_ensemble(const std::string& name) {
    if (name == "HermitianGaussian")
        return Ensemble::HermitianGaussian;
    if (name == "NormalRandom")
        return Ensemble::NormalRandom;
    if (name == "DiagonalizableRandom")
        return Ensemble::DiagonalizableRandom;
    if (name == "CommutingDiagonalPair")
        return Ensemble::CommutingDiagonalPair;
    throw ConfigError("unknown ensemble '" + name + "'");
}

Matrix ginibre(Index rows, Index cols, TrialRng& rng) {
    Matrix g(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            g(i, j) = rng.complex_normal();
    return g;
}

Matrix random_unitary(Index dim, TrialRng& rng) {
    Eigen::HouseholderQR<Matrix> qr(ginibre(dim, dim, rng));
    return qr.householderQ();
}

Matrix random_contraction(Index rows, Index cols, TrialRng& rng) {
    Matrix g = ginibre(rows, cols, rng);
    double norm = spectral_norm(g);
    if (norm > 0.0)
        g /= norm;
    return g;
}

Vector random_vector(Index dim, TrialRng& rng) {
    Vector v(dim);
    for (Index i = 0; i < dim; ++i)
        v(i) = rng.complex_normal();
    return v;
}

namespace {

constexpr int kResampleBudget = 100;

Vector complex_diagonal(Index dim, TrialRng& rng) {
    Vector d(dim);
    for (Index i = 0; i < dim; ++i)
        d(i) = rng.complex_normal();
    return d;
}

} // namespace

Matrix generate(Ensemble ensemble, Index dim, TrialRng& rng) {
    switch (ensemble) {
    case Ensemble::HermitianGaussian: {
        Matrix g = ginibre(dim, dim, rng);
        Matrix a = 0.5 * (g + g.adjoint());
        double norm = spectral_norm(a);
        if (norm > 0.0)
            a /= norm;
        return a;
    }
    case Ensemble::NormalRandom: {
        Matrix u = random_unitary(dim, rng);
        Vector lambda = complex_diagonal(dim, rng);
        return u * lambda.asDiagonal() * u.adjoint();
    }
    case Ensemble::DiagonalizableRandom: {
        for (int attempt = 0; attempt < kResampleBudget; ++attempt) {
            Matrix v = ginibre(dim, dim, rng);
            double cond = condition_number(v);
            if (!std::isfinite(cond) || cond > 100.0)
                continue;
            Vector lambda = complex_diagonal(dim, rng);
            Matrix scaled = v * lambda.asDiagonal();
            return v.transpose().fullPivLu().solve(scaled.transpose()).transpose();
        }
        throw GenerationError("no eigenvector matrix with conditioning <= 100 in 100 draws");
    }
    case Ensemble::CommutingDiagonalPair:
        throw ConfigError("CommutingDiagonalPair is a pair ensemble; use generate_pair");
    }
    throw ConfigError("unknown ensemble");
}

std::pair<Matrix, Matrix> generate_pair(Ensemble ensemble, Index dim1, Index dim2,
                                        TrialRng& rng) {
    if (ensemble == Ensemble::CommutingDiagonalPair) {
        if (dim1 != dim2)
            throw ConfigError("CommutingDiagonalPair needs equal dimensions");
        Vector d1(dim1), d2(dim1);
        for (Index i = 0; i < dim1; ++i) {
            int attempt = 0;
            for (;; ++attempt) {
                if (attempt >= kResampleBudget)
                    throw GenerationError("diagonal pair separation >= 0.1 not met in 100 draws");
                Complex z1 = rng.complex_normal();
                Complex z2 = rng.complex_normal();
                if (std::abs(z1 - z2) >= 0.1) {
                    d1(i) = z1;
                    d2(i) = z2;
                    break;
                }
            }
        }
        return {Matrix(d1.asDiagonal()), Matrix(d2.asDiagonal())};
    }
    Matrix first = generate(ensemble, dim1, rng);
    Matrix second = generate(ensemble, dim2, rng);
    return {std::move(first), std::move(second)};
}

} // namespace qcomm

#pragma once

#include <string>
#include <utility>

#include "qcomm/linalg.hpp"
#include "qcomm/rng.hpp"

namespace qcomm {

enum class Ensemble {
    HermitianGaussian,
    NormalRandom,
    DiagonalizableRandom,
    CommutingDiagonalPair,
};

const char* to_string(Ensemble ensemble);
Ensemble parse_ensemble(const std::string& name);

/// i.i.d. complex gaussian entries, N(0,1) real and imaginary parts.
Matrix ginibre(Index rows, Index cols, TrialRng& rng);

/// Q factor of a Ginibre matrix.
Matrix random_unitary(Index dim, TrialRng& rng);

/// Ginibre scaled to unit spectral norm; used for the coupling operator S.
Matrix random_contraction(Index rows, Index cols, TrialRng& rng);

Vector random_vector(Index dim, TrialRng& rng);

/// One matrix from a single-matrix ensemble. HermitianGaussian is (G+G^*)/2
/// normalized to unit spectral norm; NormalRandom is U Lambda U^* with U from
/// QR of a Ginibre matrix; DiagonalizableRandom is V Lambda V^{-1} with
/// cond(V) <= 100 enforced by resampling (GenerationError after 100 draws).
Matrix generate(Ensemble ensemble, Index dim, TrialRng& rng);

/// A pair of matrices. CommutingDiagonalPair draws diagonal pairs whose
/// corresponding entries are separated by at least 0.1; other ensembles give
/// two independent draws.
std::pair<Matrix, Matrix> generate_pair(Ensemble ensemble, Index dim1, Index dim2,
                                        TrialRng& rng);

} // namespace qcomm

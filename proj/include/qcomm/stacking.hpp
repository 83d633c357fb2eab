#pragma once

#include "qcomm/linalg.hpp"

namespace qcomm {

/// Dimensions of the two summands of a stacked space X1 (+) X2.
struct BlockSpec {
    Index top_dim;
    Index bottom_dim;
};

/// Block-diagonal matrix [[a1, 0], [0, a2]].
Matrix direct_sum(const Matrix& a1, const Matrix& a2);

/// Square matrix [[0, r], [0, 0]] of side spec.top_dim + spec.bottom_dim.
Matrix embed_upper_right(const Matrix& r, const BlockSpec& spec);

/// Convenience overload: the block spec is read off r itself.
Matrix embed_upper_right(const Matrix& r);

/// Unipotent corner matrix [[I, scale*s], [0, I]]. Its inverse is
/// [[I, -scale*s], [0, I]]; the product of the two is checked against the
/// identity to 1e-13 before returning.
Matrix corner_q(const Matrix& s, Complex scale);

/// Measured residuals of the stacked-norm conditions: (i) embedding a vector
/// of X1 into X1 (+) X2 preserves its norm, (ii) the norm of the X2 component
/// never exceeds the stacked norm, (iii) the corner embedding of an operator
/// preserves the operator norm.
struct SpaceStackingCheck {
    double left_embedding_residual; // | ||(x1, 0)|| - ||x1|| |
    double projection_margin;       // ||(x1, x2)|| - ||x2||, expected >= 0
    double corner_norm_residual;    // | ||embed(r)|| - ||r|| | / (1 + ||r||)

    bool pass(double tol = 1e-12) const {
        return left_embedding_residual <= tol && projection_margin >= -tol &&
               corner_norm_residual <= tol;
    }
};

SpaceStackingCheck verify_space_stacking(const Matrix& r, const Vector& x1, const Vector& x2);

} // namespace qcomm

#include "qcomm/stacking.hpp"

#include <cmath>
#include <sstream>

namespace qcomm {

Matrix direct_sum(const Matrix& a1, const Matrix& a2) {
    require_square(a1);
    require_square(a2);
    require_finite(a1);
    require_finite(a2);
    Index n1 = a1.rows();
    Index n2 = a2.rows();
    Matrix out = Matrix::Zero(n1 + n2, n1 + n2);
    out.topLeftCorner(n1, n1) = a1;
    out.bottomRightCorner(n2, n2) = a2;
    return out;
}

Matrix embed_upper_right(const Matrix& r, const BlockSpec& spec) {
    require_finite(r);
    if (r.rows() != spec.top_dim || r.cols() != spec.bottom_dim) {
        std::ostringstream os;
        os << "operator is " << r.rows() << "x" << r.cols() << ", block spec wants "
           << spec.top_dim << "x" << spec.bottom_dim;
        throw ShapeError(os.str());
    }
    Index n = spec.top_dim + spec.bottom_dim;
    Matrix out = Matrix::Zero(n, n);
    out.topRightCorner(spec.top_dim, spec.bottom_dim) = r;
    return out;
}

Matrix embed_upper_right(const Matrix& r) {
    return embed_upper_right(r, BlockSpec{r.rows(), r.cols()});
}

Matrix corner_q(const Matrix& s, Complex scale) {
    require_finite(s);
    require_nonempty(s);
    Index n1 = s.rows();
    Index n2 = s.cols();
    Matrix corner = scale * s;
    Matrix q = Matrix::Identity(n1 + n2, n1 + n2);
    q.topRightCorner(n1, n2) = corner;
    Matrix q_inv = Matrix::Identity(n1 + n2, n1 + n2);
    q_inv.topRightCorner(n1, n2) = -corner;
    double inv_residual = spectral_norm(q * q_inv - Matrix::Identity(n1 + n2, n1 + n2));
    if (inv_residual > 1e-13)
        throw Error("unipotent corner inverse check failed"); // unreachable for finite input
    return q;
}

SpaceStackingCheck verify_space_stacking(const Matrix& r, const Vector& x1, const Vector& x2) {
    if (r.rows() != x1.size() || r.cols() != x2.size())
        throw ShapeError("vector dimensions do not match the operator's block spec");
    SpaceStackingCheck check{};

    Vector stacked_left(x1.size() + x2.size());
    stacked_left << x1, Vector::Zero(x2.size());
    check.left_embedding_residual = std::abs(stacked_left.norm() - x1.norm());

    Vector stacked_full(x1.size() + x2.size());
    stacked_full << x1, x2;
    check.projection_margin = stacked_full.norm() - x2.norm();

    check.corner_norm_residual =
        std::abs(spectral_norm(embed_upper_right(r)) - spectral_norm(r)) /
        (1.0 + spectral_norm(r));
    return check;
}

} // namespace qcomm

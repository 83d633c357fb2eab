#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qcomm/linalg.hpp"

namespace qcomm {

/// Polynomial with coefficients in ascending degree order. Trailing zero
/// coefficients are stripped at construction so the leading coefficient of
/// the stated degree is nonzero (constants are kept as a single entry).
struct Polynomial {
    std::vector<Complex> coefficients;
};

enum class Builtin { Identity, Exp, Sin, Sqrt, Abs };

/// z -> slope * z + offset
struct Affine {
    Complex slope;
    Complex offset;
};

/// A scalar function from the catalog, applied to matrices through the
/// functional calculus. The domain rule is implied by the kind: sqrt wants
/// spectrum in [0, inf), abs wants a real spectrum, everything else is
/// entire.
struct ScalarFunction {
    std::string name;
    std::variant<Polynomial, Builtin, Affine> kind;

    bool is_polynomial_form() const; // Polynomial, Identity, or Affine
    std::vector<Complex> polynomial_coefficients() const;
    bool requires_real_spectrum() const;
    bool requires_nonnegative_spectrum() const;
};

ScalarFunction make_polynomial(std::string name, std::vector<Complex> coefficients);
ScalarFunction make_builtin(Builtin builtin);
ScalarFunction make_affine(Complex slope, Complex offset);

enum class CalculusPath { HermitianEigPath, DiagonalizablePath, PolynomialHornerPath };

const char* to_string(CalculusPath path);

/// Pointwise evaluation. `domain_slack` is the absolute band around the
/// domain boundary inside which values are accepted and clamped, so that
/// round-off in computed eigenvalues does not trigger spurious domain errors.
Complex eval_scalar(const ScalarFunction& f, Complex z, double domain_slack = 1e-12);

/// f(a) through the requested path. HermitianEigPath gives V f(Lambda) V^*,
/// DiagonalizablePath gives V f(Lambda) V^{-1}, PolynomialHornerPath runs
/// Horner's scheme in the matrix and is valid for any square input.
Matrix apply_function(const ScalarFunction& f, const Matrix& a, CalculusPath path);

/// Auto-select a path: polynomial-form functions go through Horner, Hermitian
/// matrices through the Hermitian path, everything else through the general
/// diagonalization.
CalculusPath resolve_path(const ScalarFunction& f, const Matrix& a);

Matrix apply_function(const ScalarFunction& f, const Matrix& a);

/// f(diag(a1, a2)) evaluated on the stacked matrix. The block-diagonal law
/// says this equals diag(f(a1), f(a2)); computing it on the stacked matrix is
/// exactly what lets the tests check that law instead of assuming it.
Matrix apply_block_diagonal(const ScalarFunction& f, const Matrix& a1, const Matrix& a2,
                            CalculusPath path);

/// Fixed catalog names plus the parametric forms "poly:c0,c1,..." and
/// "affine:m,f0" with complex parameters like 1.5, -2i, 1+0.5i.
const std::vector<std::string>& catalog_names();
ScalarFunction catalog_lookup(const std::string& name);

Complex parse_complex(const std::string& text);

} // namespace qcomm

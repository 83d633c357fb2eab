#include "qcomm/funcalc.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace qcomm {

namespace {

std::vector<Complex> strip_trailing_zeros(std::vector<Complex> coeffs) {
    while (coeffs.size() > 1 && coeffs.back() == Complex(0.0, 0.0))
        coeffs.pop_back();
    return coeffs;
}

std::string format_complex(Complex z) {
    std::ostringstream os;
    os << z.real();
    if (z.imag() != 0.0)
        os << (z.imag() > 0 ? "+" : "") << z.imag() << "i";
    return os.str();
}

} // namespace

ScalarFunction make_polynomial(std::string name, std::vector<Complex> coefficients) {
    if (coefficients.empty())
        throw InputError("polynomial needs at least one coefficient");
    return ScalarFunction{std::move(name), Polynomial{strip_trailing_zeros(std::move(coefficients))}};
}

ScalarFunction make_builtin(Builtin builtin) {
    switch (builtin) {
    case Builtin::Identity: return {"identity", builtin};
    case Builtin::Exp: return {"exp", builtin};
    case Builtin::Sin: return {"sin", builtin};
    case Builtin::Sqrt: return {"sqrt", builtin};
    case Builtin::Abs: return {"abs", builtin};
    }
    throw Error("unknown builtin");
}

ScalarFunction make_affine(Complex slope, Complex offset) {
    std::string name = "affine:" + format_complex(slope) + "," + format_complex(offset);
    return ScalarFunction{std::move(name), Affine{slope, offset}};
}

bool ScalarFunction::is_polynomial_form() const {
    if (std::holds_alternative<Polynomial>(kind) || std::holds_alternative<Affine>(kind))
        return true;
    if (const auto* b = std::get_if<Builtin>(&kind))
        return *b == Builtin::Identity;
    return false;
}

std::vector<Complex> ScalarFunction::polynomial_coefficients() const {
    if (const auto* p = std::get_if<Polynomial>(&kind))
        return p->coefficients;
    if (const auto* a = std::get_if<Affine>(&kind))
        return strip_trailing_zeros({a->offset, a->slope});
    if (const auto* b = std::get_if<Builtin>(&kind); b && *b == Builtin::Identity)
        return {Complex(0.0), Complex(1.0)};
    throw UnsupportedFunctionError("function '" + name + "' has no polynomial form");
}

bool ScalarFunction::requires_real_spectrum() const {
    if (const auto* b = std::get_if<Builtin>(&kind))
        return *b == Builtin::Sqrt || *b == Builtin::Abs;
    return false;
}

bool ScalarFunction::requires_nonnegative_spectrum() const {
    if (const auto* b = std::get_if<Builtin>(&kind))
        return *b == Builtin::Sqrt;
    return false;
}

const char* to_string(CalculusPath path) {
    switch (path) {
    case CalculusPath::HermitianEigPath: return "HermitianEigPath";
    case CalculusPath::DiagonalizablePath: return "DiagonalizablePath";
    case CalculusPath::PolynomialHornerPath: return "PolynomialHornerPath";
    }
    return "Unknown";
}

Complex eval_scalar(const ScalarFunction& f, Complex z, double domain_slack) {
    if (f.requires_real_spectrum() && std::abs(z.imag()) > domain_slack) {
        std::ostringstream os;
        os << f.name << " is defined on real values only, got imaginary part " << z.imag();
        throw DomainError(os.str());
    }
    if (const auto* b = std::get_if<Builtin>(&f.kind)) {
        switch (*b) {
        case Builtin::Identity: return z;
        case Builtin::Exp: return std::exp(z);
        case Builtin::Sin: return std::sin(z);
        case Builtin::Sqrt: {
            double x = z.real();
            if (x < -domain_slack) {
                std::ostringstream os;
                os << "sqrt of negative value " << x;
                throw DomainError(os.str());
            }
            return Complex(std::sqrt(std::max(x, 0.0)), 0.0);
        }
        case Builtin::Abs: return Complex(std::abs(z.real()), 0.0);
        }
    }
    if (const auto* a = std::get_if<Affine>(&f.kind))
        return a->slope * z + a->offset;
    const auto& coeffs = std::get<Polynomial>(f.kind).coefficients;
    Complex acc = coeffs.back();
    for (std::size_t k = coeffs.size() - 1; k-- > 0;)
        acc = acc * z + coeffs[k];
    return acc;
}

namespace {

// Domain slack scales with the spectral radius so large matrices do not get
// spurious rejections from eigenvalue round-off.
double spectrum_slack(double spectral_radius) { return 1e-12 * (1.0 + spectral_radius); }

Matrix horner(const std::vector<Complex>& coeffs, const Matrix& a) {
    Index n = a.rows();
    Matrix acc = coeffs.back() * Matrix::Identity(n, n);
    for (std::size_t k = coeffs.size() - 1; k-- > 0;)
        acc = acc * a + coeffs[k] * Matrix::Identity(n, n);
    return acc;
}

} // namespace

Matrix apply_function(const ScalarFunction& f, const Matrix& a, CalculusPath path) {
    require_square(a);
    require_nonempty(a);
    require_finite(a);
    switch (path) {
    case CalculusPath::PolynomialHornerPath: {
        if (!f.is_polynomial_form())
            throw PathError("PolynomialHornerPath requires a polynomial-form function, got '" +
                            f.name + "'");
        return horner(f.polynomial_coefficients(), a);
    }
    case CalculusPath::HermitianEigPath: {
        HermitianEig eig;
        try {
            eig = hermitian_eig(a);
        } catch (const ClassViolationError& e) {
            throw PathError(std::string("HermitianEigPath prerequisite failed: ") + e.what());
        }
        double slack = spectrum_slack(eig.eigenvalues.cwiseAbs().maxCoeff());
        Vector fvals(eig.eigenvalues.size());
        for (Index i = 0; i < eig.eigenvalues.size(); ++i)
            fvals(i) = eval_scalar(f, Complex(eig.eigenvalues(i), 0.0), slack);
        return eig.vectors * fvals.asDiagonal() * eig.vectors.adjoint();
    }
    case CalculusPath::DiagonalizablePath: {
        GeneralEig eig;
        try {
            eig = general_eig(a);
        } catch (const NonDiagonalizableError& e) {
            throw PathError(std::string("DiagonalizablePath prerequisite failed: ") + e.what());
        }
        double slack = spectrum_slack(eig.eigenvalues.cwiseAbs().maxCoeff());
        Vector fvals(eig.eigenvalues.size());
        for (Index i = 0; i < eig.eigenvalues.size(); ++i)
            fvals(i) = eval_scalar(f, eig.eigenvalues(i), slack);
        Matrix scaled = eig.vectors * fvals.asDiagonal();
        // scaled * V^{-1}, done as a transposed solve to avoid forming V^{-1}
        return eig.vectors.transpose().fullPivLu().solve(scaled.transpose()).transpose();
    }
    }
    throw Error("unknown calculus path");
}

CalculusPath resolve_path(const ScalarFunction& f, const Matrix& a) {
    if (f.is_polynomial_form())
        return CalculusPath::PolynomialHornerPath;
    if (spectral_norm(a - a.adjoint()) <= default_class_tol(a))
        return CalculusPath::HermitianEigPath;
    return CalculusPath::DiagonalizablePath;
}

Matrix apply_function(const ScalarFunction& f, const Matrix& a) {
    return apply_function(f, a, resolve_path(f, a));
}

Matrix apply_block_diagonal(const ScalarFunction& f, const Matrix& a1, const Matrix& a2,
                            CalculusPath path) {
    Matrix stacked = Matrix::Zero(a1.rows() + a2.rows(), a1.cols() + a2.cols());
    require_square(a1);
    require_square(a2);
    stacked.topLeftCorner(a1.rows(), a1.cols()) = a1;
    stacked.bottomRightCorner(a2.rows(), a2.cols()) = a2;
    return apply_function(f, stacked, path);
}

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = {"identity", "exp", "sin", "sqrt",
                                                   "abs",      "x^2", "3x^2+x"};
    return names;
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    parts.push_back(current);
    return parts;
}

} // namespace

Complex parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        throw ConfigError("empty complex literal");

    // Split at the sign that separates real and imaginary parts; a sign at
    // position 0 or right after an exponent marker does not count.
    std::size_t sep = std::string::npos;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E')
            sep = i; // keep the last one so "1e-3-2i" splits correctly
    }

    auto parse_real = [&](const std::string& part) {
        if (part.empty())
            throw ConfigError("malformed complex literal '" + text + "'");
        std::size_t consumed = 0;
        double value = 0.0;
        try {
            value = std::stod(part, &consumed);
        } catch (const std::exception&) {
            throw ConfigError("malformed complex literal '" + text + "'");
        }
        if (consumed != part.size())
            throw ConfigError("malformed complex literal '" + text + "'");
        return value;
    };
    auto parse_imag_coeff = [&](std::string part) {
        // part ends with 'i'; "i", "+i", "-i" mean coefficient 1 or -1
        part.pop_back();
        if (part.empty() || part == "+")
            return 1.0;
        if (part == "-")
            return -1.0;
        return parse_real(part);
    };

    bool has_i = s.back() == 'i' || s.back() == 'j';
    if (has_i && s.back() == 'j')
        s.back() = 'i';
    if (sep == std::string::npos) {
        if (has_i)
            return Complex(0.0, parse_imag_coeff(s));
        return Complex(parse_real(s), 0.0);
    }
    if (!has_i)
        throw ConfigError("malformed complex literal '" + text + "'");
    return Complex(parse_real(s.substr(0, sep)), parse_imag_coeff(s.substr(sep)));
}

ScalarFunction catalog_lookup(const std::string& name) {
    if (name == "identity")
        return make_builtin(Builtin::Identity);
    if (name == "exp")
        return make_builtin(Builtin::Exp);
    if (name == "sin")
        return make_builtin(Builtin::Sin);
    if (name == "sqrt")
        return make_builtin(Builtin::Sqrt);
    if (name == "abs")
        return make_builtin(Builtin::Abs);
    if (name == "x^2")
        return make_polynomial("x^2", {Complex(0.0), Complex(0.0), Complex(1.0)});
    if (name == "3x^2+x")
        return make_polynomial("3x^2+x", {Complex(0.0), Complex(1.0), Complex(3.0)});
    if (name.rfind("poly:", 0) == 0) {
        std::vector<Complex> coeffs;
        for (const auto& part : split(name.substr(5), ','))
            coeffs.push_back(parse_complex(part));
        auto f = make_polynomial(name, std::move(coeffs));
        return f;
    }
    if (name.rfind("affine:", 0) == 0) {
        auto parts = split(name.substr(7), ',');
        if (parts.size() != 2)
            throw ConfigError("affine form wants two parameters, got '" + name + "'");
        auto f = make_affine(parse_complex(parts[0]), parse_complex(parts[1]));
        f.name = name;
        return f;
    }
    throw ConfigError("unknown function '" + name + "'");
}

} // namespace qcomm

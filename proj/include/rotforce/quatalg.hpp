#pragma once

#include "rotforce/angle.hpp"
#include "rotforce/moebius.hpp"
#include "rotforce/rational.hpp"

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rotforce::quat {

/// Rational polynomial, coefficients from low to high degree, no trailing zeros.
using Poly = std::vector<Rational>;

/// Parses a polynomial in `var` with rational coefficients, e.g. "3/2*t^2 - t + 1"
/// or "t/2". Throws SyntaxError (column relative to `text`, line as given).
Poly parse_poly(std::string_view text, char var, int line = 1);

std::string poly_to_string(const Poly& p, char var);

/// Isolating interval (lo, hi] of a simple real root; lo == hi for a rational root.
struct RootInterval {
    Rational lo;
    Rational hi;
};

/// Element of F = Q[t]/(minpoly), as its residue coefficients (length = degree).
struct FieldElem {
    std::vector<Rational> c;

    friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

/// Largest supported degree of a minimal polynomial.
inline constexpr int kMaxFieldDegree = 4;

/// Totally real number field with certified real embeddings in ascending order.
class NumberField {
public:
    /// Monic integer minimal polynomial, low to high. Throws InvalidAlgebra,
    /// UnsupportedDegree, NotIrreducible, NotTotallyReal.
    static NumberField create(const std::vector<Integer>& minpoly);
    /// "x^2-2" style text.
    static NumberField parse(std::string_view text, int line = 1);

    int degree() const noexcept { return static_cast<int>(minpoly_.size()) - 1; }
    const std::vector<Integer>& minpoly() const noexcept { return minpoly_; }
    std::string minpoly_string() const;

    /// Isolating intervals, ascending.
    const std::vector<RootInterval>& roots() const noexcept { return roots_; }
    /// A copy of the isolating interval at `place` shrunk below `width`.
    RootInterval refine(int place, const Rational& width) const;
    /// Double approximation of the root at `place`.
    double root_value(int place) const { return root_values_.at(place); }

    FieldElem zero() const;
    FieldElem one() const { return from_rational(1); }
    FieldElem gen() const;
    FieldElem from_rational(const Rational& r) const;
    /// Residue of an arbitrary polynomial in the generator.
    FieldElem reduce(const Poly& p) const;
    /// Polynomial in `t`.
    FieldElem parse_elem(std::string_view text, int line = 1) const;
    std::string to_string(const FieldElem& x) const;

    FieldElem add(const FieldElem& x, const FieldElem& y) const;
    FieldElem sub(const FieldElem& x, const FieldElem& y) const;
    FieldElem neg(const FieldElem& x) const;
    FieldElem mul(const FieldElem& x, const FieldElem& y) const;
    /// Throws std::domain_error on zero.
    FieldElem inv(const FieldElem& x) const;
    bool is_zero(const FieldElem& x) const;

    /// Certified sign of sigma_place(x) in {-1, 0, 1}, by refining the root
    /// interval until interval evaluation excludes zero. Throws SignUndecidable.
    int sign(const FieldElem& x, int place) const;
    double embed(const FieldElem& x, int place) const;

private:
    std::vector<Integer> minpoly_;
    Poly modulus_;
    std::vector<Poly> sturm_;
    std::vector<RootInterval> roots_;
    std::vector<double> root_values_;
};

inline NumberField field_create(const std::vector<Integer>& minpoly) { return NumberField::create(minpoly); }

/// (a, b / F) with i^2 = a, j^2 = b, k = ij = -ji.
struct QuatAlgebra {
    NumberField field;
    FieldElem a;
    FieldElem b;

    /// Throws InvalidAlgebra if a or b is zero or lies in another field.
    QuatAlgebra(NumberField f, FieldElem a, FieldElem b);
};

/// x0 + x1 i + x2 j + x3 k.
using QuatElem = std::array<FieldElem, 4>;

QuatElem quat_from_rationals(const NumberField& f, const Rational& x0, const Rational& x1, const Rational& x2,
                             const Rational& x3);
QuatElem quat_mul(const QuatAlgebra& A, const QuatElem& x, const QuatElem& y);
QuatElem quat_scale(const QuatAlgebra& A, const QuatElem& x, const FieldElem& s);

struct TraceNorm {
    FieldElem trace;  // 2 x0
    FieldElem norm;   // x0^2 - a x1^2 - b x2^2 + ab x3^2
};

TraceNorm quat_trace_norm(const QuatAlgebra& A, const QuatElem& x);

/// Per real place, in the order of NumberField::roots().
struct PlaceProfile {
    std::vector<bool> ramified;

    int unramified_count() const;
    /// Index of the first unramified place, or -1.
    int unramified_place() const;
};

/// Ramified at sigma iff sigma(a) < 0 and sigma(b) < 0, with certified signs.
PlaceProfile ramification_profile(const QuatAlgebra& A);

/// Exactly one unramified real place.
bool is_fuchsian_admissible(const QuatAlgebra& A);

/// Image of x at the unramified place under i -> [[sqrt(a), 0], [0, -sqrt(a)]],
/// j -> [[0, 1], [b, 0]]. When sigma(a) < 0 < sigma(b) the roles of a and b are
/// swapped first. Determinant is sigma(norm x). Throws NotAdmissible.
moebius::Mat2 embed_unramified(const QuatAlgebra& A, const QuatElem& x);

/// arccos(sigma(trace q) / 2) / pi at the unramified place, in [0, 1/2].
/// Throws NotAdmissible, NotNormOne, NotElliptic.
Angle arithmetic_rotation_number(const QuatAlgebra& A, const QuatElem& q);

/// Parsed algebra file: `field: x^2-2 ; a: t ; b: -1 ; elem q: [t/2, 0, t/2, 0]`.
struct AlgebraFile {
    QuatAlgebra algebra;
    std::vector<std::pair<std::string, QuatElem>> elements;
};

/// Statements split on ';' or newlines, '#' starts a comment. Throws
/// SyntaxError, InvalidAlgebra and the field-creation errors.
AlgebraFile parse_algebra_file(std::string_view text);

}  // namespace rotforce::quat

#pragma once

#include "rotforce/rotarith.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rotforce::rotarith {

/// Expression over angle variables: constants, variables and +_l nodes.
class Expr {
public:
    enum class Kind { constant, variable, plus };

    static Expr constant(Angle value);
    static Expr variable(int index);
    /// `l_text` keeps the source spelling of l (e.g. "log(2)") as metadata.
    static Expr plus(Expr lhs, Expr rhs, double l, std::string l_text = {});

    Kind kind() const noexcept;
    const Angle& value() const;
    int index() const;
    double l() const;
    const std::string& l_text() const;
    const Expr& lhs() const;
    const Expr& rhs() const;

    /// Signed value in [0,1); NaN where some +_l node is undefined.
    double eval(std::span<const double> vars) const;

    std::string to_string(std::span<const std::string> names) const;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct Equation {
    Expr lhs;
    Expr rhs;
};

struct Constraint {
    int variable;
    CircularInterval range;
};

struct EquationSystem {
    std::vector<std::string> variables;  // the unknown x first, then auxiliaries
    std::vector<Equation> equations;
    std::vector<Constraint> constraints;

    /// Throws InvalidSystem on bad indices, empty systems or more than 4 variables.
    void validate() const;

    /// Wrapped residuals lhs - rhs in [-1/2, 1/2); NaN where undefined.
    void residuals(std::span<const double> vars, std::span<double> out) const;
    /// Largest absolute wrapped residual (infinity where undefined).
    double residual(std::span<const double> vars) const;

    /// Spellings of every +_l length, in order of appearance.
    std::vector<std::string> lengths() const;
};

struct Root {
    std::vector<Angle> values;
    double radius = 0.0;
    double residual = 0.0;
    bool certified = false;  // sign change (1-D) or full-rank Jacobian
};

struct SolutionSet {
    std::vector<Root> roots;
    long grid = 0;  // grid points per dimension actually scanned
    double refine_tol = 0.0;
};

inline constexpr int kMaxVariables = 4;
/// Upper bound on the total number of scanned grid points.
inline constexpr long kMaxGridPoints = 1L << 24;

struct SolveOptions {
    long grid = 4096;
    double refine_tol = 1e-10;
    bool parallel = true;
};

/// All isolated roots on the torus of variables. Throws NonDiscrete when a
/// residual-zero set wider than refine_tol shows up, NoSolution when nothing
/// survives the constraints.
SolutionSet solve_system(const EquationSystem& sys, const SolveOptions& options = {});
SolutionSet solve_system(const EquationSystem& sys, long grid, double refine_tol);

/// Text form: statements separated by ';' or newlines.
///   x +_{1.0} x = 0.587564 ; x in [0.2, 0.3]
///   vars x, y ; x + y = 1/3 ; x +_{log(2)} y = 0.1
/// `+` alone is +_0. Throws SyntaxError.
EquationSystem parse_system(std::string_view text);

}  // namespace rotforce::rotarith

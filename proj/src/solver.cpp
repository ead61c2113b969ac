#include "rotforce/solver.hpp"

#include "rotforce/errors.hpp"
#include "rotforce/kernels.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace rotforce::rotarith {

struct Expr::Node {
    Kind kind;
    Angle value;
    int index = -1;
    double l = 0.0;
    std::string l_text;
    std::vector<Expr> children;
};

Expr Expr::constant(Angle value) {
    return Expr(std::make_shared<const Node>(Node{Kind::constant, std::move(value), -1, 0.0, {}, {}}));
}

Expr Expr::variable(int index) {
    return Expr(std::make_shared<const Node>(Node{Kind::variable, Angle(), index, 0.0, {}, {}}));
}

Expr Expr::plus(Expr lhs, Expr rhs, double l, std::string l_text) {
    if (!std::isfinite(l)) throw InvalidSystem("+_l needs a finite l");
    if (l_text.empty()) l_text = format_double(l);
    return Expr(std::make_shared<const Node>(
        Node{Kind::plus, Angle(), -1, l, std::move(l_text), {std::move(lhs), std::move(rhs)}}));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
const Angle& Expr::value() const { return node_->value; }
int Expr::index() const { return node_->index; }
double Expr::l() const { return node_->l; }
const std::string& Expr::l_text() const { return node_->l_text; }
const Expr& Expr::lhs() const { return node_->children.at(0); }
const Expr& Expr::rhs() const { return node_->children.at(1); }

double Expr::eval(std::span<const double> vars) const {
    switch (node_->kind) {
        case Kind::constant: return node_->value.value();
        case Kind::variable: return frac(vars[static_cast<std::size_t>(node_->index)]);
        case Kind::plus: {
            const double a = lhs().eval(vars);
            if (std::isnan(a)) return a;
            const double b = rhs().eval(vars);
            if (std::isnan(b)) return b;
            return plus_l_signed(a, b, node_->l);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::string Expr::to_string(std::span<const std::string> names) const {
    switch (node_->kind) {
        case Kind::constant: return node_->value.to_string();
        case Kind::variable: return names[static_cast<std::size_t>(node_->index)];
        case Kind::plus: {
            std::string r = rhs().to_string(names);
            if (rhs().kind() == Kind::plus) r = "(" + r + ")";
            const std::string op = node_->l == 0.0 ? " + " : " +_{" + node_->l_text + "} ";
            return lhs().to_string(names) + op + r;
        }
    }
    return {};
}

namespace {

void collect_lengths(const Expr& e, std::vector<std::string>& out) {
    if (e.kind() != Expr::Kind::plus) return;
    collect_lengths(e.lhs(), out);
    if (e.l() != 0.0) out.push_back(e.l_text());
    collect_lengths(e.rhs(), out);
}

void check_indices(const Expr& e, int count) {
    if (e.kind() == Expr::Kind::variable && (e.index() < 0 || e.index() >= count))
        throw InvalidSystem("variable index out of range");
    if (e.kind() == Expr::Kind::plus) {
        check_indices(e.lhs(), count);
        check_indices(e.rhs(), count);
    }
}

}  // namespace

void EquationSystem::validate() const {
    const int k = static_cast<int>(variables.size());
    if (k == 0) throw InvalidSystem("system has no variables");
    if (k > kMaxVariables)
        throw InvalidSystem(std::to_string(k) + " variables; at most " + std::to_string(kMaxVariables) + " are supported");
    if (equations.empty()) throw InvalidSystem("system has no equations");
    for (const auto& e : equations) {
        check_indices(e.lhs, k);
        check_indices(e.rhs, k);
    }
    for (const auto& c : constraints)
        if (c.variable < 0 || c.variable >= k) throw InvalidSystem("constraint on unknown variable");
}

void EquationSystem::residuals(std::span<const double> vars, std::span<double> out) const {
    for (std::size_t i = 0; i < equations.size(); ++i) {
        const double a = equations[i].lhs.eval(vars);
        const double b = equations[i].rhs.eval(vars);
        out[i] = (std::isnan(a) || std::isnan(b)) ? std::numeric_limits<double>::quiet_NaN() : wrap_signed(a - b);
    }
}

double EquationSystem::residual(std::span<const double> vars) const {
    double worst = 0.0;
    for (const auto& eq : equations) {
        const double a = eq.lhs.eval(vars);
        const double b = eq.rhs.eval(vars);
        if (std::isnan(a) || std::isnan(b)) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, std::abs(wrap_signed(a - b)));
    }
    return worst;
}

std::vector<std::string> EquationSystem::lengths() const {
    std::vector<std::string> out;
    for (const auto& eq : equations) {
        collect_lengths(eq.lhs, out);
        collect_lengths(eq.rhs, out);
    }
    return out;
}

namespace {

struct Candidate {
    std::vector<double> x;
    double residual;
    bool certified;
};

double torus_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, circular_distance(a[i], b[i]));
    return d;
}

long effective_grid(long grid, int dims) {
    if (grid < 4) throw InvalidSystem("grid must have at least 4 points per dimension");
    long n = grid;
    auto total = [&](long m) {
        long t = 1;
        for (int d = 0; d < dims; ++d) t *= m;
        return t;
    };
    if (total(n) > kMaxGridPoints)
        n = static_cast<long>(std::floor(std::pow(2.0, 24.0 / dims) + 1e-9));
    return std::min(n, grid);
}

// One equation, one unknown: bracket sign changes of the signed residual.
std::vector<Candidate> solve_scalar(const EquationSystem& sys, long n, double tol, bool parallel) {
    auto r = [&](double x) {
        double out = 0.0;
        sys.residuals(std::span<const double>(&x, 1), std::span<double>(&out, 1));
        return out;
    };
    const kernels::GridFunction f = [&](std::span<const double> x) {
        double out = 0.0;
        sys.residuals(x, std::span<double>(&out, 1));
        return out;
    };
    const auto samples = parallel ? kernels::sample_grid_omp(f, 1, n) : kernels::sample_grid_serial(f, 1, n);
    const double h = 1.0 / static_cast<double>(n);

    int run = 0;
    for (long i = 0; i < n + 2; ++i) {
        const float v = samples[static_cast<std::size_t>(i % n)];
        run = (std::isfinite(v) && std::abs(v) <= 10.0 * tol) ? run + 1 : 0;
        if (run >= 3)
            throw NonDiscrete("residual vanishes on consecutive grid points near x = " +
                              format_double(frac(static_cast<double>(i) * h)));
    }

    std::vector<Candidate> out;
    for (long i = 0; i < n; ++i) {
        const double x0 = static_cast<double>(i) * h;
        const double x1 = x0 + h;
        const float s0 = samples[static_cast<std::size_t>(i)];
        const float s1 = samples[static_cast<std::size_t>((i + 1) % n)];
        if (!std::isfinite(s0) || !std::isfinite(s1)) continue;
        if (std::abs(s0) >= 0.25f || std::abs(s1) >= 0.25f) continue;

        double a = x0, b = x1, ra = r(a), rb = r(b);
        if (std::isnan(ra) || std::isnan(rb)) continue;
        if (ra == 0.0) {
            out.push_back({{frac(a)}, 0.0, true});
            continue;
        }
        if (ra * rb < 0.0) {
            for (int it = 0; it < 200 && b - a > 1e-17; ++it) {
                const double m = 0.5 * (a + b);
                const double rm = r(m);
                if (std::isnan(rm)) break;
                if ((rm < 0.0) == (ra < 0.0)) {
                    a = m;
                    ra = rm;
                } else {
                    b = m;
                    rb = rm;
                }
                if (b - a <= tol && std::min(std::abs(ra), std::abs(rb)) <= tol) break;
            }
            const double x = std::abs(ra) <= std::abs(rb) ? a : b;
            const double res = std::abs(r(x));
            if (res <= 10.0 * tol) out.push_back({{frac(x)}, res, true});
            continue;
        }
        // Touching root: |r| has a local minimum without a sign change.
        const float sp = samples[static_cast<std::size_t>((i + n - 1) % n)];
        if (!std::isfinite(sp) || (sp < 0) != (s0 < 0)) continue;
        if (!(std::abs(s0) <= std::abs(sp) && std::abs(s0) <= std::abs(s1))) continue;
        if (std::abs(s0) > 2.0f * std::max(std::abs(sp - s0), std::abs(s1 - s0))) continue;
        const double g = (std::sqrt(5.0) - 1.0) / 2.0;
        double lo = x0 - h, hi = x1;
        double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
        for (int it = 0; it < 100; ++it) {
            const double rc = std::abs(r(c)), rd = std::abs(r(d));
            if (!(rc >= rd)) {
                hi = d;
                d = c;
                c = hi - g * (hi - lo);
            } else {
                lo = c;
                c = d;
                d = lo + g * (hi - lo);
            }
        }
        const double x = 0.5 * (lo + hi);
        const double res = std::abs(r(x));
        if (res <= 10.0 * tol) out.push_back({{frac(x)}, res, false});
    }
    return out;
}

class GaussNewton {
public:
    GaussNewton(const EquationSystem& sys, double tol)
        : sys_(sys), tol_(tol), k_(sys.variables.size()), m_(sys.equations.size()) {}

    Eigen::VectorXd residuals(const std::vector<double>& x) const {
        Eigen::VectorXd r(static_cast<Eigen::Index>(m_));
        sys_.residuals(x, std::span<double>(r.data(), m_));
        return r;
    }

    Eigen::MatrixXd jacobian(const std::vector<double>& x) const {
        const double fd = 1e-7;
        Eigen::MatrixXd j(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(k_));
        for (std::size_t c = 0; c < k_; ++c) {
            auto xp = x, xm = x;
            xp[c] += fd;
            xm[c] -= fd;
            const Eigen::VectorXd rp = residuals(xp), rm = residuals(xm);
            for (std::size_t r = 0; r < m_; ++r)
                j(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = wrap_signed(rp[r] - rm[r]) / (2 * fd);
        }
        return j;
    }

    static double norm(const Eigen::VectorXd& r) {
        if (!r.allFinite()) return std::numeric_limits<double>::infinity();
        return r.cwiseAbs().maxCoeff();
    }

    // Minimal-norm Gauss-Newton with step halving. Returns the final residual.
    double refine(std::vector<double>& x) const {
        Eigen::VectorXd r = residuals(x);
        double f = norm(r);
        for (int it = 0; it < 80 && std::isfinite(f); ++it) {
            const Eigen::MatrixXd j = jacobian(x);
            if (!j.allFinite()) break;
            const Eigen::VectorXd step = j.completeOrthogonalDecomposition().solve(-r);
            double scale = 1.0;
            bool improved = false;
            for (int h = 0; h < 30; ++h, scale *= 0.5) {
                std::vector<double> y = x;
                for (std::size_t c = 0; c < k_; ++c) y[c] = frac(y[c] + scale * step[static_cast<Eigen::Index>(c)]);
                const Eigen::VectorXd ry = residuals(y);
                const double fy = norm(ry);
                if (fy < f || (fy <= f && fy <= tol_)) {
                    x = y;
                    r = ry;
                    improved = fy < f;
                    f = fy;
                    break;
                }
            }
            if (f <= 0.01 * tol_ || !improved) break;
        }
        return f;
    }

    // Numerical rank of the Jacobian and its null direction (if any).
    std::pair<int, Eigen::VectorXd> rank(const std::vector<double>& x) const {
        const Eigen::MatrixXd j = jacobian(x);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(j, Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        const double top = s.size() > 0 ? s[0] : 0.0;
        int rk = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s[i] > 1e-7 * std::max(top, 1e-300)) ++rk;
        return {rk, svd.matrixV().col(static_cast<Eigen::Index>(k_) - 1)};
    }

private:
    const EquationSystem& sys_;
    double tol_;
    std::size_t k_, m_;
};

std::vector<Candidate> solve_general(const EquationSystem& sys, long n, double tol, bool parallel) {
    const int k = static_cast<int>(sys.variables.size());
    const kernels::GridFunction f = [&](std::span<const double> x) { return sys.residual(x); };
    const auto samples = parallel ? kernels::sample_grid_omp(f, k, n) : kernels::sample_grid_serial(f, k, n);
    const long total = static_cast<long>(samples.size());
    const double h = 1.0 / static_cast<double>(n);

    std::vector<long> stride(static_cast<std::size_t>(k));
    for (int d = 0; d < k; ++d) stride[static_cast<std::size_t>(d)] = d == 0 ? 1 : stride[static_cast<std::size_t>(d) - 1] * n;

    std::vector<std::pair<float, long>> minima;
    for (long i = 0; i < total; ++i) {
        const float v = samples[static_cast<std::size_t>(i)];
        if (!std::isfinite(v) || v > 0.25f) continue;
        bool is_min = true;
        float jump = 0.0f;
        for (int d = 0; d < k && is_min; ++d) {
            const long s = stride[static_cast<std::size_t>(d)];
            const long coord = (i / s) % n;
            for (long delta : {-1L, 1L}) {
                const long nb = i + ((coord + delta + n) % n - coord) * s;
                const float w = samples[static_cast<std::size_t>(nb)];
                if (std::isfinite(w)) {
                    if (w < v) is_min = false;
                    jump = std::max(jump, std::abs(w - v));
                }
            }
        }
        if (is_min && v <= 2.0f * jump + 1e-7f) minima.emplace_back(v, i);
    }
    std::stable_sort(minima.begin(), minima.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    if (minima.size() > 4096) minima.resize(4096);

    const GaussNewton gn(sys, tol);
    std::vector<Candidate> out;
    std::vector<double> x(static_cast<std::size_t>(k));
    for (const auto& [v, idx] : minima) {
        long rest = idx;
        for (int d = 0; d < k; ++d) {
            x[static_cast<std::size_t>(d)] = static_cast<double>(rest % n) * h;
            rest /= n;
        }
        std::vector<double> y = x;
        const double res = gn.refine(y);
        if (!(res <= 10.0 * tol)) continue;
        bool seen = false;
        for (const auto& c : out)
            if (torus_distance(c.x, y) <= std::max(1e-8, 100.0 * tol)) seen = true;
        if (seen) continue;

        const auto [rk, null] = gn.rank(y);
        bool certified = rk == k;
        if (!certified) {
            // Follow the null direction and project back; a second root nearby
            // means the zero set is a curve (or worse), not a point.
            for (double sign : {1.0, -1.0}) {
                std::vector<double> z = y;
                const double delta = std::max(4.0 * h, 1e-4);
                for (int d = 0; d < k; ++d) z[static_cast<std::size_t>(d)] = frac(z[static_cast<std::size_t>(d)] + sign * delta * null[d]);
                const double rz = gn.refine(z);
                if (rz <= 10.0 * tol && torus_distance(z, y) >= 0.25 * delta)
                    throw NonDiscrete("zero set is not discrete near (" + format_double(y[0]) + ", ...)");
            }
        }
        out.push_back({y, res, certified});
    }
    return out;
}

}  // namespace

SolutionSet solve_system(const EquationSystem& sys, const SolveOptions& options) {
    sys.validate();
    if (!(options.refine_tol > 0.0)) throw InvalidSystem("refine_tol must be positive");
    const int k = static_cast<int>(sys.variables.size());
    const long n = effective_grid(options.grid, k);
    const double tol = options.refine_tol;

    std::vector<Candidate> found = (k == 1 && sys.equations.size() == 1)
                                       ? solve_scalar(sys, n, tol, options.parallel)
                                       : solve_general(sys, n, tol, options.parallel);

    // Deduplicate (adjacent brackets can share an endpoint root).
    std::vector<Candidate> unique;
    for (auto& c : found) {
        bool dup = false;
        for (auto& u : unique)
            if (torus_distance(u.x, c.x) <= std::max(1e-8, 100.0 * tol)) {
                dup = true;
                if (c.residual < u.residual) u = c;
            }
        if (!dup) unique.push_back(std::move(c));
    }

    std::vector<Candidate> kept;
    for (const auto& c : unique) {
        bool ok = true;
        for (const auto& con : sys.constraints)
            if (!con.range.contains(c.x[static_cast<std::size_t>(con.variable)], 10.0 * tol)) ok = false;
        if (ok) kept.push_back(c);
    }
    if (kept.empty()) throw NoSolution("no isolated root on a grid of " + std::to_string(n) + " points per variable");

    std::sort(kept.begin(), kept.end(), [](const Candidate& a, const Candidate& b) { return a.x < b.x; });
    const double h = 1.0 / static_cast<double>(n);
    SolutionSet out;
    out.grid = n;
    out.refine_tol = tol;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        double radius = h;
        for (std::size_t j = 0; j < unique.size(); ++j) {
            const double d = torus_distance(kept[i].x, unique[j].x);
            if (d > 0.0) radius = std::min(radius, 0.5 * d);
        }
        Root r;
        for (double v : kept[i].x) r.values.push_back(Angle::from_double(v));
        r.radius = radius;
        r.residual = kept[i].residual;
        r.certified = kept[i].certified;
        out.roots.push_back(std::move(r));
    }
    return out;
}

SolutionSet solve_system(const EquationSystem& sys, long grid, double refine_tol) {
    SolveOptions o;
    o.grid = grid;
    o.refine_tol = refine_tol;
    return solve_system(sys, o);
}

// ---------------------------------------------------------------------------
// Text form

namespace {

class SystemParser {
public:
    explicit SystemParser(std::string_view text) : text_(text) {}

    EquationSystem parse() {
        skip_separators();
        while (!at_end()) {
            statement();
            skip_blank();
            if (!at_end() && peek() != ';' && peek() != '\n') fail("expected ';' or end of line");
            skip_separators();
        }
        if (sys_.equations.empty()) fail("system has no equations");
        // The unknown x (when present) comes first.
        auto it = std::find(sys_.variables.begin(), sys_.variables.end(), "x");
        if (!declared_ && it != sys_.variables.end() && it != sys_.variables.begin()) {
            const int old = static_cast<int>(it - sys_.variables.begin());
            std::vector<int> perm(sys_.variables.size());
            std::iota(perm.begin(), perm.end(), 0);
            perm.erase(perm.begin() + old);
            perm.insert(perm.begin(), old);
            return reorder(perm);
        }
        return sys_;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    EquationSystem sys_;
    std::map<std::string, int> index_;
    bool declared_ = false;

    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, line_, col_); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek(std::size_t off = 0) const { return pos_ + off < text_.size() ? text_[pos_ + off] : '\0'; }
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void skip_blank() {
        while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) advance();
        if (peek() == '#')
            while (!at_end() && peek() != '\n') advance();
    }
    void skip_separators() {
        for (;;) {
            skip_blank();
            if (!at_end() && (peek() == ';' || peek() == '\n')) advance();
            else break;
        }
    }
    void expect(char c) {
        skip_blank();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }

    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    std::string identifier() {
        skip_blank();
        if (!ident_start(peek())) fail("expected identifier");
        std::string s;
        while (!at_end() && ident_char(peek())) {
            s += peek();
            advance();
        }
        return s;
    }

    bool keyword(std::string_view word) {
        skip_blank();
        if (text_.substr(pos_, word.size()) != word) return false;
        if (ident_char(peek(word.size()))) return false;
        for (std::size_t i = 0; i < word.size(); ++i) advance();
        return true;
    }

    std::string number_text() {
        skip_blank();
        std::string s;
        if (peek() == '-' || peek() == '+') {
            s += peek();
            advance();
        }
        const auto digit = [&](std::size_t off = 0) { return std::isdigit(static_cast<unsigned char>(peek(off))) != 0; };
        if (!digit() && !(peek() == '.' && digit(1))) fail("expected number");
        while (digit() || peek() == '.') {
            s += peek();
            advance();
        }
        if ((peek() == 'e' || peek() == 'E') && (digit(1) || ((peek(1) == '-' || peek(1) == '+') && digit(2)))) {
            s += peek();
            advance();
            s += peek();
            advance();
            while (digit()) {
                s += peek();
                advance();
            }
        }
        if (peek() == '/' && digit(1)) {
            s += '/';
            advance();
            while (digit()) {
                s += peek();
                advance();
            }
        }
        return s;
    }

    Rational rational() {
        const int l = line_, c = col_;
        const std::string s = number_text();
        try {
            return parse_rational(s);
        } catch (const InvalidSystem&) {
            throw SyntaxError("bad number '" + s + "'", l, c);
        }
    }

    int variable(const std::string& name) {
        auto it = index_.find(name);
        if (it != index_.end()) return it->second;
        if (declared_) fail("undeclared variable '" + name + "'");
        const int i = static_cast<int>(sys_.variables.size());
        sys_.variables.push_back(name);
        index_[name] = i;
        return i;
    }

    void statement() {
        if (keyword("vars")) {
            if (!sys_.variables.empty()) fail("'vars' must come first");
            do {
                const std::string v = identifier();
                if (index_.count(v)) fail("variable '" + v + "' declared twice");
                variable(v);
                skip_blank();
            } while (peek() == ',' && (advance(), true));
            declared_ = true;
            return;
        }
        // Constraint "<var> in [a, b]" or equation "<expr> = <expr>".
        const std::size_t save = pos_;
        const int sl = line_, sc = col_;
        skip_blank();
        if (ident_start(peek())) {
            const std::string name = identifier();
            if (keyword("in")) {
                expect('[');
                const Rational lo = rational();
                expect(',');
                const Rational hi = rational();
                expect(']');
                sys_.constraints.push_back({variable(name), CircularInterval(Angle::from_rational(lo), Angle::from_rational(hi))});
                return;
            }
        }
        pos_ = save;
        line_ = sl;
        col_ = sc;
        Expr lhs = expression();
        expect('=');
        Expr rhs = expression();
        sys_.equations.push_back({std::move(lhs), std::move(rhs)});
    }

    Expr expression() {
        Expr e = primary();
        for (;;) {
            skip_blank();
            if (peek() != '+') return e;
            advance();
            double l = 0.0;
            std::string l_text;
            if (peek() == '_') {
                advance();
                skip_blank();
                const bool braced = peek() == '{';
                if (braced) advance();
                std::tie(l, l_text) = length();
                if (braced) expect('}');
            }
            Expr rhs = primary();
            e = Expr::plus(std::move(e), std::move(rhs), l, l_text);
        }
    }

    std::pair<double, std::string> length() {
        if (keyword("log")) {
            expect('(');
            const Rational r = rational();
            expect(')');
            if (r <= 0) fail("log needs a positive argument");
            return {std::log(to_double(r)), "log(" + to_string(r) + ")"};
        }
        const std::string s = number_text();
        return {to_double(parse_rational(s)), s};
    }

    Expr primary() {
        skip_blank();
        if (peek() == '(') {
            advance();
            Expr e = expression();
            expect(')');
            return e;
        }
        if (ident_start(peek())) return Expr::variable(variable(identifier()));
        return Expr::constant(Angle::from_rational(rational()));
    }

    static Expr remap(const Expr& e, const std::vector<int>& inverse) {
        switch (e.kind()) {
            case Expr::Kind::constant: return e;
            case Expr::Kind::variable: return Expr::variable(inverse[static_cast<std::size_t>(e.index())]);
            case Expr::Kind::plus: return Expr::plus(remap(e.lhs(), inverse), remap(e.rhs(), inverse), e.l(), e.l_text());
        }
        return e;
    }

    EquationSystem reorder(const std::vector<int>& perm) const {
        std::vector<int> inverse(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i) inverse[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
        EquationSystem out;
        for (int p : perm) out.variables.push_back(sys_.variables[static_cast<std::size_t>(p)]);
        for (const auto& eq : sys_.equations) out.equations.push_back({remap(eq.lhs, inverse), remap(eq.rhs, inverse)});
        for (const auto& c : sys_.constraints)
            out.constraints.push_back({inverse[static_cast<std::size_t>(c.variable)], c.range});
        return out;
    }
};

}  // namespace

EquationSystem parse_system(std::string_view text) { return SystemParser(text).parse(); }

}  // namespace rotforce::rotarith

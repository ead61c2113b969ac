#include "rotforce/quatalg.hpp"

#include "rotforce/errors.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>

namespace rotforce::quat {

QuatAlgebra::QuatAlgebra(NumberField f, FieldElem a_, FieldElem b_)
    : field(std::move(f)), a(std::move(a_)), b(std::move(b_)) {
    const auto d = static_cast<std::size_t>(field.degree());
    if (a.c.size() != d || b.c.size() != d) throw InvalidAlgebra("a and b must be elements of the field");
    if (field.is_zero(a) || field.is_zero(b)) throw InvalidAlgebra("a and b must be nonzero");
}

QuatElem quat_from_rationals(const NumberField& f, const Rational& x0, const Rational& x1, const Rational& x2,
                             const Rational& x3) {
    return {f.from_rational(x0), f.from_rational(x1), f.from_rational(x2), f.from_rational(x3)};
}

QuatElem quat_mul(const QuatAlgebra& A, const QuatElem& x, const QuatElem& y) {
    const NumberField& F = A.field;
    auto m = [&](const FieldElem& u, const FieldElem& v) { return F.mul(u, v); };
    const FieldElem ab = m(A.a, A.b);
    QuatElem r;
    r[0] = F.sub(F.add(F.add(m(x[0], y[0]), m(A.a, m(x[1], y[1]))), m(A.b, m(x[2], y[2]))), m(ab, m(x[3], y[3])));
    r[1] = F.add(F.add(m(x[0], y[1]), m(x[1], y[0])), m(A.b, F.sub(m(x[3], y[2]), m(x[2], y[3]))));
    r[2] = F.add(F.add(m(x[0], y[2]), m(x[2], y[0])), m(A.a, F.sub(m(x[1], y[3]), m(x[3], y[1]))));
    r[3] = F.add(F.add(m(x[0], y[3]), m(x[3], y[0])), F.sub(m(x[1], y[2]), m(x[2], y[1])));
    return r;
}

QuatElem quat_scale(const QuatAlgebra& A, const QuatElem& x, const FieldElem& s) {
    QuatElem r;
    for (int i = 0; i < 4; ++i) r[i] = A.field.mul(x[i], s);
    return r;
}

TraceNorm quat_trace_norm(const QuatAlgebra& A, const QuatElem& x) {
    const NumberField& F = A.field;
    auto sq = [&](const FieldElem& u) { return F.mul(u, u); };
    FieldElem norm = F.sub(sq(x[0]), F.mul(A.a, sq(x[1])));
    norm = F.sub(norm, F.mul(A.b, sq(x[2])));
    norm = F.add(norm, F.mul(F.mul(A.a, A.b), sq(x[3])));
    return {F.add(x[0], x[0]), norm};
}

int PlaceProfile::unramified_count() const {
    int n = 0;
    for (bool r : ramified) n += r ? 0 : 1;
    return n;
}

int PlaceProfile::unramified_place() const {
    for (std::size_t i = 0; i < ramified.size(); ++i)
        if (!ramified[i]) return static_cast<int>(i);
    return -1;
}

PlaceProfile ramification_profile(const QuatAlgebra& A) {
    PlaceProfile p;
    for (int i = 0; i < A.field.degree(); ++i)
        p.ramified.push_back(A.field.sign(A.a, i) < 0 && A.field.sign(A.b, i) < 0);
    return p;
}

bool is_fuchsian_admissible(const QuatAlgebra& A) { return ramification_profile(A).unramified_count() == 1; }

namespace {

int admissible_place(const QuatAlgebra& A) {
    const PlaceProfile p = ramification_profile(A);
    if (p.unramified_count() != 1)
        throw NotAdmissible(std::to_string(p.unramified_count()) + " unramified places; exactly one is required");
    return p.unramified_place();
}

}  // namespace

moebius::Mat2 embed_unramified(const QuatAlgebra& A, const QuatElem& x) {
    const int u = admissible_place(A);
    const NumberField& F = A.field;
    double sa = F.embed(A.a, u), sb = F.embed(A.b, u);
    double x0 = F.embed(x[0], u), x1 = F.embed(x[1], u), x2 = F.embed(x[2], u), x3 = F.embed(x[3], u);
    if (F.sign(A.a, u) < 0) {
        // (a, b) is isomorphic to (b, a) via i' = j, j' = i, k' = -k.
        std::swap(sa, sb);
        std::swap(x1, x2);
        x3 = -x3;
    }
    const double s = std::sqrt(sa);
    return {x0 + x1 * s, x2 + x3 * s, sb * (x2 - x3 * s), x0 - x1 * s};
}

Angle arithmetic_rotation_number(const QuatAlgebra& A, const QuatElem& q) {
    const int u = admissible_place(A);
    const NumberField& F = A.field;
    const TraceNorm tn = quat_trace_norm(A, q);
    if (tn.norm != F.one()) throw NotNormOne("norm is " + F.to_string(tn.norm) + ", not 1");
    const FieldElem two = F.from_rational(2);
    if (F.sign(F.sub(two, tn.trace), u) <= 0 || F.sign(F.add(two, tn.trace), u) <= 0)
        throw NotElliptic("|trace| = |" + format_double(F.embed(tn.trace, u)) + "| is not below 2");
    const double tr = F.embed(tn.trace, u);
    return Angle::from_double(std::acos(std::clamp(tr / 2.0, -1.0, 1.0)) / std::numbers::pi);
}

namespace {

struct Statement {
    std::string_view text;
    int line;
    int column;  // 1-based column of text[0]
};

std::string_view strip(std::string_view s, int* lead = nullptr) {
    int n = 0;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
        ++n;
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (lead) *lead = n;
    return s;
}

std::vector<Statement> split_statements(std::string_view text) {
    std::vector<Statement> out;
    int line = 1;
    std::size_t line_start = 0, start = 0;
    bool comment = false;
    auto flush = [&](std::size_t end) {
        int lead = 0;
        const std::string_view s = strip(text.substr(start, end - start), &lead);
        if (!s.empty()) out.push_back({s, line, static_cast<int>(start - line_start) + lead + 1});
    };
    for (std::size_t i = 0; i <= text.size(); ++i) {
        const char ch = i < text.size() ? text[i] : '\n';
        if (ch == '#' && !comment) {
            flush(i);
            comment = true;
        } else if (ch == ';' && !comment) {
            flush(i);
            start = i + 1;
        } else if (ch == '\n') {
            if (!comment) flush(i);
            comment = false;
            ++line;
            line_start = start = i + 1;
        }
    }
    return out;
}

}  // namespace

AlgebraFile parse_algebra_file(std::string_view text) {
    std::optional<NumberField> field;
    std::optional<Statement> a_text, b_text;
    std::vector<std::pair<std::string, Statement>> elem_text;

    for (const Statement& st : split_statements(text)) {
        const auto colon = st.text.find(':');
        if (colon == std::string_view::npos) throw SyntaxError("expected 'key: value'", st.line, st.column);
        const std::string_view key = strip(st.text.substr(0, colon));
        int lead = 0;
        const std::string_view value = strip(st.text.substr(colon + 1), &lead);
        const Statement val{value, st.line, st.column + static_cast<int>(colon) + 1 + lead};
        if (key == "field") {
            field = NumberField::parse(value, st.line);
        } else if (key == "a") {
            a_text = val;
        } else if (key == "b") {
            b_text = val;
        } else if (key.substr(0, 5) == "elem " && !strip(key.substr(5)).empty()) {
            elem_text.emplace_back(std::string(strip(key.substr(5))), val);
        } else {
            throw SyntaxError("unknown key '" + std::string(key) + "'", st.line, st.column);
        }
    }
    if (!field) throw SyntaxError("missing 'field:'", 1, 1);
    if (!a_text || !b_text) throw SyntaxError("missing 'a:' or 'b:'", 1, 1);

    AlgebraFile out{QuatAlgebra(*field, field->parse_elem(a_text->text, a_text->line),
                                field->parse_elem(b_text->text, b_text->line)),
                    {}};
    for (const auto& [name, st] : elem_text) {
        std::string_view v = st.text;
        if (v.size() < 2 || v.front() != '[' || v.back() != ']')
            throw SyntaxError("element must be [x0, x1, x2, x3]", st.line, st.column);
        v = v.substr(1, v.size() - 2);
        QuatElem q;
        int count = 0;
        while (true) {
            const auto comma = v.find(',');
            if (count == 4) throw SyntaxError("element has more than 4 coordinates", st.line, st.column);
            q[count++] = field->parse_elem(v.substr(0, comma), st.line);
            if (comma == std::string_view::npos) break;
            v.remove_prefix(comma + 1);
        }
        if (count != 4) throw SyntaxError("element has fewer than 4 coordinates", st.line, st.column);
        out.elements.emplace_back(name, q);
    }
    return out;
}

}  // namespace rotforce::quat

#include "rotforce/presentation.hpp"

#include "rotforce/errors.hpp"

#include <cctype>
#include <cmath>

namespace rotforce::forcing {

Word Word::inverse() const {
    Word w;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back({it->gen, -it->exp});
    return w;
}

int Presentation::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i] == name) return static_cast<int>(i);
    return -1;
}

std::string Presentation::word_to_string(const Word& w) const {
    if (w.is_identity()) return "1";
    std::string s;
    for (const auto& l : w.letters) {
        if (!s.empty()) s += ' ';
        s += generators.at(l.gen);
        if (l.exp != 1) s += "^" + std::to_string(l.exp);
    }
    return s;
}

namespace {

enum class Tok { ident, number, punct, newline, end };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        i += n;
        col += static_cast<int>(n);
    };
    while (i < s.size()) {
        const char c = s[i];
        if (c == '\n') {
            out.push_back({Tok::newline, "\n", line, col});
            ++i;
            ++line;
            col = 1;
        } else if (c == '#') {
            while (i < s.size() && s[i] != '\n') advance(1);
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
            out.push_back({Tok::ident, std::string(s.substr(i, j - i)), line, col});
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t j = i;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
            if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
                if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
                    j = k;
                    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
                }
            }
            out.push_back({Tok::number, std::string(s.substr(i, j - i)), line, col});
            advance(j - i);
        } else {
            out.push_back({Tok::punct, std::string(1, c), line, col});
            advance(1);
        }
    }
    out.push_back({Tok::end, "", line, col});
    return out;
}

bool is_keyword(const Token& t) {
    static const char* const kw[] = {"gens", "rels", "commute", "conj", "torsion", "orbifold",
                                     "dial", "exclude", "hyperbolic", "mark"};
    if (t.kind != Tok::ident) return false;
    for (const char* k : kw)
        if (t.text == k) return true;
    return false;
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

    Presentation run() {
        bool have_gens = false;
        while (true) {
            while (peek().kind == Tok::newline || is_punct(";")) ++pos_;
            if (peek().kind == Tok::end) break;
            const Token kw = next();
            if (!is_keyword(kw)) fail(kw, "expected a statement keyword, got '" + kw.text + "'");
            if (kw.text != "gens" && !have_gens) fail(kw, "'gens' must come first");
            if (kw.text == "gens") {
                gens();
                have_gens = true;
            } else if (kw.text == "rels") {
                rels();
            } else if (kw.text == "commute") {
                expect("(");
                const int a = generator();
                expect(",");
                const int b = generator();
                expect(")");
                p_.commutes.emplace_back(a, b);
            } else if (kw.text == "conj") {
                expect("(");
                Conjugation c;
                c.g = generator();
                expect(":");
                c.h = word();
                expect("-");
                expect(">");
                c.h2 = word();
                expect(")");
                p_.conjugations.push_back(std::move(c));
            } else if (kw.text == "torsion") {
                do {
                    Torsion t;
                    t.gen = generator();
                    expect(":");
                    t.order = positive_integer();
                    p_.torsions.push_back(t);
                } while (accept(","));
            } else if (kw.text == "orbifold") {
                orbifold();
            } else if (kw.text == "dial") {
                Dial d;
                d.gen = generator();
                expect(":");
                d.order = positive_integer();
                p_.dials.push_back(d);
            } else if (kw.text == "exclude") {
                exclude();
            } else if (kw.text == "hyperbolic") {
                do p_.hyperbolic.push_back(generator());
                while (accept(","));
            } else if (kw.text == "mark") {
                do p_.marked.push_back(generator());
                while (accept(","));
            }
            end_statement();
        }
        if (!have_gens) fail(peek(), "missing 'gens'");
        return std::move(p_);
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Presentation p_;

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
    bool is_punct(const char* p, std::size_t k = 0) const { return peek(k).kind == Tok::punct && peek(k).text == p; }

    [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw SyntaxError(msg, t.line, t.col); }

    bool accept(const char* p) {
        if (!is_punct(p)) return false;
        ++pos_;
        return true;
    }
    void expect(const char* p) {
        if (!accept(p)) fail(peek(), std::string("expected '") + p + "'");
    }
    void expect_ident(const char* name) {
        const Token& t = next();
        if (t.kind != Tok::ident || t.text != name) fail(t, std::string("expected '") + name + "'");
    }
    void end_statement() {
        if (accept(";") || peek().kind == Tok::newline || peek().kind == Tok::end) return;
        fail(peek(), "unexpected '" + peek().text + "'");
    }

    int generator() {
        const Token& t = next();
        if (t.kind != Tok::ident) fail(t, "expected a generator name");
        const int g = p_.index_of(t.text);
        if (g < 0) throw UnknownGenerator("'" + t.text + "' at line " + std::to_string(t.line) + ", column " +
                                          std::to_string(t.col));
        return g;
    }

    long integer() {
        const bool neg = accept("-");
        const Token& t = next();
        if (t.kind != Tok::number || t.text.find_first_not_of("0123456789") != std::string::npos)
            fail(t, "expected an integer");
        const long v = std::stol(t.text);
        return neg ? -v : v;
    }

    long positive_integer() {
        const Token& t = peek();
        const long v = integer();
        if (v < 1) fail(t, "expected a positive integer");
        return v;
    }

    // Optional sign, decimal or p/q.
    std::string rational_text() {
        std::string s;
        if (accept("-")) s = "-";
        const Token& t = next();
        if (t.kind != Tok::number) fail(t, "expected a number");
        s += t.text;
        if (accept("/")) {
            const Token& d = next();
            if (d.kind != Tok::number) fail(d, "expected a denominator");
            s += "/" + d.text;
        }
        return s;
    }

    Rational rational() {
        const Token& t = peek();
        try {
            return parse_rational(rational_text());
        } catch (const std::exception& e) {
            fail(t, e.what());
        }
    }

    Word word() {
        Word w;
        if (peek().kind == Tok::number && peek().text == "1") {
            ++pos_;
            return w;
        }
        if (peek().kind != Tok::ident) fail(peek(), "expected a word");
        while (peek().kind == Tok::ident && !is_keyword(peek())) {
            Letter l;
            l.gen = generator();
            if (accept("^")) {
                const Token& t = peek();
                l.exp = integer();
                if (l.exp == 0) fail(t, "exponent must be nonzero");
            }
            w.letters.push_back(l);
        }
        return w;
    }

    void gens() {
        if (peek().kind != Tok::ident) fail(peek(), "empty generator list");
        do {
            const Token& t = next();
            if (t.kind != Tok::ident || is_keyword(t)) fail(t, "expected a generator name");
            if (p_.index_of(t.text) >= 0) fail(t, "duplicate generator '" + t.text + "'");
            p_.generators.push_back(t.text);
        } while (accept(","));
    }

    void rels() {
        do {
            Relation r;
            r.lhs = word();
            expect("=");
            r.rhs = word();
            p_.relations.push_back(std::move(r));
        } while (accept(","));
    }

    void orbifold() {
        OrbifoldData d;
        bool have_sig = false, have_degree = false, have_chi = false;
        while (peek().kind == Tok::ident && !is_keyword(peek())) {
            const Token key = next();
            if (key.text == "maximal") {
                d.maximal = true;
            } else if (key.text == "sig") {
                expect("=");
                d.sig.genus = static_cast<int>(integer());
                // "0;2,3,7": a ';' followed by a number continues the signature.
                if (is_punct(";") && peek(1).kind == Tok::number) {
                    ++pos_;
                    do d.sig.cone_orders.push_back(static_cast<int>(integer()));
                    while (accept(","));
                }
                d.sig.validate();
                have_sig = true;
            } else if (key.text == "degree") {
                expect("=");
                d.degree = positive_integer();
                have_degree = true;
            } else if (key.text == "coverchi") {
                expect("=");
                d.cover_chi = rational();
                have_chi = true;
            } else if (key.text == "map") {
                while (peek().kind == Tok::ident && !is_keyword(peek()) && is_punct(":", 1)) {
                    const int g = generator();
                    expect(":");
                    const Token& t = peek();
                    const long slot = positive_integer();
                    if (!have_sig || slot > static_cast<long>(d.sig.cone_orders.size()))
                        fail(t, "cone slot " + std::to_string(slot) + " out of range");
                    d.map.emplace_back(g, static_cast<int>(slot - 1));
                    accept(",");
                }
            } else {
                fail(key, "unknown orbifold field '" + key.text + "'");
            }
        }
        if (!have_sig || !have_degree || !have_chi) fail(peek(), "orbifold needs sig=, degree= and coverchi=");
        p_.orbifolds.push_back(std::move(d));
    }

    void exclude() {
        Exclusion e;
        e.gen = generator();
        expect(":");
        expect_ident("l");
        expect("=");
        if (peek().kind == Tok::ident && peek().text == "log") {
            ++pos_;
            expect("(");
            const Token& t = peek();
            const Rational r = rational();
            expect(")");
            if (r <= 0) fail(t, "log needs a positive argument");
            e.l_text = "log(" + rotforce::to_string(r) + ")";
            e.l = std::log(to_double(r));
        } else {
            const Token& t = peek();
            const std::string text = rational_text();
            try {
                const Rational r = parse_rational(text);
                e.l = to_double(r);
            } catch (const std::exception& ex) {
                fail(t, ex.what());
            }
            e.l_text = text;
        }
        expect_ident("theta");
        expect("=");
        const Token& t = peek();
        const std::string text = rational_text();
        try {
            e.theta = Angle::from_rational(parse_rational(text));
        } catch (const std::exception& ex) {
            fail(t, ex.what());
        }
        p_.exclusions.push_back(std::move(e));
    }
};

}  // namespace

Presentation parse_presentation(std::string_view text) { return Parser(text).run(); }

std::string print_presentation(const Presentation& p) {
    auto name = [&](int g) { return p.generators.at(g); };
    std::string s = "gens ";
    for (std::size_t i = 0; i < p.generators.size(); ++i) s += (i ? ", " : "") + p.generators[i];
    s += ";\n";
    if (!p.relations.empty()) {
        s += "rels ";
        for (std::size_t i = 0; i < p.relations.size(); ++i)
            s += (i ? ", " : "") + p.word_to_string(p.relations[i].lhs) + " = " + p.word_to_string(p.relations[i].rhs);
        s += ";\n";
    }
    for (const auto& [a, b] : p.commutes) s += "commute (" + name(a) + ", " + name(b) + ");\n";
    for (const auto& c : p.conjugations)
        s += "conj (" + name(c.g) + ": " + p.word_to_string(c.h) + " -> " + p.word_to_string(c.h2) + ");\n";
    for (const auto& t : p.torsions) s += "torsion " + name(t.gen) + ":" + std::to_string(t.order) + ";\n";
    for (const auto& o : p.orbifolds) {
        s += "orbifold sig=" + o.sig.to_string() + " degree=" + std::to_string(o.degree) +
             " coverchi=" + rotforce::to_string(o.cover_chi);
        if (o.maximal) s += " maximal";
        if (!o.map.empty()) {
            s += " map";
            for (const auto& [g, slot] : o.map) s += " " + name(g) + ":" + std::to_string(slot + 1);
        }
        s += ";\n";
    }
    for (const auto& d : p.dials) s += "dial " + name(d.gen) + ":" + std::to_string(d.order) + ";\n";
    for (const auto& e : p.exclusions)
        s += "exclude " + name(e.gen) + ": l=" + e.l_text + " theta=" + e.theta.to_string() + ";\n";
    for (int g : p.hyperbolic) s += "hyperbolic " + name(g) + ";\n";
    if (!p.marked.empty()) {
        s += "mark ";
        for (std::size_t i = 0; i < p.marked.size(); ++i) s += (i ? ", " : "") + name(p.marked[i]);
        s += ";\n";
    }
    return s;
}

circle::CircleMap eval_word(const Presentation& p, const Word& w, const Assignment& a) {
    if (w.is_identity()) return circle::CircleMap::identity();
    std::vector<circle::CircleMap> factors;
    for (const auto& l : w.letters) {
        const std::string& name = p.generators.at(l.gen);
        const auto it = a.find(name);
        if (it == a.end()) throw UnassignedGenerator("no map assigned to '" + name + "'");
        factors.push_back(l.exp == 1 ? it->second : circle::power(it->second, l.exp));
    }
    return factors.size() == 1 ? factors.front() : circle::CircleMap::word(std::move(factors));
}

RelationReport check_relations(const Presentation& p, const Assignment& a, double tol) {
    RelationReport report;
    auto check = [&](std::string text, const Word& relator) {
        RelatorCheck c;
        c.text = std::move(text);
        c.residual = circle::identity_defect(eval_word(p, relator, a), kRelatorGrid);
        c.pass = c.residual <= tol;
        report.pass = report.pass && c.pass;
        report.checks.push_back(std::move(c));
    };
    auto concat = [](const Word& x, const Word& y) {
        Word w = x;
        w.letters.insert(w.letters.end(), y.letters.begin(), y.letters.end());
        return w;
    };
    auto letter = [](int g, long e) { return Word{{Letter{g, e}}}; };

    for (const auto& r : p.relations)
        check(p.word_to_string(r.lhs) + " = " + p.word_to_string(r.rhs), concat(r.lhs, r.rhs.inverse()));
    for (const auto& [x, y] : p.commutes)
        check("[" + p.generators[x] + ", " + p.generators[y] + "] = 1",
              concat(concat(letter(x, 1), letter(y, 1)), concat(letter(x, -1), letter(y, -1))));
    for (const auto& c : p.conjugations)
        check(p.generators[c.g] + " (" + p.word_to_string(c.h) + ") " + p.generators[c.g] + "^-1 = " +
                  p.word_to_string(c.h2),
              concat(concat(letter(c.g, 1), c.h), concat(letter(c.g, -1), c.h2.inverse())));
    for (const auto& t : p.torsions)
        check(p.generators[t.gen] + "^" + std::to_string(t.order) + " = 1", letter(t.gen, t.order));
    return report;
}

}  // namespace rotforce::forcing

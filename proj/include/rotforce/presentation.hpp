#pragma once

#include "rotforce/angle.hpp"
#include "rotforce/circle_map.hpp"
#include "rotforce/eulerorb.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rotforce::forcing {

struct Letter {
    int gen = 0;
    long exp = 1;

    friend bool operator==(const Letter&, const Letter&) = default;
};

/// g1^e1 g2^e2 ...; the empty word is the identity and prints as "1".
struct Word {
    std::vector<Letter> letters;

    bool is_identity() const { return letters.empty(); }
    /// Single letter g^e.
    bool is_atomic() const { return letters.size() == 1; }
    Word inverse() const;

    friend bool operator==(const Word&, const Word&) = default;
};

struct Relation {
    Word lhs;
    Word rhs;
};

/// g h g^-1 = h2.
struct Conjugation {
    int g = 0;
    Word h;
    Word h2;
};

struct OrbifoldData {
    euler::OrbifoldSig sig;
    long degree = 1;
    Rational cover_chi = 0;
    bool maximal = false;
    /// (generator, 0-based cone slot).
    std::vector<std::pair<int, int>> map;
};

/// rot(g) lies outside the open interval I_{l,theta}.
struct Exclusion {
    int gen = 0;
    std::string l_text;
    double l = 0.0;
    Angle theta;
};

struct Torsion {
    int gen = 0;
    long order = 1;
};

struct Dial {
    int gen = 0;
    long order = 1;
};

struct Presentation {
    std::vector<std::string> generators;
    std::vector<Relation> relations;
    std::vector<std::pair<int, int>> commutes;
    std::vector<Conjugation> conjugations;
    std::vector<Torsion> torsions;
    std::vector<OrbifoldData> orbifolds;
    std::vector<Dial> dials;
    std::vector<Exclusion> exclusions;
    std::vector<int> hyperbolic;
    std::vector<int> marked;

    /// -1 when absent.
    int index_of(std::string_view name) const;
    std::string word_to_string(const Word& w) const;
};

/// Line-oriented grammar; a statement ends at ';' or a newline, '#' comments:
///
///   gens A, B, C, T
///   rels A^2 = T, A B C = T
///   commute (a, b)
///   conj (g: h -> h2)                       g h g^-1 = h2
///   torsion a:7, b:3
///   orbifold sig=0;2,3,7 degree=168 coverchi=-4 [maximal] map C:3
///   dial nu:3
///   exclude g: l=1 theta=1/4
///   hyperbolic g
///   mark C
///
/// Words are space-separated generators with optional ^k exponents. Throws
/// SyntaxError and UnknownGenerator.
Presentation parse_presentation(std::string_view text);

/// Canonical text; parse_presentation(print_presentation(p)) reproduces p.
std::string print_presentation(const Presentation& p);

using Assignment = std::map<std::string, circle::CircleMap>;

/// Throws UnassignedGenerator.
circle::CircleMap eval_word(const Presentation& p, const Word& w, const Assignment& a);

struct RelatorCheck {
    std::string text;
    double residual = 0.0;
    bool pass = false;
};

struct RelationReport {
    std::vector<RelatorCheck> checks;
    bool pass = true;
};

/// Grid size for relator residuals.
inline constexpr int kRelatorGrid = 1 << 10;

/// Largest circular deviation of each relator (relations, commutators,
/// conjugations, torsion) from the identity on the grid.
RelationReport check_relations(const Presentation& p, const Assignment& a, double tol);

}  // namespace rotforce::forcing

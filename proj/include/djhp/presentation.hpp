#pragma once

#include "djhp/field.hpp"
#include "djhp/linalg.hpp"

#include <string>
#include <vector>

namespace djhp {

struct Arrow {
    std::string label;
    std::string src;
    std::string tgt;

    bool operator==(const Arrow&) const = default;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    int vertex_index(const std::string& label) const; // -1 if absent
    int arrow_index(const std::string& label) const;

    bool operator==(const Quiver&) const = default;
};

/// A path written in function order: arrows.back() is traversed first.
/// Trivial paths have an empty arrow list and source == target.
struct PathWord {
    std::vector<std::string> arrows;
    std::string source;
    std::string target;

    int length() const { return static_cast<int>(arrows.size()); }
    bool trivial() const { return arrows.empty(); }
    std::string str() const; // "a3*a2*a1" or "e(v)"

    bool operator==(const PathWord&) const = default;
};

/// Build a path from arrow labels (function order), validating composability.
/// Throws std::invalid_argument on unknown arrows or non-composable steps.
PathWord make_path(const Quiver& q, const std::vector<std::string>& arrows);
PathWord trivial_path(const Quiver& q, const std::string& vertex);

struct RelationTerm {
    Scalar coeff;
    PathWord path;

    bool operator==(const RelationTerm&) const = default;
};

struct Relation {
    std::vector<RelationTerm> terms;

    bool operator==(const Relation&) const = default;
};

struct Presentation {
    std::string name;
    Field field;
    Quiver quiver;
    std::vector<Relation> relations;

    bool operator==(const Presentation&) const = default;
};

/// Check all type invariants (unique labels, endpoints declared, relation
/// terms parallel/length >= 2/distinct paths/nonzero coefficients).
/// Throws std::invalid_argument naming the first violation.
void validate_presentation(const Presentation& p);

struct ParseError : std::runtime_error {
    int line;
    int column;

    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg + " (line " + std::to_string(l) + ", column " +
                             std::to_string(c) + ")"),
          line(l), column(c) {}
};

Presentation parse_presentation(const std::string& text);

enum class EmitFormat { DSL, DOT };
std::string emit_presentation(const Presentation& p, EmitFormat format);

struct AdmissibilityCertificate {
    bool certified = false;
    /// least L with every path of length L equal to 0 modulo the ideal
    int witness_length = -1;
    std::string refusal; // nonempty when not certified
};

AdmissibilityCertificate validate_admissible(const Presentation& p, int cutoff,
                                             CancelToken cancel = {});

} // namespace djhp

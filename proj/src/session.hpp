#ifndef REGTENSOR_SESSION_HPP
#define REGTENSOR_SESSION_HPP

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace regtensor {

/// Session files are line based; '#' starts a comment.
///
///   base k = Q
///   base k = Fp(2) generated by [u]
///   base k = Fp(2) subfield of ambient(x, y, z) generated by [x^4, y^4]
///   field K = k adjoin insep x^2, y^2
///   field L = k adjoin transcendental z; insep x^2*(y^2 + z)
///   field M = k adjoin root a of X^2 - 2
///   algebra A = descriptor regular=true residue_fields=[K, L]
///   query regular tensor(K, L)
///   query dim tensor(K, L)
///   query decompose tensor(K, L)
///   query conditions tensor(K, L)
///   query intersect(K, L)
///   query self_tensor K
///   query theorem3 A B assume ii, iii

struct BaseDecl {
    std::string name;
    std::uint64_t characteristic = 0;  // 0 for Q
    bool ambient = false;
    std::vector<std::string> ambient_vars;
    std::vector<std::string> gens;
};

struct StepGroup {
    enum class Kind { Insep, Transcendental, Root };
    Kind kind = Kind::Insep;
    std::vector<std::string> items;  // expressions, or the root name
    std::string poly;                // Root: polynomial in X
};

struct FieldDecl {
    std::string name;
    std::string parent;
    std::vector<StepGroup> groups;
};

struct DescriptorDecl {
    std::string name;
    std::map<std::string, bool> flags;
    std::vector<std::string> residue_fields;
};

struct QueryDecl {
    enum class Kind { Regular, Dim, Decompose, Conditions, Intersect, SelfTensor, Theorem3 };
    Kind kind = Kind::Regular;
    std::vector<std::string> args;
    std::vector<std::string> assume;
};

struct Statement {
    std::size_t line = 0;
    std::variant<BaseDecl, FieldDecl, DescriptorDecl, QueryDecl> body;
};

struct Session {
    std::vector<Statement> statements;

    std::size_t query_count() const;
    /// Canonical text; parsing it gives back an equivalent session.
    std::string to_text() const;
};

/// Throws Syntax ("line L, column C: ..."), UnknownName and DuplicateName.
Session parse_session(const std::string& text);

std::string query_text(const QueryDecl& q);

enum class Format { Text, Json };

struct RunResult {
    std::string output;
    std::size_t errors = 0;
};

/// Executes the statements in order. Failing statements become error
/// records; execution continues with the remaining ones.
RunResult run_session(const Session& s, Format format);

}  // namespace regtensor

#endif  // REGTENSOR_SESSION_HPP

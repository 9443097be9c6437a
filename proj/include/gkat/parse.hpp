#ifndef GKAT_PARSE_HPP
#define GKAT_PARSE_HPP

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "gkat/syntax.hpp"

namespace gkat {

struct SourcePos {
    int line = 1;
    int col = 1;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, SourcePos pos)
        : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.col) +
                             ": " + msg),
          pos(pos) {}
    SourcePos pos;
};

/// Boolean grammar: b ::= "0" | "1" | ident | "!" b | b "&" b | b "|" b | "(" b ")"
/// with precedence ! > & > | and left associativity.
BExpPtr parse_bexp(const std::string& text, const TestDecl& decl);

/// While-language grammar:
///   exp     ::= seq
///   seq     ::= branch (";" branch)*
///   branch  ::= "if" b "then" branch "else" branch
///             | "while" b "do" branch | primary
///   primary ::= "0" | "1" | "assert" b | ident | "(" exp ")"
/// A bare ident must be a declared action; tests appear only in guards and
/// under "assert".
ExpPtr parse_exp(const std::string& text, Context& ctx);

/// A parsed session file: a header declaring tests and actions, followed by
/// named definitions, one per line. A definition is either an expression or
/// an automaton JSON reference ("name = @path.json", resolved by the caller).
/// Lines may carry '#' comments.
struct SessionFile {
    std::shared_ptr<Context> ctx;
    std::vector<std::string> names;  // in definition order
    std::map<std::string, ExpPtr> exprs;
    std::map<std::string, std::string> automaton_refs;  // name -> path
};

SessionFile parse_session(const std::string& text,
                          int max_tests = TestDecl::kDefaultMaxTests);

}  // namespace gkat

#endif  // GKAT_PARSE_HPP

#include "gkat/parse.hpp"

#include <cctype>
#include <optional>

namespace gkat {

namespace {

enum class Tok : uint8_t {
    Ident, Zero, One,
    KwIf, KwThen, KwElse, KwWhile, KwDo, KwAssert,
    Semi, Amp, Bar, Bang, LParen, RParen, Eq, Comma, Colon, At,
    End,
};

struct Token {
    Tok type;
    std::string text;
    SourcePos pos;
};

struct Lexer {
    const std::string& src;
    std::size_t i = 0;
    SourcePos pos;

    explicit Lexer(const std::string& s, SourcePos start = {1, 1}) : src(s), pos(start) {}

    void advance() {
        if (i < src.size() && src[i] == '\n') {
            ++pos.line;
            pos.col = 1;
        } else {
            ++pos.col;
        }
        ++i;
    }

    Token next() {
        while (i < src.size()) {
            char c = src[i];
            if (c == '#') {
                while (i < src.size() && src[i] != '\n') advance();
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
                continue;
            }
            break;
        }
        SourcePos start = pos;
        if (i >= src.size()) return {Tok::End, "", start};
        char c = src[i];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
                word += src[i];
                advance();
            }
            if (word == "if") return {Tok::KwIf, word, start};
            if (word == "then") return {Tok::KwThen, word, start};
            if (word == "else") return {Tok::KwElse, word, start};
            if (word == "while") return {Tok::KwWhile, word, start};
            if (word == "do") return {Tok::KwDo, word, start};
            if (word == "assert") return {Tok::KwAssert, word, start};
            return {Tok::Ident, word, start};
        }
        advance();
        switch (c) {
            case '0': return {Tok::Zero, "0", start};
            case '1': return {Tok::One, "1", start};
            case ';': return {Tok::Semi, ";", start};
            case '&': return {Tok::Amp, "&", start};
            case '|': return {Tok::Bar, "|", start};
            case '!': return {Tok::Bang, "!", start};
            case '(': return {Tok::LParen, "(", start};
            case ')': return {Tok::RParen, ")", start};
            case '=': return {Tok::Eq, "=", start};
            case ',': return {Tok::Comma, ",", start};
            case ':': return {Tok::Colon, ":", start};
            case '@': return {Tok::At, "@", start};
            default: throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
    }
};

struct Parser {
    Lexer lex;
    Token cur;
    const TestDecl& decl;
    Context* ctx;  // null when only Boolean expressions are parsed

    Parser(const std::string& text, const TestDecl& decl, Context* ctx,
           SourcePos start = {1, 1})
        : lex(text, start), decl(decl), ctx(ctx) {
        cur = lex.next();
    }

    void bump() { cur = lex.next(); }

    void expect(Tok t, const char* what) {
        if (cur.type != t)
            throw ParseError(std::string("expected ") + what + ", found '" + cur.text + "'",
                             cur.pos);
        bump();
    }

    // ---- Boolean expressions ----

    BExpPtr bexp() { return bexp_or(); }

    BExpPtr bexp_or() {
        BExpPtr e = bexp_and();
        while (cur.type == Tok::Bar) {
            bump();
            e = BExp::disj(std::move(e), bexp_and());
        }
        return e;
    }

    BExpPtr bexp_and() {
        BExpPtr e = bexp_unary();
        while (cur.type == Tok::Amp) {
            bump();
            e = BExp::conj(std::move(e), bexp_unary());
        }
        return e;
    }

    BExpPtr bexp_unary() {
        if (cur.type == Tok::Bang) {
            bump();
            return BExp::negate(bexp_unary());
        }
        return bexp_primary();
    }

    BExpPtr bexp_primary() {
        switch (cur.type) {
            case Tok::Zero: bump(); return BExp::zero();
            case Tok::One: bump(); return BExp::one();
            case Tok::Ident: {
                int t = decl.test_index(cur.text);
                if (t < 0) {
                    std::string msg = decl.action_index(cur.text) >= 0
                                          ? "'" + cur.text + "' is an action, not a test"
                                          : "undeclared test: " + cur.text;
                    throw ParseError(msg, cur.pos);
                }
                bump();
                return BExp::prim(t);
            }
            case Tok::LParen: {
                bump();
                BExpPtr e = bexp();
                expect(Tok::RParen, "')'");
                return e;
            }
            default:
                throw ParseError("expected a Boolean expression, found '" + cur.text + "'",
                                 cur.pos);
        }
    }

    // ---- Program expressions ----

    ExpPtr exp() {
        ExpPtr e = branch();
        while (cur.type == Tok::Semi) {
            bump();
            e = ctx->seq(e, branch());
        }
        return e;
    }

    ExpPtr branch() {
        if (cur.type == Tok::KwIf) {
            bump();
            BExpPtr b = bexp();
            expect(Tok::KwThen, "'then'");
            ExpPtr thn = branch();
            expect(Tok::KwElse, "'else'");
            ExpPtr els = branch();
            return ctx->ifte(std::move(b), thn, els);
        }
        if (cur.type == Tok::KwWhile) {
            bump();
            BExpPtr b = bexp();
            expect(Tok::KwDo, "'do'");
            ExpPtr body = branch();
            return ctx->loop(std::move(b), body);
        }
        return primary();
    }

    ExpPtr primary() {
        switch (cur.type) {
            case Tok::Zero: bump(); return ctx->zero();
            case Tok::One: bump(); return ctx->one();
            case Tok::KwAssert: {
                bump();
                return ctx->test(bexp());
            }
            case Tok::Ident: {
                int a = decl.action_index(cur.text);
                if (a < 0) {
                    std::string msg =
                        decl.test_index(cur.text) >= 0
                            ? "'" + cur.text +
                                  "' is a test; write 'assert " + cur.text + "'"
                            : "undeclared action: " + cur.text;
                    throw ParseError(msg, cur.pos);
                }
                bump();
                return ctx->act(a);
            }
            case Tok::LParen: {
                bump();
                ExpPtr e = exp();
                expect(Tok::RParen, "')'");
                return e;
            }
            default:
                throw ParseError("expected an expression, found '" + cur.text + "'", cur.pos);
        }
    }
};

std::string strip_comment(const std::string& line) {
    auto h = line.find('#');
    return h == std::string::npos ? line : line.substr(0, h);
}

bool blank(const std::string& s) {
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

// "tests: a, b; actions: p;" clauses on one line
void parse_header_line(const std::string& line, int lineno, std::vector<std::string>& tests,
                       std::vector<std::string>& actions) {
    Lexer lex(line, {lineno, 1});
    Token t = lex.next();
    while (t.type != Tok::End) {
        if (t.type != Tok::Ident || (t.text != "tests" && t.text != "actions"))
            throw ParseError("expected 'tests:' or 'actions:' in header", t.pos);
        bool is_tests = t.text == "tests";
        t = lex.next();
        if (t.type != Tok::Colon) throw ParseError("expected ':' after '" + std::string(is_tests ? "tests" : "actions") + "'", t.pos);
        t = lex.next();
        while (t.type == Tok::Ident) {
            (is_tests ? tests : actions).push_back(t.text);
            t = lex.next();
            if (t.type == Tok::Comma) t = lex.next();
        }
        if (t.type != Tok::Semi)
            throw ParseError("expected ';' to close the declaration list", t.pos);
        t = lex.next();
    }
}

}  // namespace

BExpPtr parse_bexp(const std::string& text, const TestDecl& decl) {
    Parser p(text, decl, nullptr);
    BExpPtr b = p.bexp();
    if (p.cur.type != Tok::End)
        throw ParseError("trailing input after Boolean expression: '" + p.cur.text + "'",
                         p.cur.pos);
    return b;
}

ExpPtr parse_exp(const std::string& text, Context& ctx) {
    Parser p(text, ctx.decl(), &ctx);
    ExpPtr e = p.exp();
    if (p.cur.type != Tok::End)
        throw ParseError("trailing input after expression: '" + p.cur.text + "'", p.cur.pos);
    return e;
}

SessionFile parse_session(const std::string& text, int max_tests) {
    std::vector<std::pair<int, std::string>> lines;
    {
        std::string cur;
        int lineno = 1;
        for (char c : text) {
            if (c == '\n') {
                lines.emplace_back(lineno, cur);
                cur.clear();
                ++lineno;
            } else {
                cur += c;
            }
        }
        lines.emplace_back(lineno, cur);
    }

    std::vector<std::string> tests, actions;
    bool header_done = false;
    SessionFile out;
    std::vector<std::pair<int, std::string>> defs;

    for (auto& [lineno, raw] : lines) {
        std::string line = strip_comment(raw);
        if (blank(line)) continue;
        Lexer probe(line, {lineno, 1});
        Token first = probe.next();
        bool is_header = first.type == Tok::Ident &&
                         (first.text == "tests" || first.text == "actions") &&
                         probe.next().type == Tok::Colon;
        if (is_header) {
            if (header_done)
                throw ParseError("header clause after definitions began", first.pos);
            parse_header_line(line, lineno, tests, actions);
        } else {
            header_done = true;
            defs.emplace_back(lineno, line);
        }
    }

    out.ctx = std::make_shared<Context>(TestDecl(tests, actions, max_tests));

    for (auto& [lineno, line] : defs) {
        Lexer lex(line, {lineno, 1});
        Token name = lex.next();
        if (name.type != Tok::Ident)
            throw ParseError("expected a definition 'name = expression'", name.pos);
        Token eq = lex.next();
        if (eq.type != Tok::Eq) throw ParseError("expected '=' after name", eq.pos);
        if (out.exprs.count(name.text) || out.automaton_refs.count(name.text))
            throw ParseError("duplicate definition of '" + name.text + "'", name.pos);

        std::string rest = line.substr(lex.i);
        Token peek = lex.next();
        if (peek.type == Tok::At) {
            std::string path = line.substr(lex.i);
            while (!path.empty() && std::isspace(static_cast<unsigned char>(path.front())))
                path.erase(path.begin());
            while (!path.empty() && std::isspace(static_cast<unsigned char>(path.back())))
                path.pop_back();
            if (path.empty()) throw ParseError("expected a file path after '@'", peek.pos);
            out.automaton_refs[name.text] = path;
        } else {
            Parser p(rest, out.ctx->decl(), out.ctx.get(), {lineno, eq.pos.col + 1});
            ExpPtr e = p.exp();
            if (p.cur.type != Tok::End)
                throw ParseError("trailing input after expression: '" + p.cur.text + "'",
                                 p.cur.pos);
            out.exprs[name.text] = e;
        }
        out.names.push_back(name.text);
    }
    return out;
}

}  // namespace gkat

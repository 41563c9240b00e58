#include "ljs/jsparse.hpp"

#include <cctype>
#include <cstdlib>
#include <cstring>

#include "ljs/numfmt.hpp"

namespace ljs::js {

namespace {

enum class TokKind { Ident, Keyword, Number, String, Punct, End };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;       // identifier / keyword / punct spelling
    double number = 0;
    std::string str;        // decoded string literal
    SourceSpan span;
    bool newline_before = false;
};

const char* kKeywords[] = {
    "var", "if", "else", "while", "do", "for", "in", "return", "break", "continue",
    "function", "try", "catch", "finally", "throw", "switch", "case", "default",
    "new", "delete", "typeof", "instanceof", "this", "true", "false", "null", "with",
};

// In the language but rejected: outside the subset.
const char* kRejectedWords[] = {
    "void", "class", "const", "enum", "export", "extends", "import", "super",
    "let", "yield", "debugger",
};

bool is_keyword(const std::string& w) {
    for (const char* k : kKeywords) {
        if (w == k) return true;
    }
    return false;
}
bool is_rejected_word(const std::string& w) {
    for (const char* k : kRejectedWords) {
        if (w == k) return true;
    }
    return false;
}

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        bool nl = false;
        for (;;) {
            nl = skip_trivia() || nl;
            if (pos_ >= src_.size()) {
                Token t;
                t.kind = TokKind::End;
                t.span = here(0);
                t.newline_before = nl;
                out.push_back(t);
                return out;
            }
            Token t = next();
            t.newline_before = nl;
            nl = false;
            out.push_back(std::move(t));
        }
    }

private:
    const std::string& src_;
    size_t pos_ = 0;
    uint32_t line_ = 1;
    uint32_t col_ = 1;

    [[noreturn]] void fail(const std::string& msg, SourceSpan s) { throw ParseError(msg, s); }

    SourceSpan here(size_t len) {
        return SourceSpan{static_cast<uint32_t>(pos_), static_cast<uint32_t>(pos_ + len),
                          line_, col_};
    }

    void advance(size_t n) {
        for (size_t i = 0; i < n && pos_ < src_.size(); ++i) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    // Returns true if a newline was crossed.
    bool skip_trivia() {
        bool nl = false;
        for (;;) {
            if (pos_ >= src_.size()) return nl;
            char c = src_[pos_];
            if (c == '\n') nl = true;
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance(1);
                continue;
            }
            if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
                continue;
            }
            if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
                SourceSpan start = here(2);
                advance(2);
                for (;;) {
                    if (pos_ + 1 >= src_.size()) fail("unterminated block comment", start);
                    if (src_[pos_] == '\n') nl = true;
                    if (src_[pos_] == '*' && src_[pos_ + 1] == '/') {
                        advance(2);
                        break;
                    }
                    advance(1);
                }
                continue;
            }
            return nl;
        }
    }

    Token next() {
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
            return ident_or_keyword();
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            return number();
        }
        if (c == '"' || c == '\'') return string_lit(c);
        return punct();
    }

    Token ident_or_keyword() {
        size_t b = pos_;
        SourceSpan sp = here(0);
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                src_[pos_] == '$')) {
            advance(1);
        }
        Token t;
        t.text = src_.substr(b, pos_ - b);
        sp.end = static_cast<uint32_t>(pos_);
        t.span = sp;
        if (is_rejected_word(t.text)) fail("'" + t.text + "' is not in the subset", sp);
        t.kind = is_keyword(t.text) ? TokKind::Keyword : TokKind::Ident;
        return t;
    }

    Token number() {
        size_t b = pos_;
        SourceSpan sp = here(0);
        if (src_[pos_] == '0' && pos_ + 1 < src_.size() &&
            (src_[pos_ + 1] == 'x' || src_[pos_ + 1] == 'X')) {
            advance(2);
            size_t digits = 0;
            while (pos_ < src_.size() &&
                   std::isxdigit(static_cast<unsigned char>(src_[pos_]))) {
                advance(1);
                ++digits;
            }
            if (digits == 0) fail("bad hex literal", sp);
            Token t;
            t.kind = TokKind::Number;
            t.number = static_cast<double>(std::strtoull(src_.substr(b + 2, pos_ - b - 2).c_str(),
                                                         nullptr, 16));
            sp.end = static_cast<uint32_t>(pos_);
            t.span = sp;
            return t;
        }
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance(1);
        if (pos_ < src_.size() && src_[pos_] == '.') {
            advance(1);
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance(1);
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            advance(1);
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance(1);
            size_t digits = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                advance(1);
                ++digits;
            }
            if (digits == 0) fail("bad exponent", sp);
        }
        Token t;
        t.kind = TokKind::Number;
        t.number = std::strtod(src_.substr(b, pos_ - b).c_str(), nullptr);
        sp.end = static_cast<uint32_t>(pos_);
        t.span = sp;
        return t;
    }

    Token string_lit(char quote) {
        SourceSpan sp = here(0);
        advance(1);
        std::string out;
        for (;;) {
            if (pos_ >= src_.size() || src_[pos_] == '\n') fail("unterminated string", sp);
            char c = src_[pos_];
            if (c == quote) {
                advance(1);
                break;
            }
            if (c != '\\') {
                out += c;
                advance(1);
                continue;
            }
            advance(1);
            if (pos_ >= src_.size()) fail("unterminated escape", sp);
            char esc = src_[pos_];
            advance(1);
            switch (esc) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case 'r': out += '\r'; break;
                case 'b': out += '\b'; break;
                case 'f': out += '\f'; break;
                case 'v': out += '\v'; break;
                case '0': out += '\0'; break;
                case '\'': out += '\''; break;
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                case '/': out += '/'; break;
                case '\n': break;  // line continuation
                case 'x': {
                    unsigned code = hex_digits(2, sp);
                    out += static_cast<char>(code);
                    break;
                }
                case 'u': {
                    unsigned code = hex_digits(4, sp);
                    if (code < 0x80) {
                        out += static_cast<char>(code);
                    } else if (code < 0x800) {
                        out += static_cast<char>(0xC0 | (code >> 6));
                        out += static_cast<char>(0x80 | (code & 0x3F));
                    } else {
                        out += static_cast<char>(0xE0 | (code >> 12));
                        out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
                        out += static_cast<char>(0x80 | (code & 0x3F));
                    }
                    break;
                }
                default: fail("unknown escape in string", here(1));
            }
        }
        Token t;
        t.kind = TokKind::String;
        t.str = std::move(out);
        sp.end = static_cast<uint32_t>(pos_);
        t.span = sp;
        return t;
    }

    unsigned hex_digits(int n, SourceSpan sp) {
        unsigned code = 0;
        for (int i = 0; i < n; ++i) {
            if (pos_ >= src_.size()) fail("bad hex escape", sp);
            char h = src_[pos_];
            advance(1);
            code <<= 4;
            if (h >= '0' && h <= '9') code |= h - '0';
            else if (h >= 'a' && h <= 'f') code |= h - 'a' + 10;
            else if (h >= 'A' && h <= 'F') code |= h - 'A' + 10;
            else fail("bad hex escape", sp);
        }
        return code;
    }

    Token punct() {
        static const char* kPuncts[] = {
            "===", "!==", "==", "!=", "<=", ">=", "&&", "||", "++", "--",
            "+=", "-=", "*=", "/=", "%=",
            "{", "}", "(", ")", "[", "]", ";", ",", "<", ">", "+", "-", "*", "/",
            "%", "!", "=", "?", ":", ".",
        };
        for (const char* p : kPuncts) {
            size_t len = std::strlen(p);
            if (src_.compare(pos_, len, p) == 0) {
                Token t;
                t.kind = TokKind::Punct;
                t.text = p;
                t.span = here(len);
                advance(len);
                return t;
            }
        }
        fail(std::string("unexpected character '") + src_[pos_] + "'", here(1));
    }
};

class Parser {
public:
    explicit Parser(const std::string& src) : toks_(Lexer(src).run()) {}

    Program parse_program() {
        Program p;
        while (!at_end()) p.body.push_back(parse_statement());
        return p;
    }

private:
    std::vector<Token> toks_;
    size_t i_ = 0;
    // The `in` operator is suppressed while a for-init is parsed, like the
    // grammar's no-in productions; bracketed contexts lift the restriction.
    bool no_in_ = false;

    struct NoInGuard {
        Parser& p;
        bool saved;
        explicit NoInGuard(Parser& parser) : p(parser), saved(parser.no_in_) {
            p.no_in_ = false;
        }
        ~NoInGuard() { p.no_in_ = saved; }
    };

    const Token& tok() const { return toks_[i_]; }
    const Token& prev() const { return toks_[i_ ? i_ - 1 : 0]; }
    bool at_end() const { return tok().kind == TokKind::End; }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, tok().span); }
    [[noreturn]] void fail_at(const std::string& msg, SourceSpan s) { throw ParseError(msg, s); }

    bool is_punct(const char* p) const {
        return tok().kind == TokKind::Punct && tok().text == p;
    }
    bool is_kw(const char* k) const {
        return tok().kind == TokKind::Keyword && tok().text == k;
    }
    bool eat_punct(const char* p) {
        if (is_punct(p)) {
            ++i_;
            return true;
        }
        return false;
    }
    bool eat_kw(const char* k) {
        if (is_kw(k)) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect_punct(const char* p) {
        if (!eat_punct(p)) fail(std::string("expected '") + p + "'");
    }
    void expect_kw(const char* k) {
        if (!eat_kw(k)) fail(std::string("expected '") + k + "'");
    }

    std::string expect_ident() {
        if (tok().kind != TokKind::Ident) fail("expected identifier");
        std::string name = tok().text;
        if (name == "eval") fail("'eval' is not in the subset");
        if (name == "arguments") fail("'arguments' is not in the subset");
        ++i_;
        return name;
    }

    SourceSpan span_from(const SourceSpan& start) const {
        SourceSpan s = start;
        s.end = prev().span.end;
        return s;
    }

    // Automatic semicolon insertion, simplified: a terminator is accepted at
    // an explicit ';', before '}', at EOF, or at a newline.
    void expect_semicolon() {
        if (eat_punct(";")) return;
        if (is_punct("}") || at_end()) return;
        if (tok().newline_before) return;
        fail("expected ';'");
    }

    // ---- statements ----

    StmtPtr parse_statement() {
        SourceSpan start = tok().span;
        if (is_punct("{")) return parse_block();
        if (eat_punct(";")) return make_stmt(EmptyStmt{}, span_from(start));
        if (is_kw("var")) return parse_var();
        if (is_kw("if")) return parse_if();
        if (is_kw("while")) return parse_while();
        if (is_kw("do")) return parse_do_while();
        if (is_kw("for")) return parse_for();
        if (is_kw("return")) return parse_return();
        if (is_kw("break") || is_kw("continue")) return parse_break_continue();
        if (is_kw("try")) return parse_try();
        if (is_kw("throw")) return parse_throw();
        if (is_kw("switch")) return parse_switch();
        if (is_kw("with")) return parse_with();
        if (is_kw("function")) return parse_func_decl();
        if (tok().kind == TokKind::Ident && toks_[i_ + 1].kind == TokKind::Punct &&
            toks_[i_ + 1].text == ":") {
            std::string label = expect_ident();
            expect_punct(":");
            StmtPtr body = parse_statement();
            return make_stmt(LabeledStmt{std::move(label), std::move(body)}, span_from(start));
        }
        ExprPtr e = parse_expression();
        expect_semicolon();
        return make_stmt(ExprStmt{std::move(e)}, span_from(start));
    }

    StmtPtr parse_block() {
        SourceSpan start = tok().span;
        expect_punct("{");
        std::vector<StmtPtr> body;
        while (!is_punct("}")) {
            if (at_end()) fail("unterminated block");
            body.push_back(parse_statement());
        }
        expect_punct("}");
        return make_stmt(BlockStmt{std::move(body)}, span_from(start));
    }

    std::vector<StmtPtr> parse_block_stmts() {
        expect_punct("{");
        std::vector<StmtPtr> body;
        while (!is_punct("}")) {
            if (at_end()) fail("unterminated block");
            body.push_back(parse_statement());
        }
        expect_punct("}");
        return body;
    }

    VarDecl parse_var_declarators() {
        VarDecl vd;
        for (;;) {
            std::string name = expect_ident();
            ExprPtr init;
            if (eat_punct("=")) init = parse_assignment();
            vd.decls.emplace_back(std::move(name), std::move(init));
            if (!eat_punct(",")) break;
        }
        return vd;
    }

    StmtPtr parse_var() {
        SourceSpan start = tok().span;
        expect_kw("var");
        VarDecl vd = parse_var_declarators();
        expect_semicolon();
        return make_stmt(std::move(vd), span_from(start));
    }

    StmtPtr parse_if() {
        SourceSpan start = tok().span;
        expect_kw("if");
        expect_punct("(");
        ExprPtr cond = parse_expression();
        expect_punct(")");
        StmtPtr then_stmt = parse_statement();
        StmtPtr else_stmt;
        if (eat_kw("else")) else_stmt = parse_statement();
        return make_stmt(IfStmt{std::move(cond), std::move(then_stmt), std::move(else_stmt)},
                         span_from(start));
    }

    StmtPtr parse_while() {
        SourceSpan start = tok().span;
        expect_kw("while");
        expect_punct("(");
        ExprPtr cond = parse_expression();
        expect_punct(")");
        StmtPtr body = parse_statement();
        return make_stmt(WhileStmt{std::move(cond), std::move(body)}, span_from(start));
    }

    StmtPtr parse_do_while() {
        SourceSpan start = tok().span;
        expect_kw("do");
        StmtPtr body = parse_statement();
        expect_kw("while");
        expect_punct("(");
        ExprPtr cond = parse_expression();
        expect_punct(")");
        expect_semicolon();
        return make_stmt(DoWhileStmt{std::move(body), std::move(cond)}, span_from(start));
    }

    StmtPtr parse_for() {
        SourceSpan start = tok().span;
        expect_kw("for");
        expect_punct("(");
        StmtPtr init;
        if (eat_punct(";")) {
            // no init
        } else if (is_kw("var")) {
            SourceSpan vstart = tok().span;
            expect_kw("var");
            no_in_ = true;
            VarDecl vd = parse_var_declarators();
            no_in_ = false;
            if (vd.decls.size() == 1 && !vd.decls[0].second && is_kw("in")) {
                ++i_;  // 'in'
                ExprPtr obj = parse_expression();
                expect_punct(")");
                StmtPtr body = parse_statement();
                return make_stmt(
                    ForInStmt{true, vd.decls[0].first, std::move(obj), std::move(body)},
                    span_from(start));
            }
            init = make_stmt(std::move(vd), span_from(vstart));
            expect_punct(";");
        } else {
            SourceSpan estart = tok().span;
            no_in_ = true;
            ExprPtr e = parse_expression();
            no_in_ = false;
            if (is_kw("in")) {
                const auto* id = e->as<Ident>();
                if (!id) fail("for-in target must be an identifier");
                ++i_;  // 'in'
                ExprPtr obj = parse_expression();
                expect_punct(")");
                StmtPtr body = parse_statement();
                return make_stmt(ForInStmt{false, id->name, std::move(obj), std::move(body)},
                                 span_from(start));
            }
            init = make_stmt(ExprStmt{std::move(e)}, span_from(estart));
            expect_punct(";");
        }
        ExprPtr cond;
        if (!is_punct(";")) cond = parse_expression();
        expect_punct(";");
        ExprPtr update;
        if (!is_punct(")")) update = parse_expression();
        expect_punct(")");
        StmtPtr body = parse_statement();
        return make_stmt(
            ForStmt{std::move(init), std::move(cond), std::move(update), std::move(body)},
            span_from(start));
    }

    StmtPtr parse_return() {
        SourceSpan start = tok().span;
        expect_kw("return");
        ExprPtr value;
        if (!is_punct(";") && !is_punct("}") && !at_end() && !tok().newline_before) {
            value = parse_expression();
        }
        expect_semicolon();
        return make_stmt(ReturnStmt{std::move(value)}, span_from(start));
    }

    StmtPtr parse_break_continue() {
        SourceSpan start = tok().span;
        bool is_break = is_kw("break");
        ++i_;
        std::string label;
        if (tok().kind == TokKind::Ident && !tok().newline_before) label = expect_ident();
        expect_semicolon();
        if (is_break) return make_stmt(BreakStmt{std::move(label)}, span_from(start));
        return make_stmt(ContinueStmt{std::move(label)}, span_from(start));
    }

    StmtPtr parse_try() {
        SourceSpan start = tok().span;
        expect_kw("try");
        TryStmt t;
        t.block = parse_block_stmts();
        if (eat_kw("catch")) {
            t.has_catch = true;
            expect_punct("(");
            t.catch_binder = expect_ident();
            expect_punct(")");
            t.catch_block = parse_block_stmts();
        }
        if (eat_kw("finally")) {
            t.has_finally = true;
            t.finally_block = parse_block_stmts();
        }
        if (!t.has_catch && !t.has_finally) fail("try without catch or finally");
        return make_stmt(std::move(t), span_from(start));
    }

    StmtPtr parse_throw() {
        SourceSpan start = tok().span;
        expect_kw("throw");
        if (tok().newline_before) fail("newline after throw");
        ExprPtr value = parse_expression();
        expect_semicolon();
        return make_stmt(ThrowStmt{std::move(value)}, span_from(start));
    }

    StmtPtr parse_switch() {
        SourceSpan start = tok().span;
        expect_kw("switch");
        expect_punct("(");
        ExprPtr disc = parse_expression();
        expect_punct(")");
        expect_punct("{");
        SwitchStmt sw;
        sw.disc = std::move(disc);
        while (!is_punct("}")) {
            if (at_end()) fail("unterminated switch");
            SwitchCase c;
            if (eat_kw("case")) {
                c.test = parse_expression();
            } else if (eat_kw("default")) {
                // null test
            } else {
                fail("expected 'case' or 'default'");
            }
            expect_punct(":");
            while (!is_punct("}") && !is_kw("case") && !is_kw("default")) {
                if (at_end()) fail("unterminated switch");
                c.body.push_back(parse_statement());
            }
            sw.cases.push_back(std::move(c));
        }
        expect_punct("}");
        return make_stmt(std::move(sw), span_from(start));
    }

    StmtPtr parse_with() {
        SourceSpan start = tok().span;
        expect_kw("with");
        expect_punct("(");
        ExprPtr obj = parse_expression();
        expect_punct(")");
        StmtPtr body = parse_statement();
        return make_stmt(WithStmt{std::move(obj), std::move(body)}, span_from(start));
    }

    StmtPtr parse_func_decl() {
        SourceSpan start = tok().span;
        expect_kw("function");
        std::string name = expect_ident();
        auto [params, body] = parse_func_rest();
        return make_stmt(FuncDecl{std::move(name), std::move(params), std::move(body)},
                         span_from(start));
    }

    std::pair<std::vector<std::string>, std::vector<StmtPtr>> parse_func_rest() {
        NoInGuard guard(*this);
        expect_punct("(");
        std::vector<std::string> params;
        if (!is_punct(")")) {
            for (;;) {
                params.push_back(expect_ident());
                if (!eat_punct(",")) break;
            }
        }
        expect_punct(")");
        std::vector<StmtPtr> body = parse_block_stmts();
        return {std::move(params), std::move(body)};
    }

    // ---- expressions ----

    ExprPtr parse_expression() {
        SourceSpan start = tok().span;
        ExprPtr e = parse_assignment();
        while (eat_punct(",")) {
            ExprPtr rhs = parse_assignment();
            e = make_expr(Comma{std::move(e), std::move(rhs)}, span_from(start));
        }
        return e;
    }

    static bool valid_assign_target(const Expr& e) { return e.is<Ident>() || e.is<Member>(); }

    ExprPtr parse_assignment() {
        SourceSpan start = tok().span;
        ExprPtr lhs = parse_conditional();
        AssignOp op;
        if (is_punct("=")) op = AssignOp::Assign;
        else if (is_punct("+=")) op = AssignOp::AddAssign;
        else if (is_punct("-=")) op = AssignOp::SubAssign;
        else if (is_punct("*=")) op = AssignOp::MulAssign;
        else if (is_punct("/=")) op = AssignOp::DivAssign;
        else if (is_punct("%=")) op = AssignOp::ModAssign;
        else return lhs;
        if (!valid_assign_target(*lhs)) fail("invalid assignment target");
        ++i_;
        ExprPtr rhs = parse_assignment();
        return make_expr(Assign{std::move(lhs), op, std::move(rhs)}, span_from(start));
    }

    ExprPtr parse_conditional() {
        SourceSpan start = tok().span;
        ExprPtr cond = parse_or();
        if (!eat_punct("?")) return cond;
        ExprPtr t = parse_assignment();
        expect_punct(":");
        ExprPtr f = parse_assignment();
        return make_expr(Cond{std::move(cond), std::move(t), std::move(f)}, span_from(start));
    }

    ExprPtr parse_or() {
        SourceSpan start = tok().span;
        ExprPtr e = parse_and();
        while (eat_punct("||")) {
            ExprPtr rhs = parse_and();
            e = make_expr(Binary{BinOp::Or, std::move(e), std::move(rhs)}, span_from(start));
        }
        return e;
    }

    ExprPtr parse_and() {
        SourceSpan start = tok().span;
        ExprPtr e = parse_equality();
        while (eat_punct("&&")) {
            ExprPtr rhs = parse_equality();
            e = make_expr(Binary{BinOp::And, std::move(e), std::move(rhs)}, span_from(start));
        }
        return e;
    }

    ExprPtr parse_equality() {
        SourceSpan start = tok().span;
        ExprPtr e = parse_relational();
        for (;;) {
            BinOp op;
            if (is_punct("===")) op = BinOp::StrictEq;
            else if (is_punct("!==")) op = BinOp::StrictNe;
            else if (is_punct("==")) op = BinOp::Eq;
            else if (is_punct("!=")) op = BinOp::Ne;
            else return e;
            ++i_;
            ExprPtr rhs = parse_relational();
            e = make_expr(Binary{op, std::move(e), std::move(rhs)}, span_from(start));
        }
    }

    ExprPtr parse_relational() {
        SourceSpan start = tok().span;
        ExprPtr e = parse_additive();
        for (;;) {
            BinOp op;
            if (is_punct("<")) op = BinOp::Lt;
            else if (is_punct("<=")) op = BinOp::Le;
            else if (is_punct(">")) op = BinOp::Gt;
            else if (is_punct(">=")) op = BinOp::Ge;
            else if (is_kw("in") && !no_in_) op = BinOp::In;
            else if (is_kw("instanceof")) op = BinOp::Instanceof;
            else return e;
            ++i_;
            ExprPtr rhs = parse_additive();
            e = make_expr(Binary{op, std::move(e), std::move(rhs)}, span_from(start));
        }
    }

    ExprPtr parse_additive() {
        SourceSpan start = tok().span;
        ExprPtr e = parse_multiplicative();
        for (;;) {
            BinOp op;
            if (is_punct("+")) op = BinOp::Add;
            else if (is_punct("-")) op = BinOp::Sub;
            else return e;
            ++i_;
            ExprPtr rhs = parse_multiplicative();
            e = make_expr(Binary{op, std::move(e), std::move(rhs)}, span_from(start));
        }
    }

    ExprPtr parse_multiplicative() {
        SourceSpan start = tok().span;
        ExprPtr e = parse_unary();
        for (;;) {
            BinOp op;
            if (is_punct("*")) op = BinOp::Mul;
            else if (is_punct("/")) op = BinOp::Div;
            else if (is_punct("%")) op = BinOp::Mod;
            else return e;
            ++i_;
            ExprPtr rhs = parse_unary();
            e = make_expr(Binary{op, std::move(e), std::move(rhs)}, span_from(start));
        }
    }

    ExprPtr parse_unary() {
        SourceSpan start = tok().span;
        if (eat_kw("typeof")) {
            ExprPtr e = parse_unary();
            return make_expr(Unary{UnOp::TypeOf, std::move(e)}, span_from(start));
        }
        if (eat_punct("!")) {
            ExprPtr e = parse_unary();
            return make_expr(Unary{UnOp::Not, std::move(e)}, span_from(start));
        }
        if (eat_punct("-")) {
            ExprPtr e = parse_unary();
            return make_expr(Unary{UnOp::Neg, std::move(e)}, span_from(start));
        }
        if (eat_kw("delete")) {
            ExprPtr e = parse_unary();
            if (!e->is<Member>() && !e->is<Ident>()) fail("delete expects a member or identifier");
            return make_expr(DeleteExpr{std::move(e)}, span_from(start));
        }
        if (is_punct("++") || is_punct("--")) {
            bool inc = tok().text == "++";
            ++i_;
            ExprPtr e = parse_unary();
            if (!valid_assign_target(*e)) fail("invalid increment/decrement target");
            return make_expr(IncDec{inc, true, std::move(e)}, span_from(start));
        }
        return parse_postfix();
    }

    ExprPtr parse_postfix() {
        SourceSpan start = tok().span;
        ExprPtr e = parse_lhs_expr();
        if ((is_punct("++") || is_punct("--")) && !tok().newline_before) {
            bool inc = tok().text == "++";
            if (!valid_assign_target(*e)) fail("invalid increment/decrement target");
            ++i_;
            e = make_expr(IncDec{inc, false, std::move(e)}, span_from(start));
        }
        return e;
    }

    std::vector<ExprPtr> parse_arguments() {
        NoInGuard guard(*this);
        expect_punct("(");
        std::vector<ExprPtr> args;
        if (!is_punct(")")) {
            for (;;) {
                args.push_back(parse_assignment());
                if (!eat_punct(",")) break;
            }
        }
        expect_punct(")");
        return args;
    }

    ExprPtr parse_lhs_expr() {
        SourceSpan start = tok().span;
        ExprPtr e = parse_new_or_member();
        for (;;) {
            if (is_punct("(")) {
                if (const auto* id = e->as<Ident>(); id && id->name == "eval") {
                    fail_at("'eval' is not in the subset", e->span);
                }
                std::vector<ExprPtr> args = parse_arguments();
                e = make_expr(Call{std::move(e), std::move(args)}, span_from(start));
            } else if (eat_punct(".")) {
                e = make_expr(Member{std::move(e), member_name(), nullptr}, span_from(start));
            } else if (eat_punct("[")) {
                ExprPtr f;
                {
                    NoInGuard guard(*this);
                    f = parse_expression();
                }
                expect_punct("]");
                e = make_expr(Member{std::move(e), std::nullopt, std::move(f)}, span_from(start));
            } else {
                return e;
            }
        }
    }

    std::string member_name() {
        // Keywords are fine after '.'.
        if (tok().kind != TokKind::Ident && tok().kind != TokKind::Keyword) {
            fail("expected property name");
        }
        std::string name = tok().text;
        ++i_;
        return name;
    }

    ExprPtr parse_new_or_member() {
        SourceSpan start = tok().span;
        if (eat_kw("new")) {
            ExprPtr callee = parse_new_or_member();
            std::vector<ExprPtr> args;
            if (is_punct("(")) args = parse_arguments();
            return make_expr(New{std::move(callee), std::move(args)}, span_from(start));
        }
        ExprPtr e = parse_primary();
        for (;;) {
            if (eat_punct(".")) {
                e = make_expr(Member{std::move(e), member_name(), nullptr}, span_from(start));
            } else if (eat_punct("[")) {
                ExprPtr f;
                {
                    NoInGuard guard(*this);
                    f = parse_expression();
                }
                expect_punct("]");
                e = make_expr(Member{std::move(e), std::nullopt, std::move(f)}, span_from(start));
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_primary() {
        SourceSpan start = tok().span;
        if (tok().kind == TokKind::Number) {
            double v = tok().number;
            ++i_;
            return make_expr(NumberLit{v}, span_from(start));
        }
        if (tok().kind == TokKind::String) {
            std::string v = tok().str;
            ++i_;
            return make_expr(StringLit{std::move(v)}, span_from(start));
        }
        if (eat_kw("true")) return make_expr(BoolLit{true}, span_from(start));
        if (eat_kw("false")) return make_expr(BoolLit{false}, span_from(start));
        if (eat_kw("null")) return make_expr(NullLit{}, span_from(start));
        if (eat_kw("this")) return make_expr(This{}, span_from(start));
        if (eat_punct("(")) {
            ExprPtr e;
            {
                NoInGuard guard(*this);
                e = parse_expression();
            }
            expect_punct(")");
            return e;
        }
        if (is_punct("[")) return parse_array();
        if (is_punct("{")) return parse_object();
        if (eat_kw("function")) {
            std::string name;
            if (tok().kind == TokKind::Ident) name = expect_ident();
            auto [params, body] = parse_func_rest();
            return make_expr(FuncLit{std::move(name), std::move(params), std::move(body)},
                             span_from(start));
        }
        if (tok().kind == TokKind::Ident) {
            std::string name = expect_ident();
            return make_expr(Ident{std::move(name)}, span_from(start));
        }
        fail("expected expression");
    }

    ExprPtr parse_array() {
        NoInGuard guard(*this);
        SourceSpan start = tok().span;
        expect_punct("[");
        std::vector<ExprPtr> elems;
        if (!is_punct("]")) {
            for (;;) {
                if (is_punct(",")) fail("array elisions are not in the subset");
                elems.push_back(parse_assignment());
                if (!eat_punct(",")) break;
            }
        }
        expect_punct("]");
        return make_expr(ArrayLit{std::move(elems)}, span_from(start));
    }

    ExprPtr parse_object() {
        NoInGuard guard(*this);
        SourceSpan start = tok().span;
        expect_punct("{");
        std::vector<std::pair<std::string, ExprPtr>> fields;
        if (!is_punct("}")) {
            for (;;) {
                std::string key;
                if (tok().kind == TokKind::String) {
                    key = tok().str;
                    ++i_;
                } else if (tok().kind == TokKind::Number) {
                    key = js_number_to_string(tok().number);
                    ++i_;
                } else if (tok().kind == TokKind::Ident || tok().kind == TokKind::Keyword) {
                    key = tok().text;
                    ++i_;
                    if ((key == "get" || key == "set") && !is_punct(":")) {
                        fail("getters/setters are not in the subset");
                    }
                } else {
                    fail("expected property key");
                }
                expect_punct(":");
                fields.emplace_back(std::move(key), parse_assignment());
                if (!eat_punct(",")) break;
            }
        }
        expect_punct("}");
        return make_expr(ObjectLit{std::move(fields)}, span_from(start));
    }
};

}  // namespace

Program parse(const std::string& source) { return Parser(source).parse_program(); }

}  // namespace ljs::js

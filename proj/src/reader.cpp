#include "ljs/reader.hpp"

#include <cmath>

#include <cctype>
#include <cstdlib>

namespace ljs {

namespace {

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '%';
}
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '%' ||
           c == '~';
}

class Reader {
public:
    explicit Reader(const std::string& text) : s_(text) {}

    ExprPtr parse() {
        ExprPtr e = parse_seq();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return e;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) { throw CoreReadError(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() &&
               std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    // Peeks an identifier-ish word without consuming.
    std::string peek_word() {
        skip_ws();
        size_t p = pos_;
        if (p >= s_.size() || !ident_start(s_[p])) return {};
        size_t b = p;
        while (p < s_.size() && ident_char(s_[p])) ++p;
        return s_.substr(b, p - b);
    }
    bool eat_word(const std::string& w) {
        if (peek_word() == w) {
            pos_ += w.size();
            return true;
        }
        return false;
    }
    std::string expect_ident() {
        std::string w = peek_word();
        if (w.empty()) fail("expected identifier");
        if (is_keyword(w)) fail("keyword '" + w + "' used as identifier");
        pos_ += w.size();
        return w;
    }
    static bool is_keyword(const std::string& w) {
        static const char* kw[] = {"let", "func", "return", "ref", "deref", "delete",
                                   "if", "else", "while", "break", "try", "catch",
                                   "finally", "throw", "err", "true", "false",
                                   "undefined", "null", "NaN", "Infinity"};
        for (const char* k : kw) {
            if (w == k) return true;
        }
        return false;
    }

    double parse_number_body() {
        size_t b = pos_;
        while (pos_ < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
            ++pos_;
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        return std::strtod(s_.substr(b, pos_ - b).c_str(), nullptr);
    }

    std::string parse_string_body() {
        expect('"');
        std::string out;
        while (pos_ < s_.size() && s_[pos_] != '"') {
            char c = s_[pos_++];
            if (c != '\\') {
                out += c;
                continue;
            }
            if (pos_ >= s_.size()) fail("unterminated escape");
            char esc = s_[pos_++];
            switch (esc) {
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                case '/': out += '/'; break;
                case 'n': out += '\n'; break;
                case 'r': out += '\r'; break;
                case 't': out += '\t'; break;
                case 'b': out += '\b'; break;
                case 'f': out += '\f'; break;
                case 'u': {
                    if (pos_ + 4 > s_.size()) fail("bad \\u escape");
                    unsigned code = 0;
                    for (int i = 0; i < 4; ++i) {
                        char h = s_[pos_++];
                        code <<= 4;
                        if (h >= '0' && h <= '9') code |= h - '0';
                        else if (h >= 'a' && h <= 'f') code |= h - 'a' + 10;
                        else if (h >= 'A' && h <= 'F') code |= h - 'A' + 10;
                        else fail("bad \\u escape");
                    }
                    // UTF-8 encode (BMP only).
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
                default: fail("unknown escape");
            }
        }
        expect('"');
        return out;
    }

    // seq: assign (';' seq)?   right-assoc
    ExprPtr parse_seq() {
        ExprPtr lhs = parse_assign();
        if (peek() == ';') {
            ++pos_;
            return make_seq(std::move(lhs), parse_seq());
        }
        return lhs;
    }

    // assign: prefix ('=' assign)?  — a trailing postfix-get turns into a
    // field update; anything else (including a parenthesized get) is setref.
    ExprPtr parse_assign() {
        auto [lhs, bare_get] = parse_prefix();
        if (peek() == '=') {
            ++pos_;
            ExprPtr rhs = parse_assign();
            if (bare_get) {
                const auto* g = lhs->as<GetFieldExpr>();
                return make_update(g->object, g->field, std::move(rhs));
            }
            return make_setref(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    struct Parsed {
        ExprPtr expr;
        bool bare_get = false;  // ends in an unparenthesized [field] postfix
    };

    Parsed parse_prefix() {
        std::string w = peek_word();
        if (w == "let") {
            pos_ += w.size();
            expect('(');
            std::vector<std::pair<std::string, ExprPtr>> binds;
            for (;;) {
                std::string name = expect_ident();
                expect('=');
                binds.emplace_back(std::move(name), parse_seq());
                if (!eat(',')) break;
            }
            expect(')');
            ExprPtr body = parse_seq();
            for (auto it = binds.rbegin(); it != binds.rend(); ++it) {
                body = make_let(it->first, it->second, std::move(body));
            }
            return {std::move(body), false};
        }
        if (w == "ref") {
            pos_ += w.size();
            return {make_ref(parse_atom()), false};
        }
        if (w == "deref") {
            pos_ += w.size();
            return {make_deref(parse_atom()), false};
        }
        if (w == "throw") {
            pos_ += w.size();
            return {make_throw(parse_atom()), false};
        }
        if (w == "err") {
            pos_ += w.size();
            return {make_err(parse_atom()), false};
        }
        if (w == "break") {
            pos_ += w.size();
            std::string label = expect_ident();
            return {make_break(std::move(label), parse_atom()), false};
        }
        if (w == "delete") {
            pos_ += w.size();
            Parsed p = parse_postfix();
            if (!p.bare_get) fail("delete expects e[e]");
            const auto* g = p.expr->as<GetFieldExpr>();
            return {make_delete(g->object, g->field), false};
        }
        return parse_postfix();
    }

    Parsed parse_postfix() {
        Parsed p{parse_atom(), false};
        for (;;) {
            char c = peek();
            if (c == '(') {
                ++pos_;
                std::vector<ExprPtr> args;
                if (peek() != ')') {
                    for (;;) {
                        args.push_back(parse_assign());
                        if (!eat(',')) break;
                    }
                }
                expect(')');
                p = {make_app(std::move(p.expr), std::move(args)), false};
            } else if (c == '[') {
                ++pos_;
                ExprPtr field = parse_seq();
                expect(']');
                p = {make_get(std::move(p.expr), std::move(field)), true};
            } else {
                break;
            }
        }
        return p;
    }

    ExprPtr parse_braced_body() {
        expect('{');
        ExprPtr e = parse_seq();
        expect('}');
        return e;
    }

    ExprPtr parse_atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_seq();
            expect(')');
            return e;
        }
        if (c == '#') {
            ++pos_;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                fail("expected location id");
            }
            uint64_t id = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                id = id * 10 + (s_[pos_++] - '0');
            }
            return make_loc(Location{id});
        }
        if (c == '@') {
            ++pos_;
            std::string name = peek_word();
            if (name.empty()) fail("expected primitive name");
            pos_ += name.size();
            auto op = prim_by_name(name);
            if (!op) fail("unknown primitive @" + name);
            expect('(');
            std::vector<ExprPtr> args;
            if (peek() != ')') {
                for (;;) {
                    args.push_back(parse_assign());
                    if (!eat(',')) break;
                }
            }
            expect(')');
            if (static_cast<int>(args.size()) != prim_arity(*op)) {
                fail("wrong arity for @" + name);
            }
            return make_prim(*op, std::move(args));
        }
        if (c == '"') return make_string(parse_string_body());
        if (c == '-') {
            ++pos_;
            if (eat_word("Infinity")) return make_number(-HUGE_VAL);
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                return make_number(-parse_number_body());
            }
            fail("expected number after '-'");
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            skip_ws();
            return make_number(parse_number_body());
        }
        if (c == '{') {
            ++pos_;
            std::vector<std::pair<std::string, ExprPtr>> fields;
            if (peek() != '}') {
                for (;;) {
                    std::string key = parse_string_body();
                    expect(':');
                    fields.emplace_back(std::move(key), parse_assign());
                    if (!eat(',')) break;
                }
            }
            expect('}');
            return make_object(std::move(fields));
        }

        std::string w = peek_word();
        if (w.empty()) fail("expected expression");
        if (w == "true") { pos_ += w.size(); return make_boolean(true); }
        if (w == "false") { pos_ += w.size(); return make_boolean(false); }
        if (w == "undefined") { pos_ += w.size(); return make_undefined(); }
        if (w == "null") { pos_ += w.size(); return make_null(); }
        if (w == "NaN") { pos_ += w.size(); return make_number(std::nan("")); }
        if (w == "Infinity") { pos_ += w.size(); return make_number(HUGE_VAL); }
        if (w == "func") {
            pos_ += w.size();
            expect('(');
            std::vector<std::string> params;
            if (peek() != ')') {
                for (;;) {
                    std::string p = expect_ident();
                    for (const auto& q : params) {
                        if (q == p) fail("duplicate parameter '" + p + "'");
                    }
                    params.push_back(std::move(p));
                    if (!eat(',')) break;
                }
            }
            expect(')');
            expect('{');
            if (!eat_word("return")) fail("expected 'return' in function body");
            ExprPtr body = parse_seq();
            expect('}');
            return make_func(std::move(params), std::move(body));
        }
        if (w == "if") {
            pos_ += w.size();
            expect('(');
            ExprPtr cond = parse_seq();
            expect(')');
            ExprPtr then_b = parse_braced_body();
            if (!eat_word("else")) fail("expected 'else'");
            ExprPtr else_b = parse_braced_body();
            return make_if(std::move(cond), std::move(then_b), std::move(else_b));
        }
        if (w == "while") {
            pos_ += w.size();
            expect('(');
            ExprPtr cond = parse_seq();
            expect(')');
            return make_while(std::move(cond), parse_braced_body());
        }
        if (w == "try") {
            pos_ += w.size();
            ExprPtr body = parse_braced_body();
            if (eat_word("catch")) {
                expect('(');
                std::string binder = expect_ident();
                expect(')');
                return make_trycatch(std::move(body), std::move(binder), parse_braced_body());
            }
            if (eat_word("finally")) {
                return make_tryfinally(std::move(body), parse_braced_body());
            }
            fail("expected 'catch' or 'finally'");
        }
        if (is_keyword(w)) fail("unexpected keyword '" + w + "'");

        // Identifier, or a label when a ':' follows.
        pos_ += w.size();
        if (peek() == ':') {
            ++pos_;
            return make_label(w, parse_braced_body());
        }
        return make_id(w);
    }
};

}  // namespace

ExprPtr read_core(const std::string& text) { return Reader(text).parse(); }

}  // namespace ljs

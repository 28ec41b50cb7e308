#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "entropia/ingestion.hpp"

namespace entropia {

SyntaxError::SyntaxError(std::string file, int line, int column, const std::string& expected,
                         const std::string& got)
    : std::runtime_error(file + ":" + std::to_string(line) + ":" + std::to_string(column) +
                         ": expected " + expected + ", got " + got),
      file_(std::move(file)),
      line_(line),
      column_(column) {}

namespace {

bool is_builtin_type(const std::string& s) {
    return s == "void" || s == "int" || s == "bool" || s == "string";
}

bool is_keyword(const std::string& s) {
    return s == "class" || s == "extends" || s == "if" || s == "else" || s == "while" ||
           s == "for" || s == "return" || s == "true" || s == "false" || is_builtin_type(s);
}

enum class Tok { Ident, Number, String, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int column = 1;

    std::string describe() const {
        switch (kind) {
            case Tok::End: return "end of file";
            case Tok::String: return "string literal";
            default: return "'" + text + "'";
        }
    }
};

class Lexer {
public:
    Lexer(const std::string& file, const std::string& text) : file_(file), text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_trivia();
            Token t;
            t.line = line_;
            t.column = column_;
            if (pos_ >= text_.size()) {
                out.push_back(t);
                return out;
            }
            char c = text_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                t.kind = Tok::Ident;
                while (pos_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                        text_[pos_] == '_')) {
                    t.text += advance();
                }
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                t.kind = Tok::Number;
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    t.text += advance();
                }
            } else if (c == '"') {
                t.kind = Tok::String;
                advance();
                while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') {
                    t.text += advance();
                }
                if (pos_ >= text_.size() || text_[pos_] != '"') {
                    throw SyntaxError(file_, t.line, t.column, "closing '\"'",
                                      "end of line");
                }
                advance();
            } else {
                t.kind = Tok::Punct;
                t.text += advance();
                // two-character operators
                if (pos_ < text_.size()) {
                    char n = text_[pos_];
                    if ((t.text == "=" && n == '=') || (t.text == "!" && n == '=') ||
                        (t.text == "<" && n == '=') || (t.text == ">" && n == '=') ||
                        (t.text == "&" && n == '&') || (t.text == "|" && n == '|')) {
                        t.text += advance();
                    }
                }
            }
            out.push_back(std::move(t));
        }
    }

private:
    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip_trivia() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
                int sl = line_, sc = column_;
                advance();
                advance();
                while (true) {
                    if (pos_ + 1 >= text_.size()) {
                        throw SyntaxError(file_, sl, sc, "closing '*/'", "end of file");
                    }
                    if (text_[pos_] == '*' && text_[pos_ + 1] == '/') {
                        advance();
                        advance();
                        break;
                    }
                    advance();
                }
            } else {
                break;
            }
        }
    }

    std::string file_;
    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

// Call whose receiver identifier could not be resolved from local context;
// settled once every class and its inherited fields are known.
struct PendingCall {
    std::size_t call_index;
    std::string ident;
};

struct MethodBuild {
    MethodDef def;
    std::vector<PendingCall> pending_calls;
    std::set<std::string> candidate_uses;  // idents that may be inherited fields
};

struct ClassBuild {
    ClassDef def;
    std::vector<MethodBuild> methods;
};

class Parser {
public:
    Parser(std::string file, std::vector<Token> tokens, SourceStats& stats)
        : file_(std::move(file)), tokens_(std::move(tokens)), stats_(stats) {}

    std::vector<ClassBuild> parse_file() {
        std::vector<ClassBuild> out;
        while (peek().kind != Tok::End) {
            out.push_back(parse_class());
        }
        return out;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }

    const Token& next() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        throw SyntaxError(file_, t.line, t.column, expected, t.describe());
    }

    bool at_punct(const std::string& p) const {
        return peek().kind == Tok::Punct && peek().text == p;
    }

    bool at_word(const std::string& w) const {
        return peek().kind == Tok::Ident && peek().text == w;
    }

    void expect_punct(const std::string& p) {
        if (!at_punct(p)) fail("'" + p + "'");
        next();
    }

    std::string expect_ident() {
        if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail("identifier");
        return next().text;
    }

    bool at_type() const {
        return peek().kind == Tok::Ident &&
               (is_builtin_type(peek().text) || !is_keyword(peek().text));
    }

    std::string expect_type() {
        if (!at_type()) fail("type name");
        return next().text;
    }

    ClassBuild parse_class() {
        if (!at_word("class")) fail("'class'");
        next();
        ClassBuild cb;
        cb.def.name = expect_ident();
        if (at_word("extends")) {
            next();
            cb.def.parent = expect_ident();
        }
        expect_punct("{");
        while (!at_punct("}")) {
            parse_member(cb);
        }
        next();
        return cb;
    }

    void parse_member(ClassBuild& cb) {
        std::string type = expect_type();
        std::string name = expect_ident();
        if (at_punct(";")) {
            next();
            cb.def.fields.push_back({name, type});
            ++stats_.declarative_statements;
            return;
        }
        if (!at_punct("(")) fail("';' or '('");
        next();
        MethodBuild mb;
        mb.def.name = name;
        scope_.clear();
        if (!at_punct(")")) {
            while (true) {
                std::string ptype = expect_type();
                std::string pname = expect_ident();
                scope_[pname] = ptype;
                ++mb.def.arity;
                if (at_punct(",")) {
                    next();
                    continue;
                }
                break;
            }
        }
        expect_punct(")");
        current_class_ = &cb;
        current_method_ = &mb;
        parse_block();
        current_method_ = nullptr;
        current_class_ = nullptr;
        cb.def.methods.push_back(mb.def);
        cb.methods.push_back(std::move(mb));
    }

    void parse_block() {
        expect_punct("{");
        while (!at_punct("}")) {
            parse_statement();
        }
        next();
    }

    void parse_statement() {
        if (at_punct("{")) {
            parse_block();
            return;
        }
        if (at_word("if")) {
            next();
            ++current_method_->def.decision_points;
            ++stats_.executable_statements;
            expect_punct("(");
            parse_expr();
            expect_punct(")");
            parse_statement();
            if (at_word("else")) {
                next();
                parse_statement();
            }
            return;
        }
        if (at_word("while")) {
            next();
            ++current_method_->def.decision_points;
            ++stats_.executable_statements;
            expect_punct("(");
            parse_expr();
            expect_punct(")");
            parse_statement();
            return;
        }
        if (at_word("for")) {
            next();
            ++current_method_->def.decision_points;
            ++stats_.executable_statements;
            expect_punct("(");
            if (!at_punct(";")) parse_simple_or_decl();
            expect_punct(";");
            if (!at_punct(";")) parse_expr();
            expect_punct(";");
            if (!at_punct(")")) parse_simple(/*allow_plain_expr=*/true);
            expect_punct(")");
            parse_statement();
            return;
        }
        if (at_word("return")) {
            next();
            ++stats_.executable_statements;
            if (!at_punct(";")) parse_expr();
            expect_punct(";");
            return;
        }
        parse_simple_or_decl();
        expect_punct(";");
    }

    bool at_local_decl() const {
        // `TYPE IDENT` where the second token is a plain identifier.
        if (!at_type()) return false;
        const Token& n = peek(1);
        return n.kind == Tok::Ident && !is_keyword(n.text);
    }

    void parse_simple_or_decl() {
        if (at_local_decl()) {
            std::string type = expect_type();
            std::string name = expect_ident();
            scope_[name] = type;
            ++stats_.declarative_statements;
            if (at_punct("=")) {
                next();
                parse_expr();
            }
            return;
        }
        parse_simple(false);
        ++stats_.executable_statements;
    }

    // assignment or call statement
    void parse_simple(bool allow_plain_expr) {
        PostfixResult r = parse_postfix();
        if (at_punct("=")) {
            next();
            finish_ident(r);
            parse_expr();
            return;
        }
        finish_ident(r);
        if (!r.ended_in_call && !allow_plain_expr) fail("'=' or call");
    }

    // --- expressions -------------------------------------------------------

    struct PostfixResult {
        std::optional<std::string> bare_ident;  // still unconsumed variable ref
        bool ended_in_call = false;
    };

    void parse_expr() {
        parse_binary(0);
    }

    int binop_level(const std::string& op) const {
        if (op == "||") return 1;
        if (op == "&&") return 2;
        if (op == "==" || op == "!=") return 3;
        if (op == "<" || op == ">" || op == "<=" || op == ">=") return 4;
        if (op == "+" || op == "-") return 5;
        if (op == "*" || op == "/" || op == "%") return 6;
        return 0;
    }

    void parse_binary(int min_level) {
        parse_unary();
        while (peek().kind == Tok::Punct) {
            int level = binop_level(peek().text);
            if (level == 0 || level < min_level) break;
            next();
            parse_binary(level + 1);
        }
    }

    void parse_unary() {
        if (at_punct("!") || at_punct("-")) {
            next();
            parse_unary();
            return;
        }
        PostfixResult r = parse_postfix();
        finish_ident(r);
    }

    PostfixResult parse_postfix() {
        PostfixResult r;
        const Token& t = peek();
        if (t.kind == Tok::Number || t.kind == Tok::String) {
            next();
        } else if (at_word("true") || at_word("false")) {
            next();
        } else if (at_punct("(")) {
            next();
            parse_expr();
            expect_punct(")");
        } else if (t.kind == Tok::Ident && !is_keyword(t.text)) {
            r.bare_ident = next().text;
        } else {
            fail("expression");
        }

        while (true) {
            if (at_punct("(") && r.bare_ident) {
                // unqualified call: responds via SELF
                int arity = parse_args();
                record_call(CallSite::kSelf, *r.bare_ident, arity, std::nullopt);
                r.bare_ident.reset();
                r.ended_in_call = true;
                continue;
            }
            if (at_punct(".")) {
                next();
                std::string member = expect_ident();
                if (at_punct("(")) {
                    int arity = parse_args();
                    if (r.bare_ident) {
                        record_receiver_call(*r.bare_ident, member, arity);
                        r.bare_ident.reset();
                    } else {
                        // call on an intermediate expression value; receiver unknown
                        record_call("$expr", member, arity, std::nullopt);
                    }
                    r.ended_in_call = true;
                } else {
                    finish_ident(r);
                    r.ended_in_call = false;
                }
                continue;
            }
            break;
        }
        return r;
    }

    int parse_args() {
        expect_punct("(");
        int arity = 0;
        if (!at_punct(")")) {
            while (true) {
                parse_expr();
                ++arity;
                if (at_punct(",")) {
                    next();
                    continue;
                }
                break;
            }
        }
        expect_punct(")");
        return arity;
    }

    // --- extraction helpers ------------------------------------------------

    void record_call(const std::string& receiver, const std::string& method, int arity,
                     std::optional<std::string> pending_ident) {
        auto& calls = current_method_->def.calls;
        calls.push_back({receiver, method, arity});
        if (pending_ident) {
            current_method_->pending_calls.push_back({calls.size() - 1, *pending_ident});
        }
    }

    void record_receiver_call(const std::string& ident, const std::string& method,
                              int arity) {
        auto it = scope_.find(ident);
        if (it != scope_.end()) {
            record_call(it->second, method, arity, std::nullopt);
            return;
        }
        if (const FieldDef* f = current_class_->def.find_field(ident)) {
            current_method_->def.field_uses.insert(ident);
            record_call(f->declared_type, method, arity, std::nullopt);
            return;
        }
        // inherited field or class name; settled after all files are parsed
        record_call(ident, method, arity, ident);
    }

    // Registers a bare identifier as a variable reference once it is clear
    // it is not a call or receiver position.
    void finish_ident(PostfixResult& r) {
        if (!r.bare_ident) return;
        const std::string& name = *r.bare_ident;
        if (!scope_.count(name)) {
            if (current_class_->def.find_field(name)) {
                current_method_->def.field_uses.insert(name);
            } else {
                current_method_->candidate_uses.insert(name);
            }
        }
        r.bare_ident.reset();
    }

    std::string file_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    SourceStats& stats_;

    ClassBuild* current_class_ = nullptr;
    MethodBuild* current_method_ = nullptr;
    std::map<std::string, std::string> scope_;  // params + locals -> declared type
};

}  // namespace

SourceStats classify_lines(const std::string& text) {
    SourceStats s;
    s.files = 1;
    bool in_block = false;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        bool saw_code = false;
        bool saw_comment = in_block;
        while (i < n && text[i] != '\n') {
            char c = text[i];
            if (in_block) {
                saw_comment = true;
                if (c == '*' && i + 1 < n && text[i + 1] == '/') {
                    in_block = false;
                    ++i;
                }
                ++i;
            } else if (c == '/' && i + 1 < n && text[i + 1] == '/') {
                saw_comment = true;
                while (i < n && text[i] != '\n') ++i;
            } else if (c == '/' && i + 1 < n && text[i + 1] == '*') {
                saw_comment = true;
                in_block = true;
                i += 2;
            } else if (c == '"') {
                saw_code = true;
                ++i;
                while (i < n && text[i] != '"' && text[i] != '\n') ++i;
                if (i < n && text[i] == '"') ++i;
            } else {
                if (!std::isspace(static_cast<unsigned char>(c))) saw_code = true;
                ++i;
            }
        }
        if (i < n) ++i;  // consume '\n'
        ++s.total_lines;
        if (saw_code) {
            ++s.code_lines;  // mixed code+comment counts as code
        } else if (saw_comment) {
            ++s.comment_lines;
        } else {
            ++s.blank_lines;
        }
    }
    return s;
}

ClassModel parse_source(const std::vector<std::pair<std::string, std::string>>& files) {
    SourceStats stats;
    std::vector<ClassBuild> builds;
    for (const auto& [path, text] : files) {
        SourceStats file_stats = classify_lines(text);
        stats.files += 1;
        stats.total_lines += file_stats.total_lines;
        stats.blank_lines += file_stats.blank_lines;
        stats.comment_lines += file_stats.comment_lines;
        stats.code_lines += file_stats.code_lines;

        Lexer lexer(path, text);
        Parser parser(path, lexer.run(), stats);
        for (auto& cb : parser.parse_file()) {
            builds.push_back(std::move(cb));
        }
    }

    std::map<std::string, const ClassBuild*> by_name;
    for (const auto& cb : builds) by_name.emplace(cb.def.name, &cb);

    // Inherited field name -> declared type, walking the parsed parent chain.
    auto inherited_fields = [&](const ClassBuild& cb) {
        std::map<std::string, std::string> out;
        std::set<std::string> visited{cb.def.name};
        std::optional<std::string> parent = cb.def.parent;
        while (parent) {
            auto it = by_name.find(*parent);
            if (it == by_name.end() || !visited.insert(*parent).second) break;
            for (const auto& f : it->second->def.fields) {
                out.emplace(f.name, f.declared_type);
            }
            parent = it->second->def.parent;
        }
        return out;
    };

    std::vector<ClassDef> classes;
    std::set<std::string> externals;
    for (const auto& cb : builds) {
        const auto inherited = inherited_fields(cb);
        // Own fields may be declared after the methods that use them.
        std::map<std::string, std::string> own;
        for (const auto& f : cb.def.fields) own.emplace(f.name, f.declared_type);

        ClassDef def = cb.def;
        def.methods.clear();
        for (const auto& mb : cb.methods) {
            MethodDef md = mb.def;
            for (const auto& pc : mb.pending_calls) {
                if (own.count(pc.ident)) {
                    md.field_uses.insert(pc.ident);
                    md.calls[pc.call_index].receiver = own.at(pc.ident);
                } else if (inherited.count(pc.ident)) {
                    md.field_uses.insert(pc.ident);
                    md.calls[pc.call_index].receiver = inherited.at(pc.ident);
                }
                // otherwise the identifier itself stands as the receiver class
            }
            for (const auto& cand : mb.candidate_uses) {
                if (own.count(cand) || inherited.count(cand)) md.field_uses.insert(cand);
            }
            // receivers that resolve to nothing in the model are external classes
            static const std::set<std::string> builtins{"void", "int", "bool", "string"};
            for (const auto& call : md.calls) {
                if (call.is_self() || call.receiver == "$expr") continue;
                if (!by_name.count(call.receiver) && !builtins.count(call.receiver)) {
                    externals.insert(call.receiver);
                }
            }
            def.methods.push_back(std::move(md));
        }
        if (def.parent && !by_name.count(*def.parent)) externals.insert(*def.parent);
        classes.push_back(std::move(def));
    }

    return ClassModel::build(std::move(classes), stats, std::move(externals));
}

}  // namespace entropia

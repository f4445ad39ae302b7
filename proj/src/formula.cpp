#include "diffmc/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace diffmc {

namespace fo {

namespace {
FormulaPtr make(FormulaKind kind) {
    auto f = std::make_shared<Formula>();
    f->kind = kind;
    return f;
}
}  // namespace

FormulaPtr truth() { return make(FormulaKind::True); }
FormulaPtr falsity() { return make(FormulaKind::False); }
FormulaPtr boolean(bool b) { return b ? truth() : falsity(); }

FormulaPtr edge(std::string x, std::string y) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::Edge;
    f->var1 = std::move(x);
    f->var2 = std::move(y);
    return f;
}

FormulaPtr eq(std::string x, std::string y) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::Eq;
    f->var1 = std::move(x);
    f->var2 = std::move(y);
    return f;
}

FormulaPtr label(std::string name, std::string var) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::Label;
    f->label_name = std::move(name);
    f->var1 = std::move(var);
    return f;
}

namespace {
FormulaPtr unary(FormulaKind kind, FormulaPtr a) {
    auto f = std::make_shared<Formula>();
    f->kind = kind;
    f->lhs = std::move(a);
    return f;
}

FormulaPtr binary(FormulaKind kind, FormulaPtr a, FormulaPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = kind;
    f->lhs = std::move(a);
    f->rhs = std::move(b);
    return f;
}
}  // namespace

FormulaPtr lnot(FormulaPtr f) { return unary(FormulaKind::Not, std::move(f)); }
FormulaPtr land(FormulaPtr a, FormulaPtr b) { return binary(FormulaKind::And, std::move(a), std::move(b)); }
FormulaPtr lor(FormulaPtr a, FormulaPtr b) { return binary(FormulaKind::Or, std::move(a), std::move(b)); }
FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return binary(FormulaKind::Implies, std::move(a), std::move(b)); }
FormulaPtr iff(FormulaPtr a, FormulaPtr b) { return binary(FormulaKind::Iff, std::move(a), std::move(b)); }

FormulaPtr exists(std::string var, FormulaPtr body) {
    auto f = unary(FormulaKind::Exists, std::move(body));
    const_cast<Formula*>(f.get())->var1 = std::move(var);
    return f;
}

FormulaPtr forall(std::string var, FormulaPtr body) {
    auto f = unary(FormulaKind::Forall, std::move(body));
    const_cast<Formula*>(f.get())->var1 = std::move(var);
    return f;
}

FormulaPtr conj(const std::vector<FormulaPtr>& parts) {
    if (parts.empty()) return truth();
    FormulaPtr acc = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) acc = land(acc, parts[i]);
    return acc;
}

FormulaPtr disj(const std::vector<FormulaPtr>& parts) {
    if (parts.empty()) return falsity();
    FormulaPtr acc = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) acc = lor(acc, parts[i]);
    return acc;
}

}  // namespace fo

// ---------------------------------------------------------------------------
// Lexer / parser
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
    Ident,
    KwTrue,
    KwFalse,
    KwForall,
    KwExists,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Equal,
    Amp,
    Pipe,
    Arrow,
    IffArrow,
    Bang,
    End,
};

struct Token {
    Tok type;
    std::string text;
    int line;
    int col;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' || c == '\'';
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            int line = line_, col = col_;
            if (pos_ >= text_.size()) {
                out.push_back({Tok::End, "", line, col});
                return out;
            }
            char c = text_[pos_];
            if (ident_start(c)) {
                std::string word;
                while (pos_ < text_.size() && ident_char(text_[pos_])) {
                    word.push_back(text_[pos_]);
                    advance();
                }
                Tok type = Tok::Ident;
                if (word == "true") type = Tok::KwTrue;
                else if (word == "false") type = Tok::KwFalse;
                else if (word == "forall") type = Tok::KwForall;
                else if (word == "exists") type = Tok::KwExists;
                out.push_back({type, word, line, col});
                continue;
            }
            switch (c) {
                case '(': push_simple(out, Tok::LParen, "("); continue;
                case ')': push_simple(out, Tok::RParen, ")"); continue;
                case '[': push_simple(out, Tok::LBracket, "["); continue;
                case ']': push_simple(out, Tok::RBracket, "]"); continue;
                case ',': push_simple(out, Tok::Comma, ","); continue;
                case '.': push_simple(out, Tok::Dot, "."); continue;
                case '=': push_simple(out, Tok::Equal, "="); continue;
                case '&': push_simple(out, Tok::Amp, "&"); continue;
                case '|': push_simple(out, Tok::Pipe, "|"); continue;
                case '!': push_simple(out, Tok::Bang, "!"); continue;
                case '-':
                    if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
                        advance();
                        advance();
                        out.push_back({Tok::Arrow, "->", line, col});
                        continue;
                    }
                    throw ParseError("unknown token '-'", line, col);
                case '<':
                    if (pos_ + 2 < text_.size() && text_[pos_ + 1] == '-' && text_[pos_ + 2] == '>') {
                        advance();
                        advance();
                        advance();
                        out.push_back({Tok::IffArrow, "<->", line, col});
                        continue;
                    }
                    throw ParseError("unknown token '<'", line, col);
                default:
                    throw ParseError(std::string("unknown token '") + c + "'", line, col);
            }
        }
    }

private:
    void push_simple(std::vector<Token>& out, Tok type, const char* text) {
        out.push_back({type, text, line_, col_});
        advance();
    }

    void skip_space() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            advance();
        }
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    FormulaPtr run() {
        auto f = parse_iff();
        expect(Tok::End, "end of input");
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool accept(Tok t) {
        if (peek().type == t) {
            ++pos_;
            return true;
        }
        return false;
    }
    Token expect(Tok t, const char* what) {
        if (peek().type != t) {
            throw ParseError(std::string("expected ") + what + ", got \"" + peek().text + "\"",
                             peek().line, peek().col);
        }
        return next();
    }

    FormulaPtr parse_iff() {
        auto f = parse_implies();
        while (accept(Tok::IffArrow)) f = fo::iff(f, parse_implies());
        return f;
    }

    FormulaPtr parse_implies() {
        auto f = parse_or();
        if (accept(Tok::Arrow)) return fo::implies(f, parse_implies());  // right assoc
        return f;
    }

    FormulaPtr parse_or() {
        auto f = parse_and();
        while (accept(Tok::Pipe)) f = fo::lor(f, parse_and());
        return f;
    }

    FormulaPtr parse_and() {
        auto f = parse_unary();
        while (accept(Tok::Amp)) f = fo::land(f, parse_unary());
        return f;
    }

    std::string parse_var() {
        Token t = expect(Tok::Ident, "a variable");
        return t.text;
    }

    FormulaPtr parse_unary() {
        const Token& t = peek();
        switch (t.type) {
            case Tok::Bang:
                next();
                return fo::lnot(parse_unary());
            case Tok::KwTrue:
                next();
                return fo::truth();
            case Tok::KwFalse:
                next();
                return fo::falsity();
            case Tok::KwForall:
            case Tok::KwExists: {
                bool universal = t.type == Tok::KwForall;
                next();
                std::string var = parse_var();
                expect(Tok::Dot, "'.'");
                auto body = parse_iff();  // quantifiers bind weakest
                return universal ? fo::forall(var, body) : fo::exists(var, body);
            }
            case Tok::LParen: {
                next();
                auto f = parse_iff();
                expect(Tok::RParen, "')'");
                return f;
            }
            case Tok::Ident: {
                if (t.text == "E" && toks_[pos_ + 1].type == Tok::LParen) {
                    next();
                    next();
                    std::string x = parse_var();
                    expect(Tok::Comma, "','");
                    std::string y = parse_var();
                    expect(Tok::RParen, "')'");
                    return fo::edge(x, y);
                }
                if (t.text == "L" && toks_[pos_ + 1].type == Tok::LBracket) {
                    next();
                    next();
                    Token lab = expect(Tok::Ident, "a label name");
                    expect(Tok::RBracket, "']'");
                    expect(Tok::LParen, "'('");
                    std::string var = parse_var();
                    expect(Tok::RParen, "')'");
                    return fo::label(lab.text, var);
                }
                std::string x = parse_var();
                expect(Tok::Equal, "'='");
                std::string y = parse_var();
                return fo::eq(x, y);
            }
            default:
                throw ParseError("expected a formula, got \"" + t.text + "\"", t.line, t.col);
        }
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
    return Parser(Lexer(text).run()).run();
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

// quantifier = 0, <-> = 1, -> = 2, | = 3, & = 4, ! = 5, atom = 6
int precedence(const Formula& f) {
    switch (f.kind) {
        case FormulaKind::Exists:
        case FormulaKind::Forall:
            return 0;
        case FormulaKind::Iff:
            return 1;
        case FormulaKind::Implies:
            return 2;
        case FormulaKind::Or:
            return 3;
        case FormulaKind::And:
            return 4;
        case FormulaKind::Not:
            return 5;
        default:
            return 6;
    }
}

void print_rec(const Formula& f, int min_prec, std::string& out) {
    int prec = precedence(f);
    bool parens = prec < min_prec;
    if (parens) out += '(';
    switch (f.kind) {
        case FormulaKind::True:
            out += "true";
            break;
        case FormulaKind::False:
            out += "false";
            break;
        case FormulaKind::Edge:
            out += "E(" + f.var1 + "," + f.var2 + ")";
            break;
        case FormulaKind::Eq:
            out += f.var1 + "=" + f.var2;
            break;
        case FormulaKind::Label:
            out += "L[" + f.label_name + "](" + f.var1 + ")";
            break;
        case FormulaKind::Not:
            out += '!';
            print_rec(*f.lhs, 5, out);
            break;
        case FormulaKind::And:
            print_rec(*f.lhs, 4, out);
            out += " & ";
            print_rec(*f.rhs, 5, out);
            break;
        case FormulaKind::Or:
            print_rec(*f.lhs, 3, out);
            out += " | ";
            print_rec(*f.rhs, 4, out);
            break;
        case FormulaKind::Implies:
            print_rec(*f.lhs, 3, out);
            out += " -> ";
            print_rec(*f.rhs, 2, out);
            break;
        case FormulaKind::Iff:
            print_rec(*f.lhs, 1, out);
            out += " <-> ";
            print_rec(*f.rhs, 2, out);
            break;
        case FormulaKind::Exists:
        case FormulaKind::Forall:
            out += f.kind == FormulaKind::Exists ? "exists " : "forall ";
            out += f.var1 + ". ";
            print_rec(*f.lhs, 0, out);
            break;
    }
    if (parens) out += ')';
}

}  // namespace

std::string to_string(const Formula& f) {
    std::string out;
    print_rec(f, 0, out);
    return out;
}

bool formula_equals(const Formula& a, const Formula& b) {
    if (a.kind != b.kind || a.var1 != b.var1 || a.var2 != b.var2 || a.label_name != b.label_name) {
        return false;
    }
    if ((a.lhs == nullptr) != (b.lhs == nullptr) || (a.rhs == nullptr) != (b.rhs == nullptr)) {
        return false;
    }
    if (a.lhs && !formula_equals(*a.lhs, *b.lhs)) return false;
    if (a.rhs && !formula_equals(*a.rhs, *b.rhs)) return false;
    return true;
}

int quantifier_rank(const Formula& f) {
    int l = f.lhs ? quantifier_rank(*f.lhs) : 0;
    int r = f.rhs ? quantifier_rank(*f.rhs) : 0;
    int rank = std::max(l, r);
    if (f.kind == FormulaKind::Exists || f.kind == FormulaKind::Forall) ++rank;
    return rank;
}

namespace {
void free_vars_rec(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (f.kind) {
        case FormulaKind::Edge:
        case FormulaKind::Eq:
            if (!bound.count(f.var1)) out.insert(f.var1);
            if (!bound.count(f.var2)) out.insert(f.var2);
            break;
        case FormulaKind::Label:
            if (!bound.count(f.var1)) out.insert(f.var1);
            break;
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            bool inserted = bound.insert(f.var1).second;
            free_vars_rec(*f.lhs, bound, out);
            if (inserted) bound.erase(f.var1);
            break;
        }
        default:
            if (f.lhs) free_vars_rec(*f.lhs, bound, out);
            if (f.rhs) free_vars_rec(*f.rhs, bound, out);
    }
}
}  // namespace

std::set<std::string> free_variables(const Formula& f) {
    std::set<std::string> bound, out;
    free_vars_rec(f, bound, out);
    return out;
}

bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

namespace {
bool well_named_rec(const Formula& f, std::set<std::string>& path) {
    switch (f.kind) {
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            if (path.count(f.var1)) return false;
            path.insert(f.var1);
            bool ok = well_named_rec(*f.lhs, path);
            path.erase(f.var1);
            return ok;
        }
        default:
            if (f.lhs && !well_named_rec(*f.lhs, path)) return false;
            if (f.rhs && !well_named_rec(*f.rhs, path)) return false;
            return true;
    }
}
}  // namespace

bool is_well_named(const Formula& f) {
    std::set<std::string> path;
    return well_named_rec(f, path);
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

struct Env {
    std::vector<std::pair<const std::string*, int>> entries;

    int lookup(const std::string& name) const {
        for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
            if (*it->first == name) return it->second;
        }
        throw InputError("unbound free variable \"" + name + "\"");
    }
};

bool eval_rec(const LabeledGraph& g, const Formula& f, Env& env) {
    switch (f.kind) {
        case FormulaKind::True:
            return true;
        case FormulaKind::False:
            return false;
        case FormulaKind::Edge: {
            int a = env.lookup(f.var1), b = env.lookup(f.var2);
            return a != b && g.neighbors(a).test(b);
        }
        case FormulaKind::Eq:
            return env.lookup(f.var1) == env.lookup(f.var2);
        case FormulaKind::Label:
            return g.has_label(env.lookup(f.var1), f.label_name);
        case FormulaKind::Not:
            return !eval_rec(g, *f.lhs, env);
        case FormulaKind::And:
            return eval_rec(g, *f.lhs, env) && eval_rec(g, *f.rhs, env);
        case FormulaKind::Or:
            return eval_rec(g, *f.lhs, env) || eval_rec(g, *f.rhs, env);
        case FormulaKind::Implies:
            return !eval_rec(g, *f.lhs, env) || eval_rec(g, *f.rhs, env);
        case FormulaKind::Iff:
            return eval_rec(g, *f.lhs, env) == eval_rec(g, *f.rhs, env);
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            bool universal = f.kind == FormulaKind::Forall;
            env.entries.emplace_back(&f.var1, 0);
            bool result = universal;
            for (int v = 0; v < g.size(); ++v) {
                env.entries.back().second = v;
                bool sub = eval_rec(g, *f.lhs, env);
                if (universal && !sub) {
                    result = false;
                    break;
                }
                if (!universal && sub) {
                    result = true;
                    break;
                }
            }
            env.entries.pop_back();
            return result;
        }
    }
    throw InputError("corrupt formula node");
}

}  // namespace

bool evaluate(const LabeledGraph& g, const Formula& f, const Assignment& assignment) {
    for (const auto& name : free_variables(f)) {
        auto it = assignment.find(name);
        if (it == assignment.end()) throw InputError("unbound free variable \"" + name + "\"");
        g.check_vertex(it->second);
    }
    Env env;
    env.entries.reserve(assignment.size() + 8);
    for (const auto& [name, vertex] : assignment) env.entries.emplace_back(&name, vertex);
    return eval_rec(g, f, env);
}

// ---------------------------------------------------------------------------
// Prenex conversion
// ---------------------------------------------------------------------------

PrenexSentence::PrenexSentence(std::vector<std::pair<Quantifier, std::string>> prefix_,
                               FormulaPtr matrix_)
    : prefix(std::move(prefix_)), matrix(std::move(matrix_)) {
    if (!matrix) throw InputError("prenex sentence needs a matrix");
    if (quantifier_rank(*matrix) != 0) throw InputError("prenex matrix must be quantifier-free");
    std::set<std::string> names;
    for (const auto& [q, v] : prefix) {
        if (!names.insert(v).second) throw InputError("duplicate prefix variable " + v);
    }
    for (const auto& v : free_variables(*matrix)) {
        if (!names.count(v)) throw InputError("matrix variable " + v + " missing from prefix");
    }
}

namespace {

bool contains_quantifier(const Formula& f) {
    if (f.kind == FormulaKind::Exists || f.kind == FormulaKind::Forall) return true;
    if (f.lhs && contains_quantifier(*f.lhs)) return true;
    if (f.rhs && contains_quantifier(*f.rhs)) return true;
    return false;
}

// a <-> b with quantifiers on either side becomes (a -> b) & (b -> a); the
// copies get distinct bound names during the later renaming pass.
FormulaPtr expand_quantified_iffs(const FormulaPtr& f) {
    FormulaPtr lhs = f->lhs ? expand_quantified_iffs(f->lhs) : nullptr;
    FormulaPtr rhs = f->rhs ? expand_quantified_iffs(f->rhs) : nullptr;
    if (f->kind == FormulaKind::Iff && (contains_quantifier(*lhs) || contains_quantifier(*rhs))) {
        return fo::land(fo::implies(lhs, rhs), fo::implies(rhs, lhs));
    }
    if (lhs == f->lhs && rhs == f->rhs) return f;
    auto copy = std::make_shared<Formula>(*f);
    copy->lhs = lhs;
    copy->rhs = rhs;
    return copy;
}

// Renames every bound variable to a globally fresh "@k" name. "@" cannot
// appear in parsed identifiers, so no collision with user names is possible.
FormulaPtr standardize_apart(const FormulaPtr& f, std::map<std::string, std::string>& scope,
                             int& counter) {
    auto mapped = [&scope](const std::string& v) {
        auto it = scope.find(v);
        return it == scope.end() ? v : it->second;
    };
    switch (f->kind) {
        case FormulaKind::Edge:
            return fo::edge(mapped(f->var1), mapped(f->var2));
        case FormulaKind::Eq:
            return fo::eq(mapped(f->var1), mapped(f->var2));
        case FormulaKind::Label:
            return fo::label(f->label_name, mapped(f->var1));
        case FormulaKind::True:
        case FormulaKind::False:
            return f;
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            std::string fresh = "@" + std::to_string(++counter);
            auto saved = scope.find(f->var1) != scope.end()
                             ? std::optional<std::string>(scope[f->var1])
                             : std::nullopt;
            scope[f->var1] = fresh;
            auto body = standardize_apart(f->lhs, scope, counter);
            if (saved) scope[f->var1] = *saved;
            else scope.erase(f->var1);
            return f->kind == FormulaKind::Exists ? fo::exists(fresh, body)
                                                  : fo::forall(fresh, body);
        }
        default: {
            auto copy = std::make_shared<Formula>(*f);
            copy->lhs = f->lhs ? standardize_apart(f->lhs, scope, counter) : nullptr;
            copy->rhs = f->rhs ? standardize_apart(f->rhs, scope, counter) : nullptr;
            return copy;
        }
    }
}

struct Pulled {
    std::vector<std::pair<Quantifier, std::string>> prefix;
    FormulaPtr matrix;
};

std::vector<std::pair<Quantifier, std::string>> flipped(
    std::vector<std::pair<Quantifier, std::string>> prefix) {
    for (auto& [q, v] : prefix) {
        q = q == Quantifier::Exists ? Quantifier::Forall : Quantifier::Exists;
    }
    return prefix;
}

// Input has pairwise distinct bound names, so pulling never captures.
Pulled pull_quantifiers(const FormulaPtr& f) {
    switch (f->kind) {
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            Pulled body = pull_quantifiers(f->lhs);
            Quantifier q = f->kind == FormulaKind::Exists ? Quantifier::Exists : Quantifier::Forall;
            body.prefix.insert(body.prefix.begin(), {q, f->var1});
            return body;
        }
        case FormulaKind::Not: {
            Pulled body = pull_quantifiers(f->lhs);
            return {flipped(std::move(body.prefix)), fo::lnot(body.matrix)};
        }
        case FormulaKind::And:
        case FormulaKind::Or: {
            Pulled l = pull_quantifiers(f->lhs);
            Pulled r = pull_quantifiers(f->rhs);
            auto prefix = std::move(l.prefix);
            prefix.insert(prefix.end(), r.prefix.begin(), r.prefix.end());
            auto matrix = f->kind == FormulaKind::And ? fo::land(l.matrix, r.matrix)
                                                      : fo::lor(l.matrix, r.matrix);
            return {std::move(prefix), matrix};
        }
        case FormulaKind::Implies: {
            Pulled l = pull_quantifiers(f->lhs);
            Pulled r = pull_quantifiers(f->rhs);
            auto prefix = flipped(std::move(l.prefix));  // antecedent position
            prefix.insert(prefix.end(), r.prefix.begin(), r.prefix.end());
            return {std::move(prefix), fo::implies(l.matrix, r.matrix)};
        }
        case FormulaKind::Iff:
            // quantified iffs were expanded beforehand
            return {{}, f};
        default:
            return {{}, f};
    }
}

FormulaPtr rename_free(const FormulaPtr& f, const std::map<std::string, std::string>& renames) {
    auto mapped = [&renames](const std::string& v) {
        auto it = renames.find(v);
        return it == renames.end() ? v : it->second;
    };
    switch (f->kind) {
        case FormulaKind::Edge:
            return fo::edge(mapped(f->var1), mapped(f->var2));
        case FormulaKind::Eq:
            return fo::eq(mapped(f->var1), mapped(f->var2));
        case FormulaKind::Label:
            return fo::label(f->label_name, mapped(f->var1));
        case FormulaKind::True:
        case FormulaKind::False:
            return f;
        default: {
            auto copy = std::make_shared<Formula>(*f);
            copy->lhs = f->lhs ? rename_free(f->lhs, renames) : nullptr;
            copy->rhs = f->rhs ? rename_free(f->rhs, renames) : nullptr;
            return copy;
        }
    }
}

}  // namespace

PrenexSentence to_prenex(const Formula& f) {
    if (!is_sentence(f)) throw InputError("to_prenex requires a sentence (open formula given)");
    auto shared = std::make_shared<Formula>(f);
    auto expanded = expand_quantified_iffs(shared);
    std::map<std::string, std::string> scope;
    int counter = 0;
    auto apart = standardize_apart(expanded, scope, counter);
    Pulled pulled = pull_quantifiers(apart);

    std::map<std::string, std::string> renames;
    std::vector<std::pair<Quantifier, std::string>> prefix;
    prefix.reserve(pulled.prefix.size());
    for (size_t i = 0; i < pulled.prefix.size(); ++i) {
        std::string name = "x" + std::to_string(i + 1);
        renames[pulled.prefix[i].second] = name;
        prefix.emplace_back(pulled.prefix[i].first, name);
    }
    return PrenexSentence(std::move(prefix), rename_free(pulled.matrix, renames));
}

FormulaPtr prenex_to_formula(const PrenexSentence& ps) {
    FormulaPtr f = ps.matrix;
    for (auto it = ps.prefix.rbegin(); it != ps.prefix.rend(); ++it) {
        f = it->first == Quantifier::Exists ? fo::exists(it->second, f) : fo::forall(it->second, f);
    }
    return f;
}

// ---------------------------------------------------------------------------
// Differential game formula
// ---------------------------------------------------------------------------

namespace {

FormulaPtr diff_atom(const std::string& x, const std::string& y, const std::string& z) {
    return fo::lor(fo::land(fo::edge(x, z), fo::lnot(fo::edge(y, z))),
                   fo::land(fo::lnot(fo::edge(x, z)), fo::edge(y, z)));
}

FormulaPtr xi_rec(int m, const std::vector<std::string>& xs, const std::vector<std::string>& ys,
                  const std::vector<std::string>& alphabet) {
    const int k = static_cast<int>(xs.size());
    if (m == 0) {
        std::vector<FormulaPtr> parts;
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                parts.push_back(fo::iff(fo::edge(xs[i], xs[j]), fo::edge(ys[i], ys[j])));
            }
        }
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                parts.push_back(fo::iff(fo::eq(xs[i], xs[j]), fo::eq(ys[i], ys[j])));
            }
        }
        for (int i = 0; i < k; ++i) {
            for (const auto& a : alphabet) {
                parts.push_back(fo::iff(fo::label(a, xs[i]), fo::label(a, ys[i])));
            }
        }
        return fo::conj(parts);
    }
    std::string spoiler = "z" + std::to_string(m);
    std::string reply = "w" + std::to_string(m);
    std::vector<FormulaPtr> parts;
    for (int i = 0; i < k; ++i) {
        auto xs_s = xs, ys_s = ys;
        xs_s.push_back(spoiler);
        ys_s.push_back(reply);
        auto a_side = fo::exists(reply, fo::land(diff_atom(xs[i], ys[i], reply),
                                                 xi_rec(m - 1, xs_s, ys_s, alphabet)));
        auto xs_r = xs, ys_r = ys;
        xs_r.push_back(reply);
        ys_r.push_back(spoiler);
        auto b_side = fo::exists(reply, fo::land(diff_atom(xs[i], ys[i], reply),
                                                 xi_rec(m - 1, xs_r, ys_r, alphabet)));
        parts.push_back(fo::forall(
            spoiler, fo::implies(diff_atom(xs[i], ys[i], spoiler), fo::land(a_side, b_side))));
    }
    return fo::conj(parts);
}

}  // namespace

FormulaPtr xi_formula(int m, int k, const std::set<std::string>& label_alphabet) {
    if (m < 0) throw InputError("xi_formula requires m >= 0");
    if (k < 1) throw InputError("xi_formula requires k >= 1");
    std::vector<std::string> xs, ys;
    for (int i = 1; i <= k; ++i) {
        xs.push_back("x" + std::to_string(i));
        ys.push_back("y" + std::to_string(i));
    }
    std::vector<std::string> alphabet(label_alphabet.begin(), label_alphabet.end());
    return xi_rec(m, xs, ys, alphabet);
}

// ---------------------------------------------------------------------------
// Interpretations and pinned tuples
// ---------------------------------------------------------------------------

LabeledGraph apply_interpretation(const LabeledGraph& g, const Formula& psi, bool keep_labels) {
    auto free = free_variables(psi);
    if (free != std::set<std::string>{"x", "y"}) {
        throw InputError("interpretation formula must have free variables exactly {x, y}");
    }
    LabeledGraph h(g.size());
    Assignment assignment;
    for (int u = 0; u < g.size(); ++u) {
        for (int v = u + 1; v < g.size(); ++v) {
            assignment["x"] = u;
            assignment["y"] = v;
            bool uv = evaluate(g, psi, assignment);
            assignment["x"] = v;
            assignment["y"] = u;
            bool vu = evaluate(g, psi, assignment);
            if (uv || vu) h.add_edge(u, v);
        }
    }
    if (keep_labels) {
        for (int v = 0; v < g.size(); ++v) {
            for (const auto& lab : g.labels(v)) h.add_label(v, lab);
            if (auto c = g.color(v)) h.set_color(v, *c);
        }
    }
    return h;
}

LabeledGraph pin_tuple_labels(const LabeledGraph& g, const std::vector<int>& tuple) {
    for (int v : tuple) g.check_vertex(v);
    LabeledGraph out = g;
    for (size_t i = 0; i < tuple.size(); ++i) {
        std::string idx = std::to_string(i + 1);
        out.add_label(tuple[i], "pin:" + idx);
        const Bitset& nb = g.neighbors(tuple[i]);
        for (auto w = nb.find_first(); w != Bitset::npos; w = nb.find_next(w)) {
            out.add_label(static_cast<int>(w), "pinN:" + idx);
        }
    }
    return out;
}

namespace {

void collect_variables(const Formula& f, std::set<std::string>& out) {
    if (!f.var1.empty()) out.insert(f.var1);
    if (!f.var2.empty()) out.insert(f.var2);
    if (f.lhs) collect_variables(*f.lhs, out);
    if (f.rhs) collect_variables(*f.rhs, out);
}

// Renames bound occurrences of `name` to fresh identifiers so the free-var
// rename x_{k+1} -> x cannot be captured.
FormulaPtr rename_bound(const FormulaPtr& f, const std::string& name,
                        std::set<std::string>& used, const std::string* active = nullptr) {
    auto mapped = [&](const std::string& v) { return active && v == name ? *active : v; };
    switch (f->kind) {
        case FormulaKind::Edge:
            return fo::edge(mapped(f->var1), mapped(f->var2));
        case FormulaKind::Eq:
            return fo::eq(mapped(f->var1), mapped(f->var2));
        case FormulaKind::Label:
            return fo::label(f->label_name, mapped(f->var1));
        case FormulaKind::True:
        case FormulaKind::False:
            return f;
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            if (f->var1 == name) {
                int i = 1;
                std::string fresh;
                do {
                    fresh = name + "_r" + std::to_string(i++);
                } while (used.count(fresh));
                used.insert(fresh);
                auto body = rename_bound(f->lhs, name, used, &fresh);
                return f->kind == FormulaKind::Exists ? fo::exists(fresh, body)
                                                      : fo::forall(fresh, body);
            }
            auto body = rename_bound(f->lhs, name, used, active);
            return f->kind == FormulaKind::Exists ? fo::exists(f->var1, body)
                                                  : fo::forall(f->var1, body);
        }
        default: {
            auto copy = std::make_shared<Formula>(*f);
            copy->lhs = f->lhs ? rename_bound(f->lhs, name, used, active) : nullptr;
            copy->rhs = f->rhs ? rename_bound(f->rhs, name, used, active) : nullptr;
            return copy;
        }
    }
}

struct PinRewriter {
    const LabeledGraph& g;
    const std::vector<int>& tuple;
    int k;

    // 1..k when `name` is an unshadowed pinned variable, 0 otherwise.
    int pin_index(const std::string& name, const std::set<std::string>& shadowed) const {
        if (shadowed.count(name)) return 0;
        for (int i = 1; i <= k; ++i) {
            if (name == "x" + std::to_string(i)) return i;
        }
        return 0;
    }

    std::string map_free(const std::string& name, const std::set<std::string>& shadowed) const {
        if (!shadowed.count(name) && name == "x" + std::to_string(k + 1)) return "x";
        return name;
    }

    FormulaPtr rewrite(const FormulaPtr& f, std::set<std::string>& shadowed) const {
        switch (f->kind) {
            case FormulaKind::True:
            case FormulaKind::False:
                return f;
            case FormulaKind::Edge: {
                int i = pin_index(f->var1, shadowed), j = pin_index(f->var2, shadowed);
                if (i && j) return fo::boolean(tuple[i - 1] != tuple[j - 1] &&
                                               g.adjacent(tuple[i - 1], tuple[j - 1]));
                if (i) return fo::label("pinN:" + std::to_string(i), map_free(f->var2, shadowed));
                if (j) return fo::label("pinN:" + std::to_string(j), map_free(f->var1, shadowed));
                return fo::edge(map_free(f->var1, shadowed), map_free(f->var2, shadowed));
            }
            case FormulaKind::Eq: {
                int i = pin_index(f->var1, shadowed), j = pin_index(f->var2, shadowed);
                if (i && j) return fo::boolean(tuple[i - 1] == tuple[j - 1]);
                if (i) return fo::label("pin:" + std::to_string(i), map_free(f->var2, shadowed));
                if (j) return fo::label("pin:" + std::to_string(j), map_free(f->var1, shadowed));
                return fo::eq(map_free(f->var1, shadowed), map_free(f->var2, shadowed));
            }
            case FormulaKind::Label: {
                int i = pin_index(f->var1, shadowed);
                if (i) return fo::boolean(g.has_label(tuple[i - 1], f->label_name));
                return fo::label(f->label_name, map_free(f->var1, shadowed));
            }
            case FormulaKind::Exists:
            case FormulaKind::Forall: {
                bool inserted = shadowed.insert(f->var1).second;
                auto body = rewrite(f->lhs, shadowed);
                if (inserted) shadowed.erase(f->var1);
                return f->kind == FormulaKind::Exists ? fo::exists(f->var1, body)
                                                      : fo::forall(f->var1, body);
            }
            default: {
                auto copy = std::make_shared<Formula>(*f);
                copy->lhs = f->lhs ? rewrite(f->lhs, shadowed) : nullptr;
                copy->rhs = f->rhs ? rewrite(f->rhs, shadowed) : nullptr;
                return copy;
            }
        }
    }
};

}  // namespace

FormulaPtr rewrite_with_pinned_tuple(const Formula& phi, const LabeledGraph& g,
                                     const std::vector<int>& tuple) {
    for (int v : tuple) g.check_vertex(v);
    const int k = static_cast<int>(tuple.size());
    std::set<std::string> expected;
    for (int i = 1; i <= k + 1; ++i) expected.insert("x" + std::to_string(i));
    if (free_variables(phi) != expected) {
        throw InputError("rewrite_with_pinned_tuple: free variables must be exactly x1..x" +
                         std::to_string(k + 1));
    }

    auto shared = std::make_shared<Formula>(phi);
    std::set<std::string> used;
    collect_variables(phi, used);
    auto safe = rename_bound(shared, "x", used);

    PinRewriter rewriter{g, tuple, k};
    std::set<std::string> shadowed;
    return rewriter.rewrite(safe, shadowed);
}

}  // namespace diffmc

#include "syntax.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "error.hpp"

namespace skellab {

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;
    int line = 1, col = 1;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) advance();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    char peek_raw() const { return pos < s.size() ? s[pos] : '\0'; }
    void advance() {
        if (pos < s.size()) {
            if (s[pos] == '\n') { line++; col = 1; } else { col++; }
            pos++;
        }
    }
    bool eat(char c) {
        if (peek() == c) { advance(); return true; }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) err(std::string("expected '") + c + "'");
    }
    [[noreturn]] void err(const std::string& msg) {
        std::ostringstream os;
        os << "syntax error at " << line << ":" << col << ": " << msg;
        fail(Err::Syntax, os.str());
    }
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_cont(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::string parse_ident(Cursor& cur) {
    cur.skip_ws();
    if (!ident_start(cur.peek_raw())) cur.err("expected identifier");
    std::string id;
    while (ident_cont(cur.peek_raw())) {
        id += cur.peek_raw();
        cur.advance();
    }
    return id;
}

TypePtr parse_type_r(Cursor& cur) {
    TypePtr left;
    char c = cur.peek();
    if (c == 'o' && !ident_cont(cur.pos + 1 < cur.s.size() ? cur.s[cur.pos + 1] : '\0')) {
        cur.advance();
        left = Type::ground();
    } else if (c == '(') {
        cur.advance();
        left = parse_type_r(cur);
        cur.expect(')');
    } else {
        cur.err("expected type");
    }
    cur.skip_ws();
    if (cur.pos + 1 < cur.s.size() && cur.s[cur.pos] == '-' && cur.s[cur.pos + 1] == '>') {
        cur.advance();
        cur.advance();
        return Type::arrow(left, parse_type_r(cur));
    }
    return left;
}

struct TermParser {
    Cursor& cur;
    // Lexical scope: name -> (id, type); shadowing pushes/pops.
    std::map<std::string, std::vector<std::pair<VarId, TypePtr>>> scope;
    VarId counter = 0;

    TermPtr parse_term() {
        if (cur.peek() == '\\') {
            cur.advance();
            std::string name = parse_ident(cur);
            cur.expect(':');
            TypePtr ty = parse_type_r(cur);
            cur.expect('.');
            VarId id = ++counter;
            scope[name].push_back({id, ty});
            TermPtr body = parse_term();
            scope[name].pop_back();
            return Term::mk_abs(id, name, ty, body);
        }
        return parse_app();
    }

    TermPtr parse_app() {
        TermPtr t = parse_atom();
        while (true) {
            char c = cur.peek();
            if (c == '(' || c == '*' || ident_start(c)) {
                TermPtr arg = parse_atom();
                if (t->type->is_ground())
                    fail(Err::IllTyped, "application of a ground-typed term");
                if (!type_eq(t->type->dom(), arg->type))
                    fail(Err::IllTyped, "argument type " + arg->type->to_string() +
                                            " does not match domain " +
                                            t->type->dom()->to_string());
                t = Term::mk_app(t, arg);
            } else {
                break;
            }
        }
        return t;
    }

    TermPtr parse_atom() {
        char c = cur.peek();
        if (c == '(') {
            cur.advance();
            TermPtr t = parse_term();
            cur.expect(')');
            return t;
        }
        if (c == '*') {
            cur.advance();
            cur.expect(':');
            TypePtr ty = parse_type_r(cur);
            return Term::mk_const(ty);
        }
        if (ident_start(c)) {
            std::string name = parse_ident(cur);
            auto it = scope.find(name);
            if (it == scope.end() || it->second.empty())
                fail(Err::IllTyped, "unbound variable " + name);
            auto [id, ty] = it->second.back();
            return Term::mk_var(id, name, ty);
        }
        cur.err("expected term");
    }
};

} // namespace

TermPtr parse_term(const std::string& text) {
    Cursor cur{text};
    TermParser p{cur, {}, 0};
    TermPtr t = p.parse_term();
    if (cur.peek() != '\0') cur.err("trailing input");
    return t;
}

TypePtr parse_type(const std::string& text) {
    Cursor cur{text};
    TypePtr t = parse_type_r(cur);
    if (cur.peek() != '\0') cur.err("trailing input");
    return t;
}

std::string print_type(const TypePtr& type) { return type->to_string(); }

namespace {

// Scope-aware printer: picks a collision-free display name per binder so the
// output reparses to an alpha-equivalent term.
struct Printer {
    std::map<VarId, std::string> display;
    std::set<std::string> used;

    std::string fresh_name(const std::string& base) {
        std::string n = base.empty() ? "x" : base;
        while (used.count(n)) n += '\'';
        return n;
    }

    void print(const TermPtr& t, std::string& out, bool atom_pos, bool fn_pos) {
        switch (t->kind) {
            case TermKind::Var: {
                auto it = display.find(t->var);
                out += it != display.end() ? it->second : t->name;
                break;
            }
            case TermKind::Const:
                out += "*:" + t->type->to_string();
                break;
            case TermKind::Abs: {
                bool paren = atom_pos || fn_pos;
                if (paren) out += '(';
                std::string n = fresh_name(t->name);
                bool was_used = !used.insert(n).second;
                auto saved = display.find(t->var) != display.end()
                                 ? std::optional(display[t->var])
                                 : std::nullopt;
                display[t->var] = n;
                out += '\\' + n + ':' + t->binder_type()->to_string() + ". ";
                print(t->body, out, false, false);
                if (saved) display[t->var] = *saved; else display.erase(t->var);
                if (!was_used) used.erase(n);
                if (paren) out += ')';
                break;
            }
            case TermKind::App: {
                bool paren = atom_pos;
                if (paren) out += '(';
                print(t->fn, out, false, true);
                out += ' ';
                print(t->arg, out, true, false);
                if (paren) out += ')';
                break;
            }
        }
    }
};

} // namespace

std::string print_term(const TermPtr& term) {
    Printer p;
    // Free variables keep their names; reserve them against binder renaming.
    for_each_subterm(term, [&](const TermPtr& t, const OccPath&) {
        if (t->kind == TermKind::Var) p.used.insert(t->name);
    });
    std::set<VarId> bound;
    for_each_subterm(term, [&](const TermPtr& t, const OccPath&) {
        if (t->kind == TermKind::Abs) bound.insert(t->var);
    });
    // Only genuinely free names stay reserved.
    p.used.clear();
    for_each_subterm(term, [&](const TermPtr& t, const OccPath&) {
        if (t->kind == TermKind::Var && !bound.count(t->var)) p.used.insert(t->name);
    });
    std::string out;
    p.print(term, out, false, false);
    return out;
}

namespace {

uint64_t parse_nat(Cursor& cur) {
    cur.skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(cur.peek_raw()))) cur.err("expected number");
    uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(cur.peek_raw()))) {
        v = v * 10 + static_cast<uint64_t>(cur.peek_raw() - '0');
        cur.advance();
    }
    return v;
}

SkelPtr parse_skel_r(Cursor& cur) {
    uint64_t root = parse_nat(cur);
    std::vector<Skeleton::Edge> edges;
    if (cur.peek() == '[') {
        cur.advance();
        while (true) {
            cur.expect('{');
            uint64_t d = parse_nat(cur);
            cur.expect('}');
            edges.push_back({d, parse_skel_r(cur)});
            if (!cur.eat(',')) break;
        }
        cur.expect(']');
    }
    return Skeleton::make(root, std::move(edges));
}

} // namespace

SkelPtr parse_skeleton(const std::string& text) {
    Cursor cur{text};
    SkelPtr s = parse_skel_r(cur);
    if (cur.peek() != '\0') cur.err("trailing input");
    return s;
}

std::string print_skeleton(const SkelPtr& s) { return s->to_string(); }

} // namespace skellab

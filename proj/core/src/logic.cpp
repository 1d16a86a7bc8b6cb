#include "fmw/logic.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>

#include "fmw/canonical.hpp"
#include "fmw/category.hpp"
#include "fmw/cores.hpp"
#include "fmw/enumerate.hpp"
#include "fmw/error.hpp"
#include "fmw/gaifman.hpp"
#include "fmw/homsearch.hpp"

namespace fmw {

FormulaPtr make_truth() {
    return std::make_shared<Formula>(Formula{Formula::Kind::truth, {}, {}, {}, {}});
}
FormulaPtr make_atom(std::string relation, std::vector<Term> terms) {
    return std::make_shared<Formula>(
        Formula{Formula::Kind::atom, std::move(relation), std::move(terms), {}, {}});
}
FormulaPtr make_equality(Term lhs, Term rhs) {
    return std::make_shared<Formula>(
        Formula{Formula::Kind::equality, {}, {std::move(lhs), std::move(rhs)}, {}, {}});
}
FormulaPtr make_negation(FormulaPtr f) {
    return std::make_shared<Formula>(
        Formula{Formula::Kind::negation, {}, {}, {std::move(f)}, {}});
}
FormulaPtr make_conjunction(std::vector<FormulaPtr> children) {
    if (children.size() == 1) return children.front();
    return std::make_shared<Formula>(
        Formula{Formula::Kind::conjunction, {}, {}, std::move(children), {}});
}
FormulaPtr make_disjunction(std::vector<FormulaPtr> children) {
    if (children.size() == 1) return children.front();
    return std::make_shared<Formula>(
        Formula{Formula::Kind::disjunction, {}, {}, std::move(children), {}});
}
FormulaPtr make_implication(FormulaPtr lhs, FormulaPtr rhs) {
    return std::make_shared<Formula>(
        Formula{Formula::Kind::implication, {}, {}, {std::move(lhs), std::move(rhs)}, {}});
}
FormulaPtr make_exists(std::string variable, FormulaPtr body) {
    return std::make_shared<Formula>(
        Formula{Formula::Kind::exists, {}, {}, {std::move(body)}, std::move(variable)});
}
FormulaPtr make_forall(std::string variable, FormulaPtr body) {
    return std::make_shared<Formula>(
        Formula{Formula::Kind::forall, {}, {}, {std::move(body)}, std::move(variable)});
}

namespace {

bool is_identifier(const std::string& text) {
    if (text.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(text[0])) && text[0] != '_') return false;
    for (char c : text)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return text != "exists" && text != "forall" && text != "true";
}

struct Parser {
    const std::string& text;
    const Vocabulary* vocab; // nullptr = inference mode
    size_t pos = 0;
    std::map<std::string, int> inferred_arity;
    std::set<std::string> bound; // variables in scope

    explicit Parser(const std::string& t, const Vocabulary* v) : text(t), vocab(v) {}

    [[noreturn]] void fail(const std::string& message, size_t at) {
        throw InputError("syntax error at offset " + std::to_string(at) + ": " + message);
    }

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_space();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    bool eat_arrow() {
        skip_space();
        if (pos + 1 < text.size() && text[pos] == '-' && text[pos + 1] == '>') {
            pos += 2;
            return true;
        }
        return false;
    }

    void expect(char c, const std::string& what) {
        if (!eat(c)) fail("expected '" + std::string(1, c) + "' " + what, pos);
    }

    std::string peek_name() {
        skip_space();
        size_t start = pos;
        if (start >= text.size()) return "";
        if (!std::isalpha(static_cast<unsigned char>(text[start])) && text[start] != '_')
            return "";
        size_t end = start;
        while (end < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_'))
            ++end;
        return text.substr(start, end - start);
    }

    std::string take_name() {
        std::string name = peek_name();
        if (name.empty()) fail("expected an identifier", pos);
        pos += name.size();
        return name;
    }

    bool eat_keyword(const std::string& keyword) {
        skip_space();
        if (peek_name() == keyword) {
            pos += keyword.size();
            return true;
        }
        return false;
    }

    static bool is_keyword(const std::string& name) {
        return name == "exists" || name == "forall" || name == "true";
    }

    Term resolve_term(const std::string& name, size_t at) {
        if (is_keyword(name))
            fail("keyword '" + name + "' used as a term", at);
        if (vocab && vocab->has_relation(name))
            fail("relation symbol '" + name + "' used as a term", at);
        if (vocab && vocab->has_constant(name)) return Term{Term::Kind::constant, name};
        return Term{Term::Kind::variable, name};
    }

    FormulaPtr parse_formula() {
        skip_space();
        bool is_exists = eat_keyword("exists");
        bool is_forall = !is_exists && eat_keyword("forall");
        if (is_exists || is_forall) {
            skip_space();
            size_t var_at = pos;
            std::string var = take_name();
            if (is_keyword(var)) fail("keyword '" + var + "' cannot be a variable", var_at);
            if (vocab && (vocab->has_relation(var) || vocab->has_constant(var)))
                fail("vocabulary symbol '" + var + "' cannot be bound as a variable", var_at);
            if (bound.count(var))
                fail("variable '" + var + "' shadows an enclosing binding", var_at);
            expect('.', "after the quantified variable");
            bound.insert(var);
            FormulaPtr body = parse_formula();
            bound.erase(var);
            return is_forall ? make_forall(var, body) : make_exists(var, body);
        }
        return parse_impl();
    }

    FormulaPtr parse_impl() {
        FormulaPtr lhs = parse_disj();
        if (eat_arrow()) return make_implication(lhs, parse_impl());
        return lhs;
    }

    FormulaPtr parse_disj() {
        std::vector<FormulaPtr> parts{parse_conj()};
        while (eat('|')) parts.push_back(parse_conj());
        return make_disjunction(std::move(parts));
    }

    FormulaPtr parse_conj() {
        std::vector<FormulaPtr> parts{parse_unary()};
        while (eat('&')) parts.push_back(parse_unary());
        return make_conjunction(std::move(parts));
    }

    FormulaPtr parse_unary() {
        skip_space();
        if (eat('!')) return make_negation(parse_unary());
        if (eat('(')) {
            FormulaPtr inner = parse_formula();
            expect(')', "to close the parenthesis");
            return inner;
        }
        return parse_atom();
    }

    FormulaPtr parse_atom() {
        skip_space();
        size_t at = pos;
        if (eat_keyword("true")) return make_truth();
        std::string name = peek_name();
        if (name.empty()) fail("expected an atom", pos);
        pos += name.size();
        skip_space();
        if (pos < text.size() && text[pos] == '(') {
            if (vocab && !vocab->has_relation(name))
                fail("unknown relation symbol '" + name + "'", at);
            ++pos;
            std::vector<Term> terms;
            do {
                skip_space();
                size_t term_at = pos;
                terms.push_back(resolve_term(take_name(), term_at));
            } while (eat(','));
            expect(')', "to close the argument list");
            int arity = static_cast<int>(terms.size());
            if (vocab) {
                if (vocab->arity(name) != arity)
                    fail("arity mismatch: " + name + " expects " +
                             std::to_string(vocab->arity(name)) + " arguments, got " +
                             std::to_string(arity),
                         at);
            } else {
                auto [it, inserted] = inferred_arity.emplace(name, arity);
                if (!inserted && it->second != arity)
                    fail("arity mismatch: " + name + " used with " +
                             std::to_string(it->second) + " and " + std::to_string(arity) +
                             " arguments",
                         at);
            }
            return make_atom(name, std::move(terms));
        }
        // equality atom
        Term lhs = resolve_term(name, at);
        skip_space();
        if (pos >= text.size() || text[pos] != '=')
            fail("expected '=' or '(' after '" + name + "'", pos);
        ++pos;
        skip_space();
        size_t rhs_at = pos;
        Term rhs = resolve_term(take_name(), rhs_at);
        return make_equality(lhs, rhs);
    }

    FormulaPtr run() {
        FormulaPtr f = parse_formula();
        skip_space();
        if (pos != text.size()) fail("unexpected trailing input", pos);
        return f;
    }
};

} // namespace

FormulaPtr parse_formula(const std::string& text, const Vocabulary& v) {
    Parser parser(text, &v);
    return parser.run();
}

FormulaPtr parse_formula(const std::string& text) {
    Parser parser(text, nullptr);
    return parser.run();
}

namespace {

void format_into(const FormulaPtr& f, std::ostream& out, bool parenthesize) {
    switch (f->kind) {
    case Formula::Kind::truth:
        out << "true";
        break;
    case Formula::Kind::atom: {
        out << f->relation << '(';
        for (size_t i = 0; i < f->terms.size(); ++i) {
            if (i) out << ',';
            out << f->terms[i].name;
        }
        out << ')';
        break;
    }
    case Formula::Kind::equality:
        out << f->terms[0].name << " = " << f->terms[1].name;
        break;
    case Formula::Kind::negation:
        out << '!';
        format_into(f->children[0], out, true);
        break;
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
        if (parenthesize) out << '(';
        const char* sep = f->kind == Formula::Kind::conjunction ? " & " : " | ";
        for (size_t i = 0; i < f->children.size(); ++i) {
            if (i) out << sep;
            format_into(f->children[i], out, true);
        }
        if (parenthesize) out << ')';
        break;
    }
    case Formula::Kind::implication:
        if (parenthesize) out << '(';
        format_into(f->children[0], out, true);
        out << " -> ";
        format_into(f->children[1], out, true);
        if (parenthesize) out << ')';
        break;
    case Formula::Kind::exists:
    case Formula::Kind::forall:
        if (parenthesize) out << '(';
        out << (f->kind == Formula::Kind::exists ? "exists " : "forall ") << f->variable << ". ";
        format_into(f->children[0], out, false);
        if (parenthesize) out << ')';
        break;
    }
}

} // namespace

std::string format_formula(const FormulaPtr& f) {
    std::ostringstream out;
    format_into(f, out, false);
    return out.str();
}

int quantifier_rank(const FormulaPtr& f) {
    int best = 0;
    for (const auto& child : f->children) best = std::max(best, quantifier_rank(child));
    if (f->kind == Formula::Kind::exists || f->kind == Formula::Kind::forall) ++best;
    return best;
}

FormulaClass classify(const FormulaPtr& f) {
    switch (f->kind) {
    case Formula::Kind::truth:
    case Formula::Kind::atom:
    case Formula::Kind::equality:
        return FormulaClass::primitive_positive;
    case Formula::Kind::negation:
    case Formula::Kind::implication:
    case Formula::Kind::forall:
        return FormulaClass::general;
    case Formula::Kind::disjunction: {
        for (const auto& child : f->children)
            if (classify(child) == FormulaClass::general) return FormulaClass::general;
        return FormulaClass::existential_positive;
    }
    case Formula::Kind::conjunction:
    case Formula::Kind::exists: {
        FormulaClass out = FormulaClass::primitive_positive;
        for (const auto& child : f->children) {
            FormulaClass c = classify(child);
            if (c == FormulaClass::general) return FormulaClass::general;
            if (c == FormulaClass::existential_positive) out = c;
        }
        return out;
    }
    }
    return FormulaClass::general;
}

std::string to_string(FormulaClass c) {
    switch (c) {
    case FormulaClass::primitive_positive: return "primitive-positive";
    case FormulaClass::existential_positive: return "existential-positive";
    case FormulaClass::general: return "general";
    }
    return "general";
}

namespace {

void collect_free(const FormulaPtr& f, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (f->kind) {
    case Formula::Kind::atom:
    case Formula::Kind::equality:
        for (const auto& t : f->terms)
            if (t.kind == Term::Kind::variable && !bound.count(t.name)) out.insert(t.name);
        break;
    case Formula::Kind::exists:
    case Formula::Kind::forall: {
        bool inserted = bound.insert(f->variable).second;
        collect_free(f->children[0], bound, out);
        if (inserted) bound.erase(f->variable);
        break;
    }
    default:
        for (const auto& child : f->children) collect_free(child, bound, out);
    }
}

} // namespace

std::set<std::string> free_variables(const FormulaPtr& f) {
    std::set<std::string> bound, out;
    collect_free(f, bound, out);
    return out;
}

namespace {

struct Evaluator {
    const Structure& a;
    std::map<std::string, int> env;

    int term_value(const Term& t) {
        if (t.kind == Term::Kind::constant) {
            auto it = a.constants.find(t.name);
            if (it == a.constants.end())
                throw InputError("vocabulary mismatch: constant " + t.name +
                                 " is not interpreted by the structure");
            return it->second;
        }
        auto it = env.find(t.name);
        if (it == env.end())
            throw InputError("unbound free variable: " + t.name);
        return it->second;
    }

    bool eval(const FormulaPtr& f) {
        switch (f->kind) {
        case Formula::Kind::truth:
            return true;
        case Formula::Kind::atom: {
            auto it = a.relations.find(f->relation);
            if (it == a.relations.end())
                throw InputError("vocabulary mismatch: relation " + f->relation +
                                 " is not interpreted by the structure");
            if (a.vocab.arity(f->relation) != static_cast<int>(f->terms.size()))
                throw InputError("vocabulary mismatch: arity of " + f->relation);
            std::vector<int> tuple;
            tuple.reserve(f->terms.size());
            for (const auto& t : f->terms) tuple.push_back(term_value(t));
            return std::binary_search(it->second.begin(), it->second.end(), tuple);
        }
        case Formula::Kind::equality:
            return term_value(f->terms[0]) == term_value(f->terms[1]);
        case Formula::Kind::negation:
            return !eval(f->children[0]);
        case Formula::Kind::conjunction:
            for (const auto& child : f->children)
                if (!eval(child)) return false;
            return true;
        case Formula::Kind::disjunction:
            for (const auto& child : f->children)
                if (eval(child)) return true;
            return false;
        case Formula::Kind::implication:
            return !eval(f->children[0]) || eval(f->children[1]);
        case Formula::Kind::exists:
        case Formula::Kind::forall: {
            const bool universal = f->kind == Formula::Kind::forall;
            auto saved = env.find(f->variable);
            int saved_value = saved == env.end() ? -1 : saved->second;
            bool had = saved != env.end();
            for (int e = 0; e < a.size(); ++e) {
                env[f->variable] = e;
                bool value = eval(f->children[0]);
                if (value != universal) {
                    restore(f->variable, had, saved_value);
                    return !universal;
                }
            }
            restore(f->variable, had, saved_value);
            return universal;
        }
        }
        return false;
    }

    void restore(const std::string& var, bool had, int value) {
        if (had)
            env[var] = value;
        else
            env.erase(var);
    }
};

} // namespace

bool evaluate(const Structure& a, const FormulaPtr& f,
              const std::map<std::string, std::string>& assignment) {
    Evaluator ev{a, {}};
    for (const auto& var : free_variables(f)) {
        auto it = assignment.find(var);
        if (it == assignment.end())
            throw InputError("unbound free variable: " + var);
        int e = a.index_of(it->second);
        if (e < 0)
            throw InputError("assignment sends " + var + " to unknown element " + it->second);
        ev.env[var] = e;
    }
    return ev.eval(f);
}

namespace {

struct CanonicalBuilder {
    const Vocabulary& vocab;
    std::vector<std::string> nodes; // union-find over term names
    std::map<std::string, int> node_of;
    std::vector<int> parent;
    std::vector<std::pair<std::string, std::vector<std::string>>> atoms;

    explicit CanonicalBuilder(const Vocabulary& v) : vocab(v) {
        for (const auto& c : v.constants) node(c);
    }

    int node(const std::string& name) {
        auto it = node_of.find(name);
        if (it != node_of.end()) return it->second;
        int id = static_cast<int>(nodes.size());
        node_of[name] = id;
        nodes.push_back(name);
        parent.push_back(id);
        return id;
    }

    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }

    void merge(const std::string& a, const std::string& b) { parent[find(node(a))] = find(node(b)); }

    void walk(const FormulaPtr& f) {
        switch (f->kind) {
        case Formula::Kind::truth:
            break;
        case Formula::Kind::atom: {
            std::vector<std::string> args;
            for (const auto& t : f->terms) {
                node(t.name);
                args.push_back(t.name);
            }
            atoms.emplace_back(f->relation, std::move(args));
            break;
        }
        case Formula::Kind::equality:
            merge(f->terms[0].name, f->terms[1].name);
            break;
        case Formula::Kind::conjunction:
            for (const auto& child : f->children) walk(child);
            break;
        case Formula::Kind::exists:
            node(f->variable);
            walk(f->children[0]);
            break;
        default:
            throw InputError("canonical structure requires a primitive-positive sentence");
        }
    }

    Structure build() {
        // class representative: least constant name if present, else least name
        std::map<int, std::string> rep;
        for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
            int r = find(i);
            auto it = rep.find(r);
            bool node_is_const = vocab.has_constant(nodes[i]);
            if (it == rep.end()) {
                rep[r] = nodes[i];
                continue;
            }
            bool rep_is_const = vocab.has_constant(it->second);
            if ((node_is_const && !rep_is_const) ||
                (node_is_const == rep_is_const && nodes[i] < it->second))
                it->second = nodes[i];
        }
        std::vector<std::string> universe;
        for (const auto& [root, name] : rep) universe.push_back(name);
        std::map<std::string, std::vector<std::vector<std::string>>> rels;
        for (const auto& [relation, args] : atoms) {
            std::vector<std::string> tuple;
            for (const auto& arg : args) tuple.push_back(rep.at(find(node_of.at(arg))));
            rels[relation].push_back(std::move(tuple));
        }
        std::map<std::string, std::string> consts;
        for (const auto& c : vocab.constants) consts[c] = rep.at(find(node_of.at(c)));
        return make_structure(vocab, std::move(universe), std::move(rels), std::move(consts));
    }
};

} // namespace

Structure canonical_structure(const FormulaPtr& f, const Vocabulary& v) {
    if (classify(f) != FormulaClass::primitive_positive)
        throw InputError("canonical structure requires a primitive-positive formula");
    if (!free_variables(f).empty())
        throw InputError("canonical structure requires a sentence (no free variables)");
    CanonicalBuilder builder(v);
    builder.walk(f);
    return builder.build();
}

namespace {

bool usable_variable_name(const std::string& id, const Vocabulary& v,
                          const std::set<std::string>& taken) {
    return is_identifier(id) && !v.has_relation(id) && !v.has_constant(id) && !taken.count(id);
}

} // namespace

CanonicalSentence canonical_sentence(const Structure& c, const std::set<std::string>& x) {
    for (const auto& id : x)
        if (c.index_of(id) < 0)
            throw InputError("dangling element in X: " + id);

    // Pinned elements: x plus everything named by a constant.
    std::map<int, Term> pinned_term; // element -> term rendering
    std::map<std::string, std::string> pinned_vars;
    std::set<std::string> taken;
    for (const auto& [name, index] : c.constants)
        if (!pinned_term.count(index)) {
            pinned_term.emplace(index, Term{Term::Kind::constant, name});
            taken.insert(name);
        }
    for (const auto& id : x) {
        int index = c.index_of(id);
        if (pinned_term.count(index)) continue;
        std::string var = usable_variable_name(id, c.vocab, taken) ? id : "";
        if (var.empty()) {
            int k = 0;
            while (!usable_variable_name("p" + std::to_string(k), c.vocab, taken)) ++k;
            var = "p" + std::to_string(k);
        }
        taken.insert(var);
        pinned_term.emplace(index, Term{Term::Kind::variable, var});
        pinned_vars[var] = id;
    }

    // Quantified elements get variables; names follow element ids if usable.
    std::vector<int> quantified;
    std::map<int, Term> term_of = pinned_term;
    for (int e = 0; e < c.size(); ++e) {
        if (term_of.count(e)) continue;
        quantified.push_back(e);
        const std::string& id = c.universe[e];
        std::string var = usable_variable_name(id, c.vocab, taken) ? id : "";
        if (var.empty()) {
            int k = 0;
            while (!usable_variable_name("v" + std::to_string(k), c.vocab, taken)) ++k;
            var = "v" + std::to_string(k);
        }
        taken.insert(var);
        term_of.emplace(e, Term{Term::Kind::variable, var});
    }

    // Elimination forest of the Gaifman graph minus the pinned elements.
    Graph g = gaifman_graph(c);
    std::vector<int> keep;
    for (int e : quantified) keep.push_back(e);
    Graph reduced = induced_subgraph(g, keep);
    std::vector<int> parents = elimination_forest(reduced);

    // Depth of each element in the forest; pinned elements live at the top.
    std::map<int, int> depth; // element -> depth (quantified only)
    std::vector<std::vector<int>> children(quantified.size());
    std::vector<int> roots;
    for (size_t i = 0; i < parents.size(); ++i) {
        if (parents[i] < 0)
            roots.push_back(static_cast<int>(i));
        else
            children[parents[i]].push_back(static_cast<int>(i));
    }
    // reduced indices -> structure element indices
    auto element_of = [&](int reduced_index) { return c.index_of(reduced.vertices[reduced_index]); };

    // Attach each tuple to its deepest element in the forest.
    std::vector<int> forest_depth_of(quantified.size(), 0);
    {
        std::vector<int> stack = roots;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int child : children[v]) {
                forest_depth_of[child] = forest_depth_of[v] + 1;
                stack.push_back(child);
            }
        }
    }

    struct NodeAtoms {
        std::vector<FormulaPtr> atoms;
    };
    std::vector<NodeAtoms> per_node(quantified.size());
    std::vector<FormulaPtr> top_atoms;
    for (const auto& [relation, tuples] : c.relations) {
        for (const auto& t : tuples) {
            int deepest = -1;
            int best_depth = -1;
            for (int e : t) {
                const std::string& id = c.universe[e];
                int reduced_index = -1;
                for (size_t i = 0; i < reduced.vertices.size(); ++i)
                    if (reduced.vertices[i] == id) reduced_index = static_cast<int>(i);
                if (reduced_index >= 0 && forest_depth_of[reduced_index] > best_depth) {
                    best_depth = forest_depth_of[reduced_index];
                    deepest = reduced_index;
                }
            }
            std::vector<Term> terms;
            for (int e : t) terms.push_back(term_of.at(e));
            FormulaPtr atom = make_atom(relation, std::move(terms));
            if (deepest < 0)
                top_atoms.push_back(std::move(atom));
            else
                per_node[deepest].atoms.push_back(std::move(atom));
        }
    }

    // Build nested quantifiers bottom-up along the forest.
    std::function<FormulaPtr(int)> build = [&](int node) -> FormulaPtr {
        std::vector<FormulaPtr> parts = per_node[node].atoms;
        for (int child : children[node]) parts.push_back(build(child));
        if (parts.empty()) parts.push_back(make_truth());
        return make_exists(term_of.at(element_of(node)).name, make_conjunction(std::move(parts)));
    };

    std::vector<FormulaPtr> parts = std::move(top_atoms);
    for (int root : roots) parts.push_back(build(root));
    if (parts.empty()) parts.push_back(make_truth());
    return {make_conjunction(std::move(parts)), std::move(pinned_vars)};
}

std::vector<Structure> enumerate_pp_tests(const Vocabulary& v, int k, int size_cap) {
    if (k < 0 || size_cap < 0)
        throw InputError("negative bound");
    Structure trivial = free_term_structure(v);
    std::string trivial_key = canonical_key(trivial);
    std::vector<std::pair<std::string, Structure>> keyed;
    std::set<std::string> seen;
    for_each_structure(v, size_cap, [&](const Structure& s) {
        if (tree_depth_over(s, constant_elements(s)) > k) return;
        Structure reduced = core(s);
        std::string key = canonical_key(reduced);
        if (key == trivial_key) return; // maps into everything, separates nothing
        if (seen.insert(key).second) keyed.emplace_back(std::move(key), canonical_form(reduced));
    });
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.second.size() != b.second.size()) return a.second.size() < b.second.size();
        return a.first < b.first;
    });
    std::vector<Structure> out;
    out.reserve(keyed.size());
    for (auto& [key, s] : keyed) out.push_back(std::move(s));
    return out;
}

std::optional<Structure> pp_separating_test(const Structure& a, const Structure& b,
                                            const std::vector<Structure>& pool) {
    for (const auto& test : pool) {
        auto into_a = find_homomorphism(test, a);
        if (into_a.budget_exhausted())
            throw BudgetError("pp test search exhausted its budget");
        if (!into_a.found()) continue;
        auto into_b = find_homomorphism(test, b);
        if (into_b.budget_exhausted())
            throw BudgetError("pp test search exhausted its budget");
        if (!into_b.found()) return test;
    }
    return std::nullopt;
}

bool preserves_pp(const Structure& a, const Structure& b, int k, const std::set<std::string>& x,
                  int size_cap) {
    if (!same_vocab(a, b))
        throw InputError("vocabulary mismatch");
    if (!x.empty()) {
        // Over-X tests are realized by pinning X with fresh constants.
        std::vector<std::string> tuple(x.begin(), x.end());
        for (const auto& id : tuple)
            if (b.index_of(id) < 0)
                throw InputError("pinned element missing from the second structure: " + id);
        return preserves_pp(expand(a, tuple), expand(b, tuple), k, {}, size_cap);
    }
    auto pool = enumerate_pp_tests(a.vocab, k, size_cap);
    return !pp_separating_test(a, b, pool).has_value();
}

} // namespace fmw

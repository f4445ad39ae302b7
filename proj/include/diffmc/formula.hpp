#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "diffmc/errors.hpp"
#include "diffmc/graph.hpp"

namespace diffmc {

enum class FormulaKind {
    True,
    False,
    Edge,
    Eq,
    Label,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Exists,
    Forall,
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable FO AST node over the vocabulary {E, =, L_a}.
// Edge/Eq use var1,var2; Label uses label_name + var1; quantifiers bind var1.
class Formula {
public:
    FormulaKind kind;
    std::string var1;
    std::string var2;
    std::string label_name;
    FormulaPtr lhs;
    FormulaPtr rhs;
};

// Node builders.
namespace fo {
FormulaPtr truth();
FormulaPtr falsity();
FormulaPtr boolean(bool b);
FormulaPtr edge(std::string x, std::string y);
FormulaPtr eq(std::string x, std::string y);
FormulaPtr label(std::string name, std::string var);
FormulaPtr lnot(FormulaPtr f);
FormulaPtr land(FormulaPtr a, FormulaPtr b);
FormulaPtr lor(FormulaPtr a, FormulaPtr b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr iff(FormulaPtr a, FormulaPtr b);
FormulaPtr exists(std::string var, FormulaPtr body);
FormulaPtr forall(std::string var, FormulaPtr body);
FormulaPtr conj(const std::vector<FormulaPtr>& parts);  // empty -> true
FormulaPtr disj(const std::vector<FormulaPtr>& parts);  // empty -> false
}  // namespace fo

// Grammar (binds tightest to loosest): ! > & > | > -> > <->, quantifiers
// weakest; "&"/"|" left-associative, "->" right-associative. Atoms:
// E(x,y), x=y, L[name](x), true, false.
FormulaPtr parse_formula(std::string_view text);
std::string to_string(const Formula& f);
inline std::string to_string(const FormulaPtr& f) { return to_string(*f); }

bool formula_equals(const Formula& a, const Formula& b);
int quantifier_rank(const Formula& f);
std::set<std::string> free_variables(const Formula& f);
bool is_sentence(const Formula& f);
// No variable quantified twice along any root-to-leaf path.
bool is_well_named(const Formula& f);

using Assignment = std::map<std::string, int>;

// Brute-force FO semantics; quantifiers range over V(g). Label atoms are
// false when the vertex lacks the label, including labels outside g's
// alphabet. Colors count as "color:<k>" labels.
bool evaluate(const LabeledGraph& g, const Formula& f, const Assignment& assignment = {});
inline bool evaluate(const LabeledGraph& g, const FormulaPtr& f, const Assignment& a = {}) {
    return evaluate(g, *f, a);
}

enum class Quantifier { Exists, Forall };

struct PrenexSentence {
    std::vector<std::pair<Quantifier, std::string>> prefix;
    FormulaPtr matrix;

    PrenexSentence(std::vector<std::pair<Quantifier, std::string>> prefix_, FormulaPtr matrix_);
    int quantifier_count() const { return static_cast<int>(prefix.size()); }
};

// Standard prenexing of a sentence: biconditionals with quantified sides are
// expanded into two implications, bound variables are renamed apart, then
// quantifiers are pulled to a prefix named x1..xq in order. No attempt is
// made to merge or minimize quantifiers.
PrenexSentence to_prenex(const Formula& f);
FormulaPtr prenex_to_formula(const PrenexSentence& ps);

// Game formula for the m-round differential game between k-tuples, free
// variables x1..xk, y1..yk. xi_0 is atomic agreement of the two tuples;
// xi_m says every Spoiler move in some D(x_i,y_i), on either side, admits a
// Duplicator reply in the same D that keeps xi_{m-1}.
FormulaPtr xi_formula(int m, int k, const std::set<std::string>& label_alphabet);

// H = I_psi(G): V(H) = V(G), edge uv iff u != v and G |= psi(u,v) or
// psi(v,u). psi must have free variables exactly {x, y}. The result carries
// no labels or colors unless keep_labels is set.
LabeledGraph apply_interpretation(const LabeledGraph& g, const Formula& psi,
                                  bool keep_labels = false);

// Adds fresh labels pin:i on tuple[i-1] and pinN:i on its neighbors (1-based
// i), keeping existing labels.
LabeledGraph pin_tuple_labels(const LabeledGraph& g, const std::vector<int>& tuple);

// Rewrites phi(x1..x{k+1}) into phi'(x) such that
//   G |= phi(v1..vk, u)  <=>  pin_tuple_labels(G, v) |= phi'(u).
// Atoms among pinned variables fold to constants; E(x_i, t) becomes
// L[pinN:i](t) and x_i = t becomes L[pin:i](t) for any other term t; the
// surviving free variable x{k+1} is renamed to x.
FormulaPtr rewrite_with_pinned_tuple(const Formula& phi, const LabeledGraph& g,
                                     const std::vector<int>& tuple);

}  // namespace diffmc

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "charweb/system.hpp"

namespace charweb {

enum class ExprOp { Var, Sum, Meet };

/// Admissible expression over variables X1..Xs: a variable, a sum, or an
/// intersection of admissible expressions. Values are always held in
/// canonical form: same-operator children are flattened, children are sorted
/// by a total structural order, and single-child nodes collapse, so two
/// expressions equal up to associativity/commutativity compare equal as data.
/// Operator levels strictly alternate as a consequence.
class Expr {
public:
    static Expr var(int index);  // 1-based
    static Expr sum(std::vector<Expr> children);
    static Expr meet(std::vector<Expr> children);
    static Expr node(ExprOp op, std::vector<Expr> children);

    ExprOp op() const { return op_; }
    bool is_var() const { return op_ == ExprOp::Var; }
    int var_index() const { return var_; }
    const std::vector<Expr>& children() const { return children_; }

    void collect_vars(std::map<int, int>& multiset) const;
    std::map<int, int> var_multiset() const;
    std::set<int> var_set() const;
    /// Every variable occurs at most once in this expression.
    bool is_multilinear() const;
    int max_var() const;

    /// Sum -> subspace sum, Meet -> subspace intersection, Xi -> E_i.
    Subspace evaluate(const SubspaceSystem& system) const;

    /// Concrete syntax: "+" for sum, "&" for intersection ("&" binds
    /// tighter), parentheses only where precedence requires them.
    std::string str() const;

    /// Grammar:  expr := term ("+" term)* ; term := atom ("&" atom)* ;
    ///           atom := VAR | "(" expr ")" ; VAR := "X" [1-9][0-9]* .
    /// Result is canonical. With `max_index`, variables above the bound are
    /// rejected (SemanticError); syntax problems are ParseErrors with the
    /// offending position.
    static Expr parse(std::string_view text, std::optional<int> max_index = std::nullopt);

    static int compare(const Expr& a, const Expr& b);
    friend bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Expr& a, const Expr& b) { return compare(a, b) != 0; }
    friend bool operator<(const Expr& a, const Expr& b) { return compare(a, b) < 0; }

private:
    Expr() = default;

    ExprOp op_ = ExprOp::Var;
    int var_ = 0;
    std::vector<Expr> children_;
};

/// True iff every variable occurs at most once in p and q combined.
bool is_independent_pair(const Expr& p, const Expr& q);

inline constexpr int kDefaultEnumerationBudget = 9;

/// All canonical expressions whose variable multiset is exactly `vars` with
/// each variable used once, in ascending structural order. Refuses sets
/// larger than `budget` (ResourceError); counts grow super-exponentially.
std::vector<Expr> enumerate_multilinear(const std::set<int>& vars,
                                        int budget = kDefaultEnumerationBudget);

}  // namespace charweb

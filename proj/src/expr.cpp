#include "charweb/expr.hpp"

#include <algorithm>
#include <cctype>

#include "charweb/errors.hpp"

namespace charweb {

Expr Expr::var(int index) {
    if (index < 1) throw SemanticError("expression: variable index must be >= 1");
    Expr e;
    e.op_ = ExprOp::Var;
    e.var_ = index;
    return e;
}

Expr Expr::node(ExprOp op, std::vector<Expr> children) {
    if (op == ExprOp::Var) throw SemanticError("expression: a variable has no children");
    return op == ExprOp::Sum ? sum(std::move(children)) : meet(std::move(children));
}

Expr Expr::sum(std::vector<Expr> children) {
    if (children.empty()) throw SemanticError("expression: empty sum");
    std::vector<Expr> flat;
    flat.reserve(children.size());
    for (Expr& c : children) {
        if (c.op_ == ExprOp::Sum) {
            for (Expr& g : c.children_) flat.push_back(std::move(g));
        } else {
            flat.push_back(std::move(c));
        }
    }
    if (flat.size() == 1) return flat.front();
    std::sort(flat.begin(), flat.end());
    Expr e;
    e.op_ = ExprOp::Sum;
    e.children_ = std::move(flat);
    return e;
}

Expr Expr::meet(std::vector<Expr> children) {
    if (children.empty()) throw SemanticError("expression: empty intersection");
    std::vector<Expr> flat;
    flat.reserve(children.size());
    for (Expr& c : children) {
        if (c.op_ == ExprOp::Meet) {
            for (Expr& g : c.children_) flat.push_back(std::move(g));
        } else {
            flat.push_back(std::move(c));
        }
    }
    if (flat.size() == 1) return flat.front();
    std::sort(flat.begin(), flat.end());
    Expr e;
    e.op_ = ExprOp::Meet;
    e.children_ = std::move(flat);
    return e;
}

int Expr::compare(const Expr& a, const Expr& b) {
    auto rank = [](const Expr& e) {
        switch (e.op_) {
            case ExprOp::Var: return 0;
            case ExprOp::Sum: return 1;
            case ExprOp::Meet: return 2;
        }
        return 3;
    };
    if (rank(a) != rank(b)) return rank(a) < rank(b) ? -1 : 1;
    if (a.op_ == ExprOp::Var) return a.var_ == b.var_ ? 0 : (a.var_ < b.var_ ? -1 : 1);
    const std::size_t k = std::min(a.children_.size(), b.children_.size());
    for (std::size_t i = 0; i < k; ++i) {
        int c = compare(a.children_[i], b.children_[i]);
        if (c != 0) return c;
    }
    if (a.children_.size() != b.children_.size())
        return a.children_.size() < b.children_.size() ? -1 : 1;
    return 0;
}

void Expr::collect_vars(std::map<int, int>& multiset) const {
    if (op_ == ExprOp::Var) {
        ++multiset[var_];
        return;
    }
    for (const Expr& c : children_) c.collect_vars(multiset);
}

std::map<int, int> Expr::var_multiset() const {
    std::map<int, int> m;
    collect_vars(m);
    return m;
}

std::set<int> Expr::var_set() const {
    std::set<int> s;
    for (const auto& [v, count] : var_multiset()) s.insert(v);
    return s;
}

bool Expr::is_multilinear() const {
    for (const auto& [v, count] : var_multiset())
        if (count > 1) return false;
    return true;
}

int Expr::max_var() const {
    if (op_ == ExprOp::Var) return var_;
    int m = 0;
    for (const Expr& c : children_) m = std::max(m, c.max_var());
    return m;
}

Subspace Expr::evaluate(const SubspaceSystem& system) const {
    if (op_ == ExprOp::Var) {
        if (var_ > system.size())
            throw SemanticError("expression: variable X" + std::to_string(var_) +
                                " out of range for a system of " + std::to_string(system.size()) +
                                " members");
        return system.member(var_ - 1);
    }
    Subspace acc = children_.front().evaluate(system);
    for (std::size_t i = 1; i < children_.size(); ++i) {
        Subspace next = children_[i].evaluate(system);
        acc = op_ == ExprOp::Sum ? charweb::sum(acc, next) : intersect(acc, next);
    }
    return acc;
}

std::string Expr::str() const {
    switch (op_) {
        case ExprOp::Var:
            return "X" + std::to_string(var_);
        case ExprOp::Sum: {
            // Children of a canonical sum are variables or intersections;
            // '&' binds tighter than '+', so no parentheses are needed.
            std::string out;
            for (std::size_t i = 0; i < children_.size(); ++i) {
                if (i) out += '+';
                out += children_[i].str();
            }
            return out;
        }
        case ExprOp::Meet: {
            std::string out;
            for (std::size_t i = 0; i < children_.size(); ++i) {
                if (i) out += '&';
                if (children_[i].op_ == ExprOp::Sum) {
                    out += '(' + children_[i].str() + ')';
                } else {
                    out += children_[i].str();
                }
            }
            return out;
        }
    }
    return {};
}

namespace {

class Parser {
public:
    Parser(std::string_view text, std::optional<int> max_index)
        : text_(text), max_index_(max_index) {}

    Expr run() {
        Expr e = parse_sum();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected character");
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("expression: " + what + " at position " + std::to_string(pos_), pos_);
    }

    Expr parse_sum() {
        std::vector<Expr> terms{parse_term()};
        while (eat('+')) terms.push_back(parse_term());
        return Expr::sum(std::move(terms));
    }

    Expr parse_term() {
        std::vector<Expr> atoms{parse_atom()};
        while (eat('&')) atoms.push_back(parse_atom());
        return Expr::meet(std::move(atoms));
    }

    Expr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected a variable or '('");
        if (eat('(')) {
            Expr e = parse_sum();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (text_[pos_] != 'X') fail("expected a variable or '('");
        ++pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected a variable index");
        if (text_[pos_] == '0') fail("variable indices start at 1");
        int value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > 1000000) fail("variable index too large");
            ++pos_;
        }
        if (max_index_ && value > *max_index_)
            throw SemanticError("expression: variable X" + std::to_string(value) +
                                " exceeds the declared count " + std::to_string(*max_index_));
        return Expr::var(value);
    }

    std::string_view text_;
    std::optional<int> max_index_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr Expr::parse(std::string_view text, std::optional<int> max_index) {
    return Parser(text, max_index).run();
}

bool is_independent_pair(const Expr& p, const Expr& q) {
    std::map<int, int> combined;
    p.collect_vars(combined);
    q.collect_vars(combined);
    for (const auto& [v, count] : combined)
        if (count > 1) return false;
    return true;
}

namespace {

// Set partitions of `items` into at least `min_blocks` blocks.
void partitions_rec(const std::vector<int>& items, std::size_t next,
                    std::vector<std::vector<int>>& current,
                    std::vector<std::vector<std::vector<int>>>& out) {
    if (next == items.size()) {
        out.push_back(current);
        return;
    }
    for (std::size_t b = 0; b <= current.size(); ++b) {
        if (b == current.size()) {
            current.push_back({items[next]});
            partitions_rec(items, next + 1, current, out);
            current.pop_back();
        } else {
            current[b].push_back(items[next]);
            partitions_rec(items, next + 1, current, out);
            current[b].pop_back();
        }
    }
}

std::vector<std::vector<std::vector<int>>> set_partitions(const std::vector<int>& items) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> current;
    partitions_rec(items, 0, current, out);
    return out;
}

// All canonical multilinear expressions on `vars` whose root operator is
// `root` (for singleton blocks, the variable itself).
std::vector<Expr> rooted(ExprOp root, const std::vector<int>& vars);

void cross_product(ExprOp root, const std::vector<std::vector<Expr>>& per_block,
                   std::size_t at, std::vector<Expr>& picked, std::vector<Expr>& out) {
    if (at == per_block.size()) {
        std::vector<Expr> children = picked;
        out.push_back(Expr::node(root, std::move(children)));
        return;
    }
    for (const Expr& choice : per_block[at]) {
        picked.push_back(choice);
        cross_product(root, per_block, at + 1, picked, out);
        picked.pop_back();
    }
}

std::vector<Expr> rooted(ExprOp root, const std::vector<int>& vars) {
    std::vector<Expr> out;
    if (vars.size() < 2) return out;
    const ExprOp dual = root == ExprOp::Sum ? ExprOp::Meet : ExprOp::Sum;
    for (const auto& part : set_partitions(vars)) {
        if (part.size() < 2) continue;
        std::vector<std::vector<Expr>> per_block;
        per_block.reserve(part.size());
        bool dead = false;
        for (const auto& block : part) {
            if (block.size() == 1) {
                per_block.push_back({Expr::var(block.front())});
            } else {
                std::vector<Expr> inner = rooted(dual, block);
                if (inner.empty()) {
                    dead = true;
                    break;
                }
                per_block.push_back(std::move(inner));
            }
        }
        if (dead) continue;
        std::vector<Expr> picked;
        cross_product(root, per_block, 0, picked, out);
    }
    return out;
}

}  // namespace

std::vector<Expr> enumerate_multilinear(const std::set<int>& vars, int budget) {
    if (vars.empty()) throw SemanticError("enumerate: empty variable set");
    if (static_cast<int>(vars.size()) > budget)
        throw ResourceError("enumerate: " + std::to_string(vars.size()) +
                            " variables exceed the enumeration budget " + std::to_string(budget));
    std::vector<int> items(vars.begin(), vars.end());
    std::vector<Expr> out;
    if (items.size() == 1) {
        out.push_back(Expr::var(items.front()));
        return out;
    }
    for (Expr& e : rooted(ExprOp::Sum, items)) out.push_back(std::move(e));
    for (Expr& e : rooted(ExprOp::Meet, items)) out.push_back(std::move(e));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace charweb

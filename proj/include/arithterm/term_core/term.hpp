#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "../nat.hpp"

namespace arithterm {

enum class Kind : std::uint8_t {
    Const, Var, Add, Monus, FloorDiv, Pow,  // kernel
    Mul, Mod, Max, Gcd, HW,                 // extended
};

inline bool is_kernel_kind(Kind k) { return k <= Kind::Pow; }

inline int kind_arity(Kind k) {
    switch (k) {
    case Kind::Const:
    case Kind::Var: return 0;
    case Kind::HW: return 1;
    default: return 2;
    }
}

inline const char* kind_name(Kind k) {
    switch (k) {
    case Kind::Const: return "const";
    case Kind::Var: return "var";
    case Kind::Add: return "+";
    case Kind::Monus: return "monus";
    case Kind::FloorDiv: return "div";
    case Kind::Pow: return "pow";
    case Kind::Mul: return "*";
    case Kind::Mod: return "mod";
    case Kind::Max: return "max";
    case Kind::Gcd: return "gcd";
    case Kind::HW: return "hw";
    }
    return "?";
}

class Term;
struct Node;

// Evaluation hook: a subterm that computes a named function of argument subterms.
// Evaluators may answer it from a registered oracle instead of expanding the subterm.
struct CallSite {
    std::string fn;
    std::vector<std::shared_ptr<const Node>> args;
};

// Annotations never take part in structural equality or serialization.
struct Annotation {
    bool exact = false;       // Monus must not truncate / FloorDiv must leave no remainder
    std::string site;         // label used in assertion logs
    std::shared_ptr<const CallSite> call;
};

struct Node {
    Kind kind;
    Nat value;                // Const
    std::uint32_t index = 0;  // Var
    std::shared_ptr<const Node> a, b;
    Annotation note;
    std::size_t hash = 0;
};

using NodePtr = std::shared_ptr<const Node>;

class Term {
public:
    Term() = default;
    explicit Term(NodePtr p) : p_(std::move(p)) {}

    const Node& node() const { return *p_; }
    const Node* get() const { return p_.get(); }
    const NodePtr& ptr() const { return p_; }
    Kind kind() const { return p_->kind; }
    bool valid() const { return static_cast<bool>(p_); }

    Term lhs() const { return Term(p_->a); }
    Term rhs() const { return Term(p_->b); }

private:
    NodePtr p_;
};

namespace detail {

inline std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

inline NodePtr make(Kind k, NodePtr a, NodePtr b, Annotation note = {}) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    n->note = std::move(note);
    std::size_t h = static_cast<std::size_t>(k) * 1315423911u;
    if (n->a) h = mix(h, n->a->hash);
    if (n->b) h = mix(h, n->b->hash);
    n->hash = h;
    return n;
}

}  // namespace detail

inline Term cnst(const Nat& v) {
    if (v < 0) throw DomainError("negative constant");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->value = v;
    n->hash = detail::mix(17, std::hash<std::string>{}(v.get_str(16)));
    return Term(n);
}
inline Term cnst(unsigned long v) { return cnst(Nat(v)); }

inline Term var(std::uint32_t i) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->index = i;
    n->hash = detail::mix(29, i);
    return Term(n);
}

inline Term make_binary(Kind k, const Term& x, const Term& y, Annotation note = {}) {
    return Term(detail::make(k, x.ptr(), y.ptr(), std::move(note)));
}

inline Term add(const Term& x, const Term& y) { return make_binary(Kind::Add, x, y); }
inline Term monus(const Term& x, const Term& y) { return make_binary(Kind::Monus, x, y); }
inline Term fdiv(const Term& x, const Term& y) { return make_binary(Kind::FloorDiv, x, y); }
inline Term pow(const Term& x, const Term& y) { return make_binary(Kind::Pow, x, y); }
inline Term mul(const Term& x, const Term& y) { return make_binary(Kind::Mul, x, y); }
inline Term mod(const Term& x, const Term& y) { return make_binary(Kind::Mod, x, y); }
inline Term max(const Term& x, const Term& y) { return make_binary(Kind::Max, x, y); }
inline Term gcd(const Term& x, const Term& y) { return make_binary(Kind::Gcd, x, y); }
inline Term hw(const Term& x) { return Term(detail::make(Kind::HW, x.ptr(), nullptr)); }

// Monus asserted never to truncate.
inline Term monus_exact(const Term& x, const Term& y, std::string site) {
    Annotation a;
    a.exact = true;
    a.site = std::move(site);
    return make_binary(Kind::Monus, x, y, std::move(a));
}

// Division asserted to leave no remainder.
inline Term fdiv_exact(const Term& x, const Term& y, std::string site) {
    Annotation a;
    a.exact = true;
    a.site = std::move(site);
    return make_binary(Kind::FloorDiv, x, y, std::move(a));
}

// Same subterm, tagged as computing fn(args).
inline Term with_call(const Term& t, std::string fn, const std::vector<Term>& args) {
    auto cs = std::make_shared<CallSite>();
    cs->fn = std::move(fn);
    for (const auto& x : args) cs->args.push_back(x.ptr());
    auto n = std::make_shared<Node>(t.node());
    n->note.call = std::move(cs);
    return Term(n);
}

inline Term operator+(const Term& x, const Term& y) { return add(x, y); }
inline Term operator*(const Term& x, const Term& y) { return mul(x, y); }

// Left-folded sum; empty sum is 0.
inline Term sum_of(const std::vector<Term>& xs) {
    if (xs.empty()) return cnst(0);
    Term acc = xs.front();
    for (std::size_t i = 1; i < xs.size(); ++i) acc = add(acc, xs[i]);
    return acc;
}

inline Term product_of(const std::vector<Term>& xs) {
    if (xs.empty()) return cnst(1);
    Term acc = xs.front();
    for (std::size_t i = 1; i < xs.size(); ++i) acc = mul(acc, xs[i]);
    return acc;
}

inline bool structurally_equal(const Term& x, const Term& y) {
    std::set<std::pair<const Node*, const Node*>> seen;
    std::function<bool(const Node*, const Node*)> eq = [&](const Node* a, const Node* b) -> bool {
        if (a == b) return true;
        if (!a || !b) return false;
        if (a->hash != b->hash || a->kind != b->kind) return false;
        auto key = std::make_pair(a, b);
        if (seen.count(key)) return true;
        bool r;
        switch (a->kind) {
        case Kind::Const: r = a->value == b->value; break;
        case Kind::Var: r = a->index == b->index; break;
        default: r = eq(a->a.get(), b->a.get()) && eq(a->b.get(), b->b.get());
        }
        if (r) seen.insert(key);
        return r;
    };
    return eq(x.get(), y.get());
}

template <class F>
void visit_dag(const Term& t, F&& f) {
    std::unordered_set<const Node*> seen;
    std::vector<const Node*> stack{t.get()};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        if (!n || !seen.insert(n).second) continue;
        f(*n);
        stack.push_back(n->a.get());
        stack.push_back(n->b.get());
        if (n->note.call)
            for (const auto& x : n->note.call->args) stack.push_back(x.get());
    }
}

// Number of input variables: one past the largest Var index.
inline std::uint32_t arity(const Term& t) {
    std::uint32_t r = 0;
    visit_dag(t, [&](const Node& n) {
        if (n.kind == Kind::Var) r = std::max<std::uint32_t>(r, n.index + 1);
    });
    return r;
}

inline bool is_kernel_only(const Term& t) {
    bool ok = true;
    visit_dag(t, [&](const Node& n) {
        if (!is_kernel_kind(n.kind)) ok = false;
    });
    return ok;
}

// Replace Var i by repl[i]; sharing and annotations are preserved.
inline Term substitute(const Term& t, const std::vector<Term>& repl) {
    std::unordered_map<const Node*, NodePtr> memo;
    std::function<NodePtr(const NodePtr&)> go = [&](const NodePtr& n) -> NodePtr {
        if (!n) return n;
        auto it = memo.find(n.get());
        if (it != memo.end()) return it->second;
        NodePtr out;
        if (n->kind == Kind::Var) {
            if (n->index >= repl.size()) throw ArityMismatch("substitution misses var " + std::to_string(n->index));
            out = repl[n->index].ptr();
        } else if (n->kind == Kind::Const) {
            out = n;
        } else {
            Annotation note = n->note;
            if (note.call) {
                auto cs = std::make_shared<CallSite>(*note.call);
                for (auto& x : cs->args) x = go(x);
                note.call = cs;
            }
            NodePtr a = go(n->a), b = go(n->b);
            if (a == n->a && b == n->b && note.call == n->note.call) out = n;
            else out = detail::make(n->kind, a, b, note);
        }
        memo.emplace(n.get(), out);
        return out;
    };
    return Term(go(t.ptr()));
}

}  // namespace arithterm

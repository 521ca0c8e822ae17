#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "term.hpp"

namespace arithterm {

enum class Format { Canonical, Infix, Latex, Appendix };

inline Format parse_format(const std::string& s) {
    if (s == "canonical") return Format::Canonical;
    if (s == "infix") return Format::Infix;
    if (s == "latex") return Format::Latex;
    if (s == "appendix") return Format::Appendix;
    throw DomainError("unknown format: " + s);
}

namespace detail {

class Printer {
public:
    Printer(Format f, const std::vector<std::string>& names) : f_(f), names_(names) {}

    void print(const Node& n, std::string& out) {
        switch (f_) {
        case Format::Canonical: canonical(n, out); break;
        case Format::Infix: infix(n, out); break;
        case Format::Latex: latex(n, out); break;
        case Format::Appendix: appendix(n, 0, out); break;
        }
    }

private:
    Format f_;
    const std::vector<std::string>& names_;

    std::string name(std::uint32_t i, bool tex) const {
        if (i < names_.size()) return names_[i];
        return tex ? "n_{" + std::to_string(i) + "}" : "n" + std::to_string(i);
    }

    void canonical(const Node& n, std::string& out) {
        switch (n.kind) {
        case Kind::Const: out += n.value.get_str(); return;
        case Kind::Var: out += "(var " + std::to_string(n.index) + ")"; return;
        case Kind::HW:
            out += "(hw ";
            canonical(*n.a, out);
            out += ")";
            return;
        default:
            out += "(";
            out += kind_name(n.kind);
            out += " ";
            canonical(*n.a, out);
            out += " ";
            canonical(*n.b, out);
            out += ")";
        }
    }

    void infix(const Node& n, std::string& out) {
        auto bin = [&](const char* op) {
            out += "(";
            infix(*n.a, out);
            out += op;
            infix(*n.b, out);
            out += ")";
        };
        auto call = [&](const char* f) {
            out += f;
            out += "(";
            infix(*n.a, out);
            if (n.b) {
                out += ", ";
                infix(*n.b, out);
            }
            out += ")";
        };
        switch (n.kind) {
        case Kind::Const: out += n.value.get_str(); return;
        case Kind::Var: out += name(n.index, false); return;
        case Kind::Add: bin(" + "); return;
        case Kind::Monus: bin(" ∸ "); return;
        case Kind::Mul: bin(" · "); return;
        case Kind::Mod: bin(" mod "); return;
        case Kind::FloorDiv:
            out += "⌊";
            infix(*n.a, out);
            out += " / ";
            infix(*n.b, out);
            out += "⌋";
            return;
        case Kind::Pow: {
            bool pb = n.a->kind == Kind::Pow, pe = n.b->kind == Kind::Pow;
            if (pb) out += "(";
            infix(*n.a, out);
            if (pb) out += ")";
            out += "^";
            if (pe) out += "(";
            infix(*n.b, out);
            if (pe) out += ")";
            return;
        }
        case Kind::Max: call("max"); return;
        case Kind::Gcd: call("gcd"); return;
        case Kind::HW: call("HW"); return;
        }
    }

    void latex(const Node& n, std::string& out) {
        auto bin = [&](const char* op) {
            out += "(";
            latex(*n.a, out);
            out += op;
            latex(*n.b, out);
            out += ")";
        };
        auto call = [&](const char* f) {
            out += f;
            out += "(";
            latex(*n.a, out);
            if (n.b) {
                out += ", ";
                latex(*n.b, out);
            }
            out += ")";
        };
        switch (n.kind) {
        case Kind::Const: out += n.value.get_str(); return;
        case Kind::Var: out += name(n.index, true); return;
        case Kind::Add: bin(" + "); return;
        case Kind::Monus: bin(" \\dotdiv "); return;
        case Kind::Mul: bin(" \\cdot "); return;
        case Kind::Mod: bin(" \\bmod "); return;
        case Kind::FloorDiv:
            out += "\\left\\lfloor \\frac{";
            latex(*n.a, out);
            out += "}{";
            latex(*n.b, out);
            out += "} \\right\\rfloor";
            return;
        case Kind::Pow:
            out += "{";
            latex(*n.a, out);
            out += "}^{";
            latex(*n.b, out);
            out += "}";
            return;
        case Kind::Max: call("\\max"); return;
        case Kind::Gcd: call("\\gcd"); return;
        case Kind::HW: call("\\operatorname{HW}"); return;
        }
    }

    static int prec(const Node& n) {
        switch (n.kind) {
        case Kind::Add:
        case Kind::Monus: return 1;
        case Kind::Mul: return 2;
        case Kind::Pow: return 3;
        default: return 4;
        }
    }

    // Maple-style spelling: irem, floor, ^, with minimal parentheses
    void appendix(const Node& n, int min_prec, std::string& out) {
        bool paren = prec(n) < min_prec;
        if (paren) out += "(";
        auto call = [&](const char* f) {
            out += f;
            out += "(";
            appendix(*n.a, 0, out);
            if (n.b) {
                out += ", ";
                appendix(*n.b, 0, out);
            }
            out += ")";
        };
        switch (n.kind) {
        case Kind::Const: out += n.value.get_str(); break;
        case Kind::Var: out += name(n.index, false); break;
        case Kind::Add:
            appendix(*n.a, 1, out);
            out += "+";
            appendix(*n.b, 1, out);
            break;
        case Kind::Monus:
            appendix(*n.a, 1, out);
            out += "-";
            appendix(*n.b, 2, out);
            break;
        case Kind::Mul:
            appendix(*n.a, 2, out);
            out += "*";
            appendix(*n.b, 2, out);
            break;
        case Kind::Pow:
            appendix(*n.a, 4, out);
            out += "^";
            appendix(*n.b, 4, out);
            break;
        case Kind::FloorDiv:
            out += "floor(";
            appendix(*n.a, 2, out);
            out += "/";
            appendix(*n.b, 3, out);
            out += ")";
            break;
        case Kind::Mod: call("irem"); break;
        case Kind::Max: call("max"); break;
        case Kind::Gcd: call("igcd"); break;
        case Kind::HW: call("HW"); break;
        }
        if (paren) out += ")";
    }
};

}  // namespace detail

inline std::string print_term(const Term& t, Format f = Format::Canonical, const std::vector<std::string>& names = {}) {
    std::string out;
    detail::Printer p(f, names);
    p.print(t.node(), out);
    return out;
}

struct SizeMetrics {
    std::uint64_t nodes = 0;  // tree size with shared subterms counted at every use (saturating)
    std::uint64_t depth = 0;
    std::uint64_t max_const_bits = 0;
    std::uint64_t distinct_nodes = 0;

    bool operator==(const SizeMetrics&) const = default;
};

inline SizeMetrics size_metrics(const Term& t) {
    struct Acc {
        std::uint64_t nodes, depth;
    };
    std::unordered_map<const Node*, Acc> memo;
    SizeMetrics m;
    auto sat_add = [](std::uint64_t a, std::uint64_t b) {
        std::uint64_t r = a + b;
        return r < a ? ~std::uint64_t{0} : r;
    };
    std::function<Acc(const Node*)> go = [&](const Node* n) -> Acc {
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
        Acc r{1, 1};
        if (n->kind == Kind::Const) m.max_const_bits = std::max<std::uint64_t>(m.max_const_bits, bit_length(n->value));
        for (const Node* ch : {n->a.get(), n->b.get()}) {
            if (!ch) continue;
            Acc c = go(ch);
            r.nodes = sat_add(r.nodes, c.nodes);
            r.depth = std::max(r.depth, c.depth + 1);
        }
        memo.emplace(n, r);
        return r;
    };
    Acc a = go(t.get());
    m.nodes = a.nodes;
    m.depth = a.depth;
    m.distinct_nodes = memo.size();
    return m;
}

}  // namespace arithterm

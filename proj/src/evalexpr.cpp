#include "supcone/evalexpr.hpp"

#include <cctype>

#include <nlohmann/json.hpp>

namespace supcone {

namespace {

struct Parser {
    const std::string& src;
    const ModelSpec& model;
    std::size_t pos = 0;
    std::size_t dim;

    Parser(const std::string& s, const ModelSpec& m) : src(s), model(m), dim(m.dim()) {}

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c))
            throw ParseError(std::string("expected '") + c + "' at offset " + std::to_string(pos));
    }

    ExtVec<Rat> broadcast(const Ext<Rat>& v) const { return ExtVec<Rat>(dim, v); }

    static LatVec<Rat> finite_or_throw(const ExtVec<Rat>& v, const char* what) {
        if (!all_finite(v))
            throw DomainError(std::string(what) + " needs a finite operand");
        return to_lat(v);
    }

    ExtVec<Rat> expr() {
        ExtVec<Rat> acc = term();
        for (;;) {
            if (eat('+')) {
                acc = add(acc, term());
            } else if (eat('-')) {
                acc = sub(acc, finite_or_throw(term(), "subtraction"));
            } else {
                return acc;
            }
        }
    }

    ExtVec<Rat> term() {
        ExtVec<Rat> acc = factor();
        while (eat('*')) acc = product(acc, factor());
        return acc;
    }

    static ExtVec<Rat> product(const ExtVec<Rat>& a, const ExtVec<Rat>& b) {
        if (all_finite(a) && all_finite(b)) {
            ExtVec<Rat> r(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) r[i] = Ext<Rat>(a[i].v * b[i].v);
            return r;
        }
        return multiply(a, b); // cone product; checks sign
    }

    ExtVec<Rat> factor() {
        skip_ws();
        if (pos >= src.size()) throw ParseError("unexpected end of expression");
        const char c = src[pos];
        if (c == '(') {
            ++pos;
            ExtVec<Rat> v = expr();
            expect(')');
            return v;
        }
        if (c == '-') {
            ++pos;
            const LatVec<Rat> v = finite_or_throw(factor(), "negation");
            return to_ext(scale(Rat(-1), v));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return broadcast(Ext<Rat>(rational()));
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name_or_call();
        throw ParseError(std::string("unexpected character '") + c + "' at offset " +
                         std::to_string(pos));
    }

    Rat rational() {
        const std::size_t start = pos;
        while (pos < src.size() &&
               (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '/'))
            ++pos;
        return parse_rational(src.substr(start, pos - start));
    }

    ExtVec<Rat> name_or_call() {
        const std::size_t start = pos;
        while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                                    src[pos] == '_'))
            ++pos;
        const std::string id = src.substr(start, pos - start);
        if (id == "inf") return broadcast(Ext<Rat>::infinity());
        skip_ws();
        if (pos < src.size() && src[pos] == '(') {
            ++pos;
            std::vector<ExtVec<Rat>> args;
            args.push_back(expr());
            while (eat(',')) args.push_back(expr());
            expect(')');
            return call(id, args);
        }
        const auto it = model.vectors.find(id);
        if (it == model.vectors.end()) throw ParseError("unknown vector: " + id);
        return instantiate_extvec<Rat>(it->second);
    }

    static ExtVec<Rat> call(const std::string& fn, const std::vector<ExtVec<Rat>>& args) {
        auto arity = [&](std::size_t want) {
            if (args.size() != want)
                throw ParseError(fn + " takes " + std::to_string(want) + " argument(s)");
        };
        if (fn == "min" || fn == "max") {
            if (args.size() < 2) throw ParseError(fn + " takes at least 2 arguments");
            ExtVec<Rat> acc = args[0];
            for (std::size_t k = 1; k < args.size(); ++k)
                acc = fn == "min" ? meet(acc, args[k]) : join(acc, args[k]);
            return acc;
        }
        if (fn == "abs") {
            arity(1);
            return abs_vec(args[0]);
        }
        if (fn == "pos") {
            arity(1);
            return pos_part(args[0]);
        }
        if (fn == "neg") {
            arity(1);
            return to_ext(neg_part(args[0]));
        }
        throw ParseError("unknown function: " + fn);
    }
};

} // namespace

std::string eval_expr(const ModelSpec& m, const std::string& expr) {
    validate_model(m);
    Parser p(expr, m);
    const ExtVec<Rat> v = p.expr();
    p.skip_ws();
    if (p.pos != expr.size())
        throw ParseError("trailing input at offset " + std::to_string(p.pos));
    nlohmann::ordered_json out;
    out["expr"] = expr;
    nlohmann::ordered_json vals = nlohmann::ordered_json::array();
    for (const auto& c : v) vals.push_back(ext_to_string(c));
    out["value"] = vals;
    return out.dump(2) + "\n";
}

} // namespace supcone

#include "locres/parser.hpp"

#include "locres/errors.hpp"

#include <cctype>
#include <map>
#include <optional>

namespace locres {

namespace {

struct Lexer {
    std::string s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::optional<Int> integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) return std::nullopt;
        return Int(s.substr(start, pos - start));
    }
    std::optional<std::string> name() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (pos == start) return std::nullopt;
        if (std::isdigit(static_cast<unsigned char>(s[start]))) {
            pos = start;
            return std::nullopt;
        }
        return s.substr(start, pos - start);
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw parse_error(msg + " at position " + std::to_string(pos) + " in '" + s + "'");
    }
};

class PolyParser {
  public:
    PolyParser(const std::string& text, const std::vector<std::string>& names)
        : lex_{text}, nvars_(names.size()) {
        for (std::size_t k = 0; k < names.size(); ++k) var_index_[names[k]] = k;
    }

    MultiPoly run() {
        MultiPoly p = expr();
        if (!lex_.eof()) lex_.fail("trailing input");
        return p;
    }

  private:
    MultiPoly expr() {
        MultiPoly p = lex_.accept('-') ? -term() : (lex_.accept('+'), term());
        for (;;) {
            if (lex_.accept('+')) p += term();
            else if (lex_.accept('-')) p -= term();
            else return p;
        }
    }

    // factors chained by '*' or by juxtaposition
    MultiPoly term() {
        MultiPoly p = factor();
        for (;;) {
            if (lex_.accept('*')) {
                p *= factor();
                continue;
            }
            char c = lex_.peek();
            if (c == '(' || c == 'i' || c == 'p' || std::isdigit(static_cast<unsigned char>(c)) ||
                std::isalpha(static_cast<unsigned char>(c))) {
                p *= factor();
                continue;
            }
            return p;
        }
    }

    MultiPoly factor() {
        MultiPoly base = atom();
        if (!lex_.accept('^')) return base;
        bool neg = lex_.accept('-');
        auto e = lex_.integer();
        if (!e) lex_.fail("expected integer exponent");
        long ee = e->get_si();
        if (neg) {
            if (!base.is_constant() || base.constant_term().is_zero())
                lex_.fail("negative exponent on non-invertible factor");
            return MultiPoly::constant(nvars_, base.constant_term().pow(-ee));
        }
        return base.pow(static_cast<unsigned>(ee));
    }

    MultiPoly atom() {
        if (lex_.accept('(')) {
            MultiPoly p = expr();
            if (!lex_.accept(')')) lex_.fail("expected ')'");
            return p;
        }
        if (lex_.accept('-')) return -factor();
        if (auto n = lex_.integer()) {
            Rat q(*n);
            if (lex_.accept('/')) {
                auto d = lex_.integer();
                if (!d || *d == 0) lex_.fail("expected nonzero denominator");
                q /= Rat(*d);
            }
            return MultiPoly::constant(nvars_, Scalar(q));
        }
        if (auto nm = lex_.name()) {
            if (*nm == "i") return MultiPoly::constant(nvars_, Scalar::i());
            if (*nm == "pi") return MultiPoly::constant(nvars_, Scalar::pi_power(1));
            auto it = var_index_.find(*nm);
            if (it == var_index_.end()) lex_.fail("unknown variable '" + *nm + "'");
            return MultiPoly::variable(nvars_, it->second);
        }
        lex_.fail("expected value");
    }

    Lexer lex_;
    std::size_t nvars_;
    std::map<std::string, std::size_t> var_index_;
};

} // namespace

MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& names) {
    return PolyParser(text, names).run();
}

std::vector<std::string> psi_names(std::size_t l) {
    std::vector<std::string> names;
    names.reserve(l);
    for (std::size_t k = 1; k <= l; ++k) names.push_back("psi" + std::to_string(k));
    return names;
}

Scalar parse_scalar(const std::string& text) {
    MultiPoly p = parse_poly(text, {});
    return p.constant_term();
}

RatVec parse_rat_vec(const std::string& text) {
    RatVec v;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string piece =
            comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
        v.push_back(rat_from_string(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return v;
}

namespace {

// Linear combination over e1..el / psi1..psil, returned as coefficient map.
std::map<std::size_t, Rat> linear_combo(const std::string& text, std::size_t& max_index) {
    Lexer lex{text};
    std::map<std::size_t, Rat> coeffs;
    bool first = true;
    while (!lex.eof()) {
        Rat sign(1);
        if (lex.accept('+')) sign = 1;
        else if (lex.accept('-')) sign = -1;
        else if (!first) lex.fail("expected '+' or '-'");
        first = false;

        Rat mag(1);
        bool have_mag = false;
        if (auto n = lex.integer()) {
            mag = Rat(*n);
            have_mag = true;
            if (lex.accept('/')) {
                auto d = lex.integer();
                if (!d || *d == 0) lex.fail("expected nonzero denominator");
                mag /= Rat(*d);
            }
            lex.accept('*');
        }
        auto nm = lex.name();
        if (!nm) {
            if (have_mag) lex.fail("expected basis name e<k>");
            lex.fail("expected term");
        }
        std::size_t k = 0;
        const std::string& s = *nm;
        std::size_t digits = 0;
        while (digits < s.size() && !std::isdigit(static_cast<unsigned char>(s[digits]))) ++digits;
        std::string head = s.substr(0, digits);
        if ((head != "e" && head != "psi") || digits == s.size())
            lex.fail("expected basis name e<k> or psi<k>");
        k = std::stoul(s.substr(digits));
        if (k == 0) lex.fail("basis indices start at 1");
        coeffs[k - 1] += sign * mag;
        max_index = std::max(max_index, k);
    }
    return coeffs;
}

} // namespace

LinearForm parse_linear_form(const std::string& text, std::size_t l) {
    std::size_t max_index = 0;
    auto coeffs = linear_combo(text, max_index);
    if (l == 0) l = max_index;
    if (max_index > l) throw parse_error("basis index exceeds rank " + std::to_string(l));
    LinearForm f(l);
    for (const auto& [k, q] : coeffs) f[k] = q;
    return f;
}

std::vector<LinearForm> parse_linear_form_list(const std::string& text, std::size_t l) {
    std::vector<std::string> pieces;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        pieces.push_back(comma == std::string::npos ? text.substr(start)
                                                    : text.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (l == 0) {
        for (const auto& p : pieces) {
            std::size_t mi = 0;
            linear_combo(p, mi);
            l = std::max(l, mi);
        }
    }
    std::vector<LinearForm> forms;
    forms.reserve(pieces.size());
    for (const auto& p : pieces) forms.push_back(parse_linear_form(p, l));
    return forms;
}

} // namespace locres

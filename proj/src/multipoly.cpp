#include "locres/multipoly.hpp"

#include "locres/errors.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace locres {

MultiPoly MultiPoly::constant(std::size_t nvars, const Scalar& c) {
    MultiPoly p(nvars);
    p.add_term(Expo(nvars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t k, unsigned power) {
    if (k >= nvars) throw algebra_error("variable index out of range");
    MultiPoly p(nvars);
    Expo e(nvars, 0);
    e[k] = power;
    p.add_term(e, Scalar(1));
    return p;
}

MultiPoly MultiPoly::from_linear_form(const LinearForm& f) {
    MultiPoly p(f.dim());
    for (std::size_t k = 0; k < f.dim(); ++k) {
        if (f[k] == 0) continue;
        Expo e(f.dim(), 0);
        e[k] = 1;
        p.add_term(e, Scalar(f[k]));
    }
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 &&
           terms_.begin()->first == Expo(nvars_, 0);
}

Scalar MultiPoly::constant_term() const {
    auto it = terms_.find(Expo(nvars_, 0));
    return it == terms_.end() ? Scalar() : it->second;
}

long MultiPoly::total_degree() const {
    long d = -1;
    for (const auto& [e, c] : terms_) {
        long t = 0;
        for (unsigned x : e) t += x;
        d = std::max(d, t);
    }
    return d;
}

bool MultiPoly::is_homogeneous(long* degree_out) const {
    long d = -1;
    for (const auto& [e, c] : terms_) {
        long t = 0;
        for (unsigned x : e) t += x;
        if (d == -1) d = t;
        else if (d != t) return false;
    }
    if (degree_out) *degree_out = d;
    return true;
}

void MultiPoly::add_term(const Expo& e, const Scalar& c) {
    if (e.size() != nvars_) throw algebra_error("exponent length mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (o.nvars_ != nvars_) throw algebra_error("polynomial addition: variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    if (o.nvars_ != nvars_) throw algebra_error("polynomial subtraction: variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
    if (o.nvars_ != nvars_) throw algebra_error("polynomial product: variable count mismatch");
    MultiPoly out(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Expo e(nvars_);
            for (std::size_t k = 0; k < nvars_; ++k) e[k] = ea[k] + eb[k];
            out.add_term(e, ca * cb);
        }
    }
    *this = std::move(out);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, x] : terms_) x *= c;
    return *this;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly p(*this);
    for (auto& [e, x] : p.terms_) x = -x;
    return p;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly acc = constant(nvars_, Scalar(1));
    MultiPoly base(*this);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

Scalar MultiPoly::eval(const RatVec& point) const {
    if (point.size() != nvars_) throw algebra_error("polynomial eval: dimension mismatch");
    Scalar s;
    for (const auto& [e, c] : terms_) {
        Rat m(1);
        for (std::size_t k = 0; k < nvars_; ++k)
            if (e[k]) m *= rat_pow(point[k], e[k]);
        s += c * Scalar(m);
    }
    return s;
}

MultiPoly MultiPoly::eval_var(std::size_t k, const Rat& value) const {
    MultiPoly out(nvars_ - 1);
    for (const auto& [e, c] : terms_) {
        Expo f;
        f.reserve(nvars_ - 1);
        for (std::size_t j = 0; j < nvars_; ++j)
            if (j != k) f.push_back(e[j]);
        out.add_term(f, c * Scalar(rat_pow(value, e[k])));
    }
    return out;
}

MultiPoly MultiPoly::derivative(std::size_t k) const {
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[k] == 0) continue;
        Expo f(e);
        f[k] -= 1;
        out.add_term(f, c * Scalar(Rat(e[k])));
    }
    return out;
}

MultiPoly MultiPoly::directional_derivative(const LinearForm& dir) const {
    if (dir.dim() != nvars_) throw algebra_error("directional derivative: dimension mismatch");
    MultiPoly out(nvars_);
    for (std::size_t k = 0; k < nvars_; ++k)
        if (dir[k] != 0) out += derivative(k) * Scalar(dir[k]);
    return out;
}

std::vector<MultiPoly> MultiPoly::expand_at(std::size_t k, const LinearForm& offset) const {
    // x_k -> offset(remaining vars) + u; returns u-power coefficients as
    // polynomials in the remaining variables.
    unsigned maxdeg = 0;
    for (const auto& [e, c] : terms_) maxdeg = std::max(maxdeg, e[k]);
    std::vector<MultiPoly> out(maxdeg + 1, MultiPoly(nvars_ - 1));

    // offset powers, computed once
    MultiPoly off = from_linear_form(offset);
    std::vector<MultiPoly> offpow;
    offpow.push_back(MultiPoly::constant(nvars_ - 1, Scalar(1)));
    for (unsigned d = 1; d <= maxdeg; ++d) offpow.push_back(offpow.back() * off);

    for (const auto& [e, c] : terms_) {
        Expo f;
        f.reserve(nvars_ - 1);
        for (std::size_t j = 0; j < nvars_; ++j)
            if (j != k) f.push_back(e[j]);
        MultiPoly mono(nvars_ - 1);
        mono.add_term(f, c);
        unsigned d = e[k];
        for (unsigned t = 0; t <= d; ++t) {
            // x^d contributes C(d,t) u^t offset^{d-t}
            Scalar b{Rat(binomial(d, t))};
            out[t] += mono * offpow[d - t] * b;
        }
    }
    return out;
}

MultiPoly MultiPoly::substitute_linear(const std::vector<LinearForm>& forms) const {
    if (forms.size() != nvars_)
        throw algebra_error("substitute_linear: expected one form per variable");
    std::size_t m = forms.empty() ? 0 : forms[0].dim();
    for (const auto& f : forms)
        if (f.dim() != m) throw algebra_error("substitute_linear: inconsistent target dimension");
    MultiPoly out(m);
    for (const auto& [e, c] : terms_) {
        MultiPoly mono = MultiPoly::constant(m, c);
        for (std::size_t k = 0; k < nvars_; ++k)
            if (e[k]) mono *= from_linear_form(forms[k]).pow(e[k]);
        out += mono;
    }
    return out;
}

unsigned MultiPoly::min_degree_in(std::size_t k) const {
    unsigned d = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (first || e[k] < d) d = e[k];
        first = false;
    }
    return first ? 0 : d;
}

MultiPoly MultiPoly::divide_by_variable(std::size_t k, unsigned power) const {
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[k] < power)
            throw algebra_error("polynomial not divisible by variable " + std::to_string(k + 1));
        Expo f(e);
        f[k] -= power;
        out.add_term(f, c);
    }
    return out;
}

std::string MultiPoly::to_string(const std::string& var) const {
    if (terms_.empty()) return "0";
    // graded-lex descending for a stable human-friendly order
    std::vector<const TermMap::value_type*> ts;
    for (const auto& t : terms_) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [](auto* a, auto* b) {
        long da = 0, db = 0;
        for (unsigned x : a->first) da += x;
        for (unsigned x : b->first) db += x;
        if (da != db) return da > db;
        return a->first > b->first;
    });
    std::ostringstream os;
    bool first = true;
    for (auto* t : ts) {
        if (!first) os << " + ";
        first = false;
        bool unit_coeff = (t->second == Scalar(1));
        bool has_vars = false;
        for (unsigned x : t->first)
            if (x) has_vars = true;
        if (!has_vars) {
            os << "(" << t->second << ")";
            continue;
        }
        if (!unit_coeff) os << "(" << t->second << ")*";
        bool firstv = true;
        for (std::size_t k = 0; k < nvars_; ++k) {
            if (!t->first[k]) continue;
            if (!firstv) os << "*";
            firstv = false;
            os << var << (k + 1);
            if (t->first[k] > 1) os << "^" << t->first[k];
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) {
    return os << p.to_string();
}

MultiPoly poly_substitute_linear(const MultiPoly& p, const std::vector<LinearForm>& forms) {
    return p.substitute_linear(forms);
}

} // namespace locres

#include "locres/model_library.hpp"

#include "locres/errors.hpp"
#include "locres/pairings.hpp"
#include "locres/parser.hpp"

#include <functional>

namespace locres {

std::vector<int> p1_power_signs(unsigned n, std::size_t index) {
    std::vector<int> signs(n);
    for (unsigned j = 0; j < n; ++j) signs[j] = (index >> j) & 1 ? -1 : 1;
    return signs;
}

LocalizationModel build_p1_power(unsigned n) {
    if (n == 0 || n % 2 == 0)
        throw model_error("product-of-spheres model needs odd N: 0 is a regular value "
                          "if and only if N is odd");
    std::size_t count = std::size_t(1) << n;
    auto gen = [n](std::size_t index) {
        std::vector<int> signs = p1_power_signs(n, index);
        FixedPointComponent f;
        f.label.reserve(n + 2);
        f.label = "n=";
        long mu = 0;
        for (unsigned j = 0; j < n; ++j) {
            f.label.push_back(signs[j] > 0 ? '+' : '-');
            mu += signs[j];
            f.weights.emplace_back(LinearForm(RatVec{Rat(signs[j])}), 1);
        }
        f.moment_image = LinearForm(RatVec{Rat(mu)});
        return f;
    };
    return LocalizationModel(GroupData::su2(), 2 * n, count, gen);
}

LocalizationModel build_projective_space(unsigned n) {
    if (n == 0 || n % 2 == 0)
        throw model_error("projective-space model needs odd N: 0 is a regular value "
                          "if and only if N is odd");
    std::vector<FixedPointComponent> pts;
    for (unsigned k = 0; k <= n; ++k) {
        FixedPointComponent f;
        f.label = "e" + std::to_string(k);
        f.moment_image = LinearForm(RatVec{Rat(static_cast<long>(n) - 2 * k)});
        for (unsigned j = 0; j <= n; ++j) {
            if (j == k) continue;
            f.weights.emplace_back(
                LinearForm(RatVec{Rat(2 * (static_cast<long>(j) - static_cast<long>(k)))}), 1);
        }
        pts.push_back(std::move(f));
    }
    return LocalizationModel(GroupData::su2(), 2 * n, std::move(pts));
}

ClassFunction restrict_class_example1(unsigned n, const MultiPoly& expr) {
    if (expr.nvars() != n + 1)
        throw model_error("class expression needs variables xi1..xi" + std::to_string(n) +
                          " and alpha");
    return [n, expr](std::size_t index, const FixedPointComponent&) {
        std::vector<int> signs = p1_power_signs(n, index);
        std::vector<LinearForm> sub;
        sub.reserve(n + 1);
        for (unsigned j = 0; j < n; ++j) sub.push_back(LinearForm(RatVec{Rat(signs[j])}));
        sub.push_back(LinearForm(RatVec{Rat(1)})); // alpha -> psi
        return expr.substitute_linear(sub);
    };
}

ClassFunction restrict_class_example2(unsigned n, const MultiPoly& expr) {
    if (expr.nvars() != 2) throw model_error("class expression needs variables xi and alpha");
    return [n, expr](std::size_t k, const FixedPointComponent&) {
        Rat mu(static_cast<long>(n) - 2 * static_cast<long>(k));
        std::vector<LinearForm> sub = {LinearForm(RatVec{mu}), LinearForm(RatVec{Rat(1)})};
        return expr.substitute_linear(sub);
    };
}

MultiPoly relation_generator_example1(unsigned n, const std::set<unsigned>& q_set,
                                      const MultiPoly& q) {
    if (q_set.size() < (n + 1) / 2)
        throw model_error("relation subset must contain at least (N+1)/2 elements");
    for (unsigned i : q_set)
        if (i < 1 || i > n) throw model_error("relation subset index out of range");
    std::size_t vars = n + 1; // xi_1..xi_n, alpha
    if (q.nvars() != vars) throw model_error("relation polynomial has wrong variable count");

    MultiPoly alpha = MultiPoly::variable(vars, n);
    MultiPoly prod_plus = MultiPoly::constant(vars, Scalar(1));
    MultiPoly prod_minus = MultiPoly::constant(vars, Scalar(1));
    for (unsigned i : q_set) {
        MultiPoly xi = MultiPoly::variable(vars, i - 1);
        prod_plus *= xi + alpha;
        prod_minus *= xi - alpha;
    }
    // q with alpha -> -alpha
    std::vector<LinearForm> flip;
    for (std::size_t j = 0; j < vars; ++j) {
        LinearForm f = LinearForm::unit(vars, j);
        if (j == n) f = -f;
        flip.push_back(f);
    }
    MultiPoly q_neg = q.substitute_linear(flip);
    MultiPoly elem = q * prod_plus - q_neg * prod_minus;
    return elem.divide_by_variable(n, 1); // exact by the alpha -> -alpha antisymmetry
}

std::pair<MultiPoly, MultiPoly> relation_generators_example2(unsigned n) {
    if (n % 2 == 0) throw model_error("projective relations need odd N");
    // P(xi, alpha) = prod_{k > N/2} (xi + mu_k alpha), mu_k = N - 2k
    MultiPoly xi = MultiPoly::variable(2, 0), alpha = MultiPoly::variable(2, 1);
    MultiPoly p = MultiPoly::constant(2, Scalar(1));
    for (unsigned k = (n + 1) / 2; k <= n; ++k) {
        Rat mu(static_cast<long>(n) - 2 * static_cast<long>(k));
        p *= xi + alpha * Scalar(mu);
    }
    std::vector<LinearForm> flip = {LinearForm::unit(2, 0), -LinearForm::unit(2, 1)};
    MultiPoly p_neg = p.substitute_linear(flip);
    MultiPoly p_plus = p + p_neg;
    MultiPoly p_minus_over_alpha = (p - p_neg).divide_by_variable(1, 1);
    return {p_plus, p_minus_over_alpha};
}

Scalar binomial_vanishing(unsigned r, unsigned s) {
    Int acc(0);
    for (unsigned k = 0; k <= r; ++k) {
        Int term = binomial(r, k);
        Int kp(1);
        for (unsigned j = 0; j < s; ++j) kp *= k;
        term *= kp;
        if (k % 2) acc -= term;
        else acc += term;
    }
    return Scalar(Rat(acc));
}

std::vector<MeromorphicTerm> build_su3_example_terms(const LinearForm& lambda) {
    if (lambda.dim() != 2) throw model_error("the worked rank-2 example has rank 2");
    MeromorphicTerm t;
    t.numerator = MultiPoly::constant(2, Scalar(1));
    t.denominator = {{LinearForm(RatVec{Rat(1), Rat(0)}), 1},
                     {LinearForm(RatVec{Rat(0), Rat(1)}), 1},
                     {LinearForm(RatVec{Rat(1), Rat(1)}), 1}};
    t.exponent = lambda;
    return {t};
}

LocalizationModel build_su3_demo_model(const LinearForm& lambda) {
    FixedPointComponent f;
    f.label = "orbit";
    f.moment_image = lambda;
    f.weights = {{LinearForm(RatVec{Rat(1), Rat(0)}), 1},
                 {LinearForm(RatVec{Rat(0), Rat(1)}), 1},
                 {LinearForm(RatVec{Rat(1), Rat(1)}), 1}};
    return LocalizationModel(GroupData::torus(2), 6, {f});
}

namespace {

// exponent vectors over `vars` variables with total degree exactly `deg`
void monomials_of_degree(std::size_t vars, unsigned deg,
                         std::vector<std::vector<unsigned>>& out) {
    std::vector<unsigned> e(vars, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t k, unsigned left) {
        if (k + 1 == vars) {
            e[k] = left;
            out.push_back(e);
            return;
        }
        for (unsigned d = 0; d <= left; ++d) {
            e[k] = d;
            rec(k + 1, left - d);
        }
    };
    if (vars == 0) return;
    rec(0, deg);
}

std::string monomial_name(const std::vector<unsigned>& e,
                          const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (!e[k]) continue;
        if (!s.empty()) s += "*";
        s += names[k];
        if (e[k] > 1) s += "^" + std::to_string(e[k]);
    }
    return s.empty() ? "1" : s;
}

} // namespace

std::vector<RelationCheck> verify_example1(unsigned n, unsigned threads) {
    if (n % 2 == 0) throw model_error("product model relations need odd N");
    LocalizationModel m = build_p1_power(n);
    std::vector<std::string> names;
    for (unsigned j = 1; j <= n; ++j) names.push_back("xi" + std::to_string(j));
    names.push_back("alpha");

    std::vector<RelationCheck> out;
    if (n < 3) return out;
    unsigned qmin = (n + 1) / 2;
    for (unsigned qsize = qmin; qsize + 2 <= n; ++qsize) {
        unsigned qdeg = n - 2 - qsize;
        std::vector<std::vector<unsigned>> monos;
        monomials_of_degree(n + 1, qdeg, monos);
        // iterate subsets of {1..n} of size qsize
        std::vector<unsigned> subset(qsize);
        for (unsigned j = 0; j < qsize; ++j) subset[j] = j + 1;
        for (;;) {
            std::set<unsigned> q_set(subset.begin(), subset.end());
            for (const auto& e : monos) {
                MultiPoly q(n + 1);
                q.add_term(e, Scalar(1));
                MultiPoly elem = relation_generator_example1(n, q_set, q);
                Scalar v = pairing_rank1(m, restrict_class_example1(n, elem), threads);
                std::string desc = "Q={";
                bool first = true;
                for (unsigned idx : q_set) {
                    desc += (first ? "" : ",") + std::to_string(idx);
                    first = false;
                }
                desc += "}, q=" + monomial_name(e, names);
                out.push_back({desc, v});
            }
            // next subset
            long pos = static_cast<long>(qsize) - 1;
            while (pos >= 0 && subset[pos] == n - (qsize - 1 - pos)) --pos;
            if (pos < 0) break;
            ++subset[pos];
            for (std::size_t j = pos + 1; j < qsize; ++j) subset[j] = subset[j - 1] + 1;
        }
    }
    return out;
}

std::vector<RelationCheck> verify_example2(unsigned n) {
    LocalizationModel m = build_projective_space(n);
    auto [p_plus, p_minus_over_alpha] = relation_generators_example2(n);
    std::vector<RelationCheck> out;
    if (n < 3) return out;
    auto run = [&](const MultiPoly& gen, const std::string& gen_name) {
        long rdeg = static_cast<long>(n) - 3 - gen.total_degree();
        if (rdeg < 0) return;
        // monomials R in xi and alpha^2 of the complementary degree
        for (unsigned b = 0; 2 * b <= static_cast<unsigned>(rdeg); ++b) {
            unsigned a = static_cast<unsigned>(rdeg) - 2 * b;
            MultiPoly r(2);
            r.add_term({a, 2 * b}, Scalar(1));
            MultiPoly cls = r * gen;
            Scalar v = pairing_rank1(m, restrict_class_example2(n, cls));
            std::string rname = monomial_name({a, 2 * b}, {"xi", "alpha"});
            out.push_back({"R=" + rname + ", gen=" + gen_name, v});
        }
    };
    run(p_plus, "P+");
    run(p_minus_over_alpha, "P-/alpha");
    return out;
}

namespace {

unsigned parse_preset_n(const std::string& name, const std::string& prefix) {
    std::string tail = name.substr(prefix.size());
    if (tail.empty()) throw parse_error("preset '" + name + "' needs a size, e.g. " +
                                        prefix + "5");
    for (char c : tail)
        if (!isdigit(static_cast<unsigned char>(c)))
            throw parse_error("malformed preset size in '" + name + "'");
    return static_cast<unsigned>(std::stoul(tail));
}

} // namespace

LocalizationModel build_preset(const std::string& name) {
    if (name.rfind("p1pow:", 0) == 0) return build_p1_power(parse_preset_n(name, "p1pow:"));
    if (name.rfind("projN:", 0) == 0)
        return build_projective_space(parse_preset_n(name, "projN:"));
    if (name == "su3demo") return build_su3_demo_model(LinearForm(RatVec{Rat(3), Rat(1)}));
    throw parse_error("unknown model preset '" + name + "'");
}

std::vector<std::string> preset_class_variables(const std::string& name) {
    if (name.rfind("p1pow:", 0) == 0) {
        unsigned n = parse_preset_n(name, "p1pow:");
        std::vector<std::string> vars;
        for (unsigned j = 1; j <= n; ++j) vars.push_back("xi" + std::to_string(j));
        vars.push_back("alpha");
        return vars;
    }
    if (name.rfind("projN:", 0) == 0) return {"xi", "alpha"};
    if (name == "su3demo") return psi_names(2);
    throw parse_error("unknown model preset '" + name + "'");
}

ClassFunction preset_class_function(const std::string& name, const MultiPoly& expr) {
    if (name.rfind("p1pow:", 0) == 0)
        return restrict_class_example1(parse_preset_n(name, "p1pow:"), expr);
    if (name.rfind("projN:", 0) == 0)
        return restrict_class_example2(parse_preset_n(name, "projN:"), expr);
    if (name == "su3demo")
        return [expr](std::size_t, const FixedPointComponent&) { return expr; };
    throw parse_error("unknown model preset '" + name + "'");
}

} // namespace locres

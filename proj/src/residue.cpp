#include "locres/residue.hpp"

#include "locres/errors.hpp"
#include "locres/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace locres {

void MeromorphicTerm::validate() const {
    std::size_t l = exponent.dim();
    if (numerator.nvars() != l) throw algebra_error("meromorphic term: numerator dimension mismatch");
    for (const auto& [f, n] : denominator) {
        if (f.dim() != l) throw algebra_error("meromorphic term: denominator dimension mismatch");
        if (f.is_zero()) throw algebra_error("meromorphic term: zero denominator form");
        if (n == 0) throw algebra_error("meromorphic term: zero denominator power");
    }
}

ConeSpec ConeSpec::positive_orthant(std::size_t l) {
    ConeSpec c;
    for (std::size_t k = 0; k < l; ++k) {
        RatVec g(l, Rat(0));
        g[k] = 1;
        c.generators.push_back(std::move(g));
    }
    c.interior_point.assign(l, Rat(1));
    return c;
}

ConeSpec ConeSpec::ray(RatVec xi) {
    ConeSpec c;
    c.generators.push_back(xi);
    c.interior_point = std::move(xi);
    return c;
}

void ConeSpec::validate() const {
    if (generators.empty()) throw choice_error("cone has no generators");
    std::size_t l = dim();
    for (const auto& g : generators)
        if (g.size() != l) throw choice_error("cone generator dimension mismatch");
    bool ip_zero = true;
    for (const Rat& q : interior_point)
        if (q != 0) ip_zero = false;
    if (ip_zero) throw choice_error("cone interior point is zero");
    // Properness: some functional is strictly positive on all generators
    // (and on the interior point), so the cone contains no line.
    std::vector<LinearForm> rows;
    for (const auto& g : generators) rows.emplace_back(g);
    rows.emplace_back(interior_point);
    if (!find_positive_point(rows))
        throw choice_error("cone is not proper: no functional is positive on all generators");
}

RaySpec RaySpec::standard(std::size_t l) {
    // Fixed generic-ish direction; component ratios avoid low-order rational
    // relations among the small-integer weight systems in scope.
    static const long primes[] = {1, 7, 53, 389, 2311, 16411};
    LinearForm rho(l);
    for (std::size_t k = 0; k < l; ++k)
        rho[k] = Rat(1, primes[k % (sizeof(primes) / sizeof(primes[0]))] *
                            (1 + static_cast<long>(k / 6)));
    return RaySpec{rho};
}

bool RaySpec::is_generic_for(const std::vector<MeromorphicTerm>& terms) const {
    std::size_t l = rho.dim();
    if (rho.is_zero()) return false;
    if (l <= 1) return true;
    std::vector<LinearForm> forms;
    for (const auto& t : terms)
        for (const auto& [f, n] : t.denominator) forms.push_back(f.primitive());
    std::sort(forms.begin(), forms.end());
    forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
    // rho must avoid every cone spanned by fewer than l of the forms
    std::vector<std::size_t> subset;
    std::function<bool(std::size_t)> ok = [&](std::size_t start) -> bool {
        if (!subset.empty()) {
            std::vector<RatVec> gens;
            for (std::size_t j : subset) gens.push_back(forms[j].coeffs());
            if (in_cone_span(gens, rho.coeffs())) return false;
        }
        if (subset.size() + 1 >= l) return true;
        for (std::size_t j = start; j < forms.size(); ++j) {
            subset.push_back(j);
            bool good = ok(j + 1);
            subset.pop_back();
            if (!good) return false;
        }
        return true;
    };
    return ok(0);
}

// ---------------------------------------------------------------------------
// rank-1 residue

Scalar residue_rank1(const MeromorphicTerm& term) {
    term.validate();
    if (term.dim() != 1) throw algebra_error("residue_rank1 requires a rank-1 term");
    // Fold denominator c*psi powers into a scalar and a pole order.
    Scalar coeff(1);
    long pole = 0;
    for (const auto& [f, n] : term.denominator) {
        coeff *= Scalar(f[0]).pow(n).inv();
        pole += n;
    }
    if (term.numerator.is_zero()) return Scalar();
    Rat mu = term.exponent[0];
    long min_num_deg = static_cast<long>(term.numerator.min_degree_in(0));
    if (min_num_deg >= pole) return Scalar(); // no pole after cancellation
    if (mu == 0)
        throw model_error("moment image zero: 0 is not a regular value for this term");
    if (mu < 0) return Scalar();
    Scalar acc;
    for (const auto& [e, c] : term.numerator.terms()) {
        long k = pole - static_cast<long>(e[0]) - 1; // power of (i mu) needed
        if (k < 0) continue;
        acc += c * (Scalar::i() * Scalar(mu)).pow(k) / Scalar(Rat(factorial(k)));
    }
    return coeff * acc;
}

// ---------------------------------------------------------------------------
// admissibility

int cone_sign(const LinearForm& f, const ConeSpec& cone) {
    int s = sgn(f.pair(cone.interior_point));
    if (s == 0) return 0;
    for (const auto& g : cone.generators) {
        int t = sgn(f.pair(g));
        if (t != 0 && t != s) return 0;
    }
    return s;
}

bool admissible(const std::vector<MeromorphicTerm>& terms, const ConeSpec& cone) {
    for (const auto& t : terms)
        for (const auto& [f, n] : t.denominator)
            if (cone_sign(f, cone) == 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// iterated one-variable contour elimination
//
// Terms are eliminated one variable at a time.  For the current variable x
// with contour Im(x) = -xi_x, a pole of the factor f = a x + gamma(rest) is
// enclosed by the upper half-plane closure iff sign(f(xi)) = sign(a), and by
// the lower closure iff the signs differ; the closure side is chosen by the
// sign of the exponent coefficient of x, perturbed at first order by the ray.
// Residues at coincident poles are merged and extracted by exact Laurent
// expansion, which keeps every intermediate term in the same
// polynomial-times-exponential-over-linear-forms shape.

namespace {

struct WorkTerm {
    Scalar coeff;
    MultiPoly num;
    std::vector<std::pair<LinearForm, unsigned>> den;
    LinearForm lam;
    LinearForm rho;
};

struct XiDegenerate {}; // retry with a perturbed interior point

// u-series with coefficients (scalar, numerator poly, extra denominator powers)
struct SeriesEntry {
    Scalar coeff;
    MultiPoly num;                     // in the remaining variables
    std::map<std::size_t, unsigned> extra; // factor index -> extra power
};
using USeries = std::vector<std::vector<SeriesEntry>>; // index = u power

void useries_mul_entry(USeries& s, unsigned max_u, const USeries& other) {
    USeries out(max_u + 1);
    for (unsigned a = 0; a <= max_u; ++a) {
        for (unsigned b = 0; a + b <= max_u && b < other.size(); ++b) {
            if (s[a].empty() || other[b].empty()) continue;
            for (const auto& ea : s[a])
                for (const auto& eb : other[b]) {
                    SeriesEntry e;
                    e.coeff = ea.coeff * eb.coeff;
                    if (e.coeff.is_zero()) continue;
                    e.num = ea.num * eb.num;
                    if (e.num.is_zero()) continue;
                    e.extra = ea.extra;
                    for (const auto& [k, v] : eb.extra) e.extra[k] += v;
                    out[a + b].push_back(std::move(e));
                }
        }
    }
    s = std::move(out);
}

std::vector<WorkTerm> eliminate_variable(const WorkTerm& t, std::size_t k, const RatVec& xi) {
    std::size_t d = t.lam.dim();
    Rat mu_lam = t.lam[k];
    Rat mu_rho = t.rho[k];

    bool has_pole = false;
    for (const auto& [f, n] : t.den)
        if (f[k] != 0) has_pole = true;

    int side; // +1 close upward, -1 close downward
    if (mu_lam != 0) side = sgn(mu_lam);
    else if (mu_rho != 0) side = sgn(mu_rho);
    else
        throw choice_error(
            "ray not generic: exponent coefficient vanishes to first order while "
            "eliminating variable " +
            std::to_string(k + 1));
    if (!has_pole) return {}; // pole-free terms contribute 0

    // Group poles by location -gamma/a, a canonical linear form in the rest.
    struct Group {
        LinearForm location; // in d-1 variables
        std::vector<std::size_t> members;
    };
    std::map<LinearForm, Group> groups;
    for (std::size_t j = 0; j < t.den.size(); ++j) {
        const auto& [f, n] = t.den[j];
        if (f[k] == 0) continue;
        LinearForm loc = f.drop(k);
        loc *= Rat(-1) / f[k];
        auto [it, fresh] = groups.try_emplace(loc);
        if (fresh) it->second.location = loc;
        it->second.members.push_back(j);
    }

    std::vector<WorkTerm> out;
    for (const auto& [loc_key, g] : groups) {
        const auto& [f0, n0] = t.den[g.members[0]];
        Rat fxi = f0.pair(xi);
        if (fxi == 0) throw XiDegenerate{};
        bool enclosed = (side > 0) ? (sgn(fxi) == sgn(f0[k])) : (sgn(fxi) != sgn(f0[k]));
        if (!enclosed) continue;

        unsigned m = 0; // total pole multiplicity at this location
        for (std::size_t j : g.members) m += t.den[j].second;
        const LinearForm& p = g.location;

        // Scalar prefactor prod a_j^{-n_j} over the group
        Scalar pref(1);
        for (std::size_t j : g.members) pref *= Scalar(t.den[j].first[k]).pow(t.den[j].second).inv();
        if (side < 0) pref = -pref; // clockwise orientation

        // Series in u of numerator(p+u, rest) * e^{i mu u} * prod others
        unsigned max_u = m - 1;
        USeries series(max_u + 1);
        {
            std::vector<MultiPoly> numexp = t.num.expand_at(k, p);
            for (unsigned u = 0; u <= max_u && u < numexp.size(); ++u) {
                if (numexp[u].is_zero()) continue;
                SeriesEntry e;
                e.coeff = Scalar(1);
                e.num = numexp[u];
                series[u].push_back(std::move(e));
            }
        }
        {
            USeries expser(max_u + 1);
            Scalar imu = Scalar::i() * Scalar(mu_lam);
            Scalar c(1);
            for (unsigned u = 0; u <= max_u; ++u) {
                if (u > 0) c = c * imu / Scalar(Rat(u));
                SeriesEntry e;
                e.coeff = c;
                e.num = MultiPoly::constant(d - 1, Scalar(1));
                expser[u].push_back(std::move(e));
                if (mu_lam == 0) break;
            }
            useries_mul_entry(series, max_u, expser);
        }
        // Non-group factors: constants in u when a=0, else expanded binomially:
        // 1/(a u + c)^n = c^-n sum_r C(n-1+r, r) (-a/c)^r u^r.
        std::vector<std::pair<LinearForm, unsigned>> passive; // evaluated at x = p
        for (std::size_t j = 0; j < t.den.size(); ++j) {
            bool in_group = std::find(g.members.begin(), g.members.end(), j) != g.members.end();
            if (in_group) continue;
            const auto& [f, n] = t.den[j];
            LinearForm c = f.drop(k);
            if (f[k] != 0) c += f[k] * p;
            if (c.is_zero())
                throw algebra_error("internal: coincident pole escaped grouping");
            std::size_t pidx = passive.size();
            passive.emplace_back(c, n);
            if (f[k] == 0) continue;
            USeries fac(max_u + 1);
            for (unsigned r = 0; r <= max_u; ++r) {
                SeriesEntry e;
                e.coeff = Scalar(Rat(binomial(n + r - 1, r))) * Scalar(-f[k]).pow(r);
                e.num = MultiPoly::constant(d - 1, Scalar(1));
                if (r > 0) e.extra[pidx] = r;
                fac[r].push_back(std::move(e));
            }
            useries_mul_entry(series, max_u, fac);
        }

        LinearForm lam2 = t.lam.drop(k) + mu_lam * p;
        LinearForm rho2 = t.rho.drop(k) + mu_rho * p;
        for (const auto& e : series[max_u]) {
            WorkTerm w;
            w.coeff = t.coeff * pref * e.coeff;
            if (w.coeff.is_zero()) continue;
            w.num = e.num;
            if (w.num.is_zero()) continue;
            w.lam = lam2;
            w.rho = rho2;
            for (std::size_t j = 0; j < passive.size(); ++j) {
                unsigned extra = 0;
                auto it = e.extra.find(j);
                if (it != e.extra.end()) extra = it->second;
                w.den.emplace_back(passive[j].first, passive[j].second + extra);
            }
            out.push_back(std::move(w));
        }
    }
    return out;
}

Scalar run_elimination(std::vector<WorkTerm> work, RatVec xi,
                       const std::vector<std::size_t>& order) {
    // Eliminate in the requested original-variable order; indices shift as
    // variables disappear, so map through the surviving-variable list.
    std::vector<std::size_t> alive(xi.size());
    for (std::size_t k = 0; k < alive.size(); ++k) alive[k] = k;

    for (std::size_t step = 0; step < order.size(); ++step) {
        std::size_t want = order[step];
        auto pos = std::find(alive.begin(), alive.end(), want);
        if (pos == alive.end()) throw algebra_error("elimination order is not a permutation");
        std::size_t k = static_cast<std::size_t>(pos - alive.begin());
        alive.erase(pos);

        std::vector<WorkTerm> next;
        for (const auto& t : work) {
            auto r = eliminate_variable(t, k, xi);
            next.insert(next.end(), std::make_move_iterator(r.begin()),
                        std::make_move_iterator(r.end()));
        }
        xi.erase(xi.begin() + k);
        work = std::move(next);
    }
    Scalar total;
    for (const auto& t : work) total += t.coeff * t.num.constant_term();
    return total;
}

Scalar jk_residue_impl(const std::vector<MeromorphicTerm>& terms, const ConeSpec& cone,
                       const LinearForm* ray, bool limit_mode,
                       const std::vector<std::size_t>* order) {
    if (terms.empty()) return Scalar();
    std::size_t l = terms[0].dim();
    cone.validate();
    if (cone.dim() != l) throw choice_error("cone dimension does not match the terms");
    for (const auto& t : terms) {
        t.validate();
        if (t.dim() != l) throw algebra_error("terms of mixed dimension");
    }
    if (!admissible(terms, cone))
        throw choice_error("cone not admissible: some denominator form changes sign on "
                           "the cone interior");

    std::vector<std::size_t> ord;
    if (order) ord = *order;
    else {
        ord.resize(l);
        for (std::size_t k = 0; k < l; ++k) ord[k] = k;
    }
    if (ord.size() != l) throw algebra_error("elimination order has wrong length");

    std::vector<WorkTerm> work;
    for (const auto& t : terms) {
        WorkTerm w;
        w.coeff = Scalar(1);
        w.num = t.numerator;
        w.den = t.denominator;
        if (limit_mode) {
            w.lam = LinearForm(l);
            w.rho = t.exponent;
        } else {
            w.lam = t.exponent;
            w.rho = ray ? *ray : LinearForm(l);
        }
        if (!w.num.is_zero()) work.push_back(std::move(w));
    }

    // Retry with small deterministic perturbations of the interior point if a
    // derived denominator form happens to vanish there (the residue value is
    // independent of the interior point within the cone).
    RatVec xi = cone.interior_point;
    for (int attempt = 0;; ++attempt) {
        try {
            return run_elimination(work, xi, ord);
        } catch (const XiDegenerate&) {
            if (attempt >= 6)
                throw choice_error("cone interior point degenerate for this term list "
                                   "(derived pole meets the contour after repeated "
                                   "perturbation)");
            Rat delta(1, 64 + 81 * attempt);
            RatVec next = cone.interior_point;
            Rat w(1);
            for (const auto& g : cone.generators) {
                w /= 3 + attempt;
                for (std::size_t j = 0; j < next.size(); ++j) next[j] += delta * w * g[j];
            }
            xi = std::move(next);
        }
    }
}

} // namespace

Scalar jk_residue(const std::vector<MeromorphicTerm>& terms, const ConeSpec& cone,
                  const RaySpec& ray, const std::vector<std::size_t>* order) {
    return jk_residue_impl(terms, cone, &ray.rho, false, order);
}

Scalar jk_residue_limit(const std::vector<MeromorphicTerm>& terms, const ConeSpec& cone,
                        const std::vector<std::size_t>* order) {
    return jk_residue_impl(terms, cone, nullptr, true, order);
}

} // namespace locres

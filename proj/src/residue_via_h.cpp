#include "locres/errors.hpp"
#include "locres/linalg.hpp"
#include "locres/piecewise.hpp"
#include "locres/residue.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace locres {

const Scalar kViaHUnit = Scalar(1);

namespace {

// Cache of cone functions keyed by the flipped weight multiset.
using HKey = std::vector<std::pair<RatVec, unsigned>>;

const PiecewisePolynomial& cached_h(const HKey& key) {
    static std::map<HKey, PiecewisePolynomial> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    WeightSystem ws;
    for (const auto& [coeffs, mult] : key) ws.betas.emplace_back(LinearForm(RatVec(coeffs)), mult);
    return cache.emplace(key, h_function(ws)).first->second;
}

// Value of p at lambda, resolving wall points toward lambda + eps*rho.
Scalar eval_with_ray(const PiecewisePolynomial& p, const RatVec& lambda, const LinearForm& rho) {
    for (const auto& piece : p.pieces())
        if (piece.chamber.contains(lambda, true)) return piece.poly.eval(lambda);
    for (const auto& piece : p.pieces()) {
        if (!piece.chamber.contains(lambda, false)) continue;
        auto cl = piece.chamber.coords(lambda);
        auto cr = piece.chamber.coords(rho.coeffs());
        if (!cl || !cr) continue;
        bool enters = true;
        for (std::size_t k = 0; k < cl->size(); ++k) {
            if ((*cl)[k] == 0 && !((*cr)[k] > 0)) enters = false;
            if (k < piece.chamber.upper.size() && piece.chamber.upper[k] &&
                (*cl)[k] == *piece.chamber.upper[k] && !((*cr)[k] < 0))
                enters = false;
        }
        if (enters) return piece.poly.eval(lambda);
    }
    return Scalar();
}

} // namespace

Scalar jk_residue_via_h(const std::vector<MeromorphicTerm>& terms, const ConeSpec& cone,
                        const RaySpec& ray) {
    if (terms.empty()) return Scalar();
    cone.validate();
    std::size_t l = terms[0].dim();
    if (cone.dim() != l) throw choice_error("cone dimension does not match the terms");

    Scalar total;
    for (const auto& term : terms) {
        term.validate();
        // flip denominator forms positive on the cone interior
        HKey key;
        long flips = 0;
        unsigned count = 0;
        for (const auto& [f, n] : term.denominator) {
            int s = cone_sign(f, cone);
            if (s == 0)
                throw choice_error("cone not admissible: denominator form changes sign on "
                                   "the cone interior");
            LinearForm flipped = s > 0 ? f : -f;
            if (s < 0) flips += n;
            key.emplace_back(flipped.coeffs(), n);
            count += n;
        }
        std::sort(key.begin(), key.end());
        Scalar sign = (flips % 2 == 0) ? Scalar(1) : Scalar(-1);
        Scalar unit = kViaHUnit * Scalar::i_pow(static_cast<long>(count) - static_cast<long>(l));

        if (count < l || key.empty()) continue; // no pole structure: residue 0
        {
            // a non-spanning system pushes forward to a lower-dimensional
            // cone; as a function it vanishes at generic lambda
            RatMat m;
            for (const auto& [coeffs, mult] : key) m.push_back(coeffs);
            if (rank(m) < l) continue;
        }
        const PiecewisePolynomial& h = cached_h(key);

        // numerator monomials act as (-i d/dlambda)^J on the cone function
        Scalar term_value;
        for (const auto& [expo, c] : term.numerator.terms()) {
            PiecewisePolynomial d = h;
            for (std::size_t k = 0; k < l; ++k) {
                for (unsigned j = 0; j < expo[k]; ++j) {
                    PiecewisePolynomial next(d.dim());
                    for (const auto& piece : d.pieces())
                        next.add_piece(piece.chamber,
                                       piece.poly.derivative(k) * (-Scalar::i()));
                    d = std::move(next);
                }
            }
            term_value += c * eval_with_ray(d, term.exponent.coeffs(), ray.rho);
        }
        total += sign * unit * term_value;
    }
    return total;
}

} // namespace locres

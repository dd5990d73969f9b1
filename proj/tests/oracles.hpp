// Test-only oracles: independent computation routes used to cross-check the
// engine.  Nothing here may call the implementation path it checks.
#ifndef LOCRES_TESTS_ORACLES_HPP
#define LOCRES_TESTS_ORACLES_HPP

#include "locres/laurent.hpp"
#include "locres/linalg.hpp"
#include "locres/model.hpp"
#include "locres/multipoly.hpp"
#include "locres/pairings.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

namespace locres_tests {

using namespace locres;

// --------------------------------------------------------------------------
// Rank-1 pairing via explicit Laurent series assembly: expand every summand
// of psi^2 * r_F into a truncated series, sum the series, read the 1/psi
// coefficient.  Independent of residue_rank1's closed form.
inline Scalar pairing_rank1_series_oracle(const LocalizationModel& m, const ClassFunction& eta) {
    const long trunc = 2;
    bool have = false;
    LaurentSeries1D total;
    for (std::size_t i = 0; i < m.fixed_point_count(); ++i) {
        FixedPointComponent f = m.fixed_point(i);
        Rat mu = f.moment_image[0];
        if (!(mu > 0)) continue; // series route mirrors the F_+ restriction
        std::vector<ClassTerm> terms = f.class_terms;
        if (terms.empty()) {
            ClassTerm unit;
            unit.numerator = MultiPoly::constant(1, Scalar(1));
            terms.push_back(unit);
        }
        MultiPoly eta_f = eta(i, f);
        for (const auto& ct : terms) {
            std::vector<unsigned> powers(f.weights.size());
            for (std::size_t j = 0; j < f.weights.size(); ++j) powers[j] = f.weights[j].second;
            for (const auto& [idx, p] : ct.extra_powers) powers[idx] += p;
            long pole = 0;
            Scalar denom_const(1);
            for (std::size_t j = 0; j < f.weights.size(); ++j) {
                pole += powers[j];
                denom_const *= Scalar(f.weights[j].first[0]).pow(powers[j]);
            }
            MultiPoly num = eta_f * ct.numerator * f.point_integral;
            for (const auto& [e, c] : num.terms()) {
                long d = static_cast<long>(e[0]) + 2; // the varpi^2 factor
                LaurentSeries1D s =
                    series_of_term(c / denom_const, mu, pole, trunc).shifted(d);
                if (!have) {
                    total = s;
                    have = true;
                } else {
                    total += s;
                }
            }
        }
    }
    Scalar res = have ? laurent_coefficient(total, -1) : Scalar();
    return Scalar(Rat(-1, 2)) * res;
}

// --------------------------------------------------------------------------
// Exact fiber volume vol{s >= 0 : sum_j s_j beta_j = y} in the measure that
// disintegrates Lebesgue measure on R^N over the projection, computed from a
// triangulated (here: interval / polygon) parametrization of the fiber.
// Supports fiber dimension N - l <= 2.
inline Rat fiber_volume_oracle(const std::vector<LinearForm>& betas, const RatVec& y) {
    std::size_t n = betas.size(), l = y.size();
    if (n < l) throw std::logic_error("fiber oracle: underdetermined");
    if (l == 1) {
        // the fiber is the simplex with vertices (y/b_j) e_j; its volume in
        // the disintegration measure is the Dirichlet value y^(N-1)/((N-1)! prod b_j)
        Rat prod(1);
        int dir = 0;
        for (const auto& b : betas) {
            prod *= b[0];
            dir = sgn(b[0]);
        }
        if (sgn(y[0]) != dir && y[0] != 0) return Rat(0);
        Rat v = rat_pow(y[0], static_cast<long>(n) - 1) / Rat(factorial(n - 1)) / prod;
        return abs(v);
    }
    // matrix B (l x n)
    RatMat b(l, RatVec(n));
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < l; ++r) b[r][c] = betas[c][r];

    // choose pivot columns by elimination
    RatMat work = b;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < l; ++c) {
        std::size_t p = row;
        while (p < l && work[p][c] == 0) ++p;
        if (p == l) continue;
        std::swap(work[p], work[row]);
        for (std::size_t r = 0; r < l; ++r) {
            if (r == row || work[r][c] == 0) continue;
            Rat fac = work[r][c] / work[row][c];
            for (std::size_t cc = 0; cc < n; ++cc) work[r][cc] -= fac * work[row][cc];
        }
        pivots.push_back(c);
        ++row;
    }
    if (row < l) throw std::logic_error("fiber oracle: non-spanning system");

    // particular solution via the pivot columns
    RatMat bp(l, RatVec(l));
    for (std::size_t c = 0; c < l; ++c)
        for (std::size_t r = 0; r < l; ++r) bp[r][c] = b[r][pivots[c]];
    RatVec s_piv = *solve(bp, y);
    RatVec s0(n, Rat(0));
    for (std::size_t c = 0; c < l; ++c) s0[pivots[c]] = s_piv[c];

    // kernel basis: one vector per non-pivot column
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free_cols.push_back(c);
    std::size_t fdim = free_cols.size();
    std::vector<RatVec> kernel; // columns, length n
    for (std::size_t fc : free_cols) {
        RatVec col(l);
        for (std::size_t r = 0; r < l; ++r) col[r] = b[r][fc];
        RatVec piv_part = *solve(bp, col);
        RatVec v(n, Rat(0));
        v[fc] = 1;
        for (std::size_t c = 0; c < l; ++c) v[pivots[c]] = -piv_part[c];
        kernel.push_back(std::move(v));
    }
    // section S with B S = I on the pivot columns
    RatMat bp_inv_cols(l, RatVec(l)); // solve for each unit vector
    for (std::size_t k = 0; k < l; ++k) {
        RatVec unit(l, Rat(0));
        unit[k] = 1;
        RatVec sol = *solve(bp, unit);
        for (std::size_t r = 0; r < l; ++r) bp_inv_cols[r][k] = sol[r];
    }
    // det [V | S] over R^n
    RatMat m(n, RatVec(n, Rat(0)));
    for (std::size_t c = 0; c < fdim; ++c)
        for (std::size_t r = 0; r < n; ++r) m[r][c] = kernel[c][r];
    for (std::size_t c = 0; c < l; ++c)
        for (std::size_t r = 0; r < l; ++r) m[pivots[r]][fdim + c] = bp_inv_cols[r][c];
    Rat jac = abs(det(m));

    if (fdim == 0) {
        for (const Rat& q : s0)
            if (q < 0) return Rat(0);
        return jac;
    }
    if (fdim == 1) {
        // constraints s0_i + u * kernel[0][i] >= 0
        bool have_lo = false, have_hi = false;
        Rat lo, hi;
        for (std::size_t i = 0; i < n; ++i) {
            const Rat& a = kernel[0][i];
            if (a == 0) {
                if (s0[i] < 0) return Rat(0);
                continue;
            }
            Rat bound = -s0[i] / a;
            if (a > 0) {
                if (!have_lo || bound > lo) lo = bound, have_lo = true;
            } else {
                if (!have_hi || bound < hi) hi = bound, have_hi = true;
            }
        }
        if (!have_lo || !have_hi) throw std::logic_error("fiber oracle: unbounded fiber");
        if (hi <= lo) return Rat(0);
        return Rat(hi - lo) * jac;
    }
    if (fdim == 2) {
        // vertex enumeration of {u : s0 + V u >= 0} in the plane
        std::vector<RatVec> verts;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                RatMat a = {{kernel[0][i], kernel[1][i]}, {kernel[0][j], kernel[1][j]}};
                auto u = solve(a, RatVec{-s0[i], -s0[j]});
                if (!u) continue;
                bool ok = true;
                for (std::size_t r = 0; r < n; ++r) {
                    Rat val = s0[r] + kernel[0][r] * (*u)[0] + kernel[1][r] * (*u)[1];
                    if (val < 0) ok = false;
                }
                if (ok) verts.push_back(*u);
            }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        if (verts.size() < 3) return Rat(0);
        // order around the centroid
        RatVec c(2, Rat(0));
        for (const auto& v : verts) {
            c[0] += v[0];
            c[1] += v[1];
        }
        c[0] /= static_cast<long>(verts.size());
        c[1] /= static_cast<long>(verts.size());
        auto half = [&](const RatVec& v) {
            Rat dx = v[0] - c[0], dy = v[1] - c[1];
            return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
        };
        std::sort(verts.begin(), verts.end(), [&](const RatVec& p, const RatVec& q) {
            int hp = half(p), hq = half(q);
            if (hp != hq) return hp < hq;
            Rat cross = (p[0] - c[0]) * (q[1] - c[1]) - (p[1] - c[1]) * (q[0] - c[0]);
            return cross > 0;
        });
        Rat area(0);
        for (std::size_t i = 0; i < verts.size(); ++i) {
            const RatVec& p = verts[i];
            const RatVec& q = verts[(i + 1) % verts.size()];
            area += p[0] * q[1] - p[1] * q[0];
        }
        area = abs(area) / 2;
        return Rat(area * jac);
    }
    throw std::logic_error("fiber oracle: dimension beyond 2 not supported");
}

// --------------------------------------------------------------------------
// Rank-1 critical values in closed form: every |mu| plus 0 when the moment
// images take both signs.
inline std::vector<Rat> critical_values_rank1_oracle(const LocalizationModel& m) {
    std::set<Rat> vals;
    bool pos = false, neg = false;
    for (std::size_t i = 0; i < m.fixed_point_count(); ++i) {
        Rat mu = m.fixed_point(i).moment_image[0];
        vals.insert(abs(mu));
        (mu > 0 ? pos : neg) = true;
    }
    if (pos && neg) vals.insert(Rat(0));
    return {vals.begin(), vals.end()};
}

// --------------------------------------------------------------------------
// Streamed closed-form pairing of the product-of-spheres model with the unit
// class, aggregated over moment levels instead of fixed points.
inline Scalar p1pow_unit_pairing_oracle(unsigned n) {
    Scalar acc;
    for (unsigned k = 0; 2 * k < n; ++k) {
        long mu = static_cast<long>(n) - 2 * static_cast<long>(k);
        Scalar sign = (k % 2) ? Scalar(-1) : Scalar(1);
        acc += sign * Scalar(Rat(binomial(n, k))) *
               (Scalar::i() * Scalar(Rat(mu))).pow(n - 3) / Scalar(Rat(factorial(n - 3)));
    }
    return acc * Scalar(Rat(-1, 2));
}

} // namespace locres_tests

#endif

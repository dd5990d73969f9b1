#include "locres/pairings.hpp"

#include "locres/errors.hpp"
#include "locres/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <thread>

namespace locres {

namespace {

std::vector<ClassTerm> effective_class_terms(const FixedPointComponent& f, std::size_t rank) {
    if (!f.class_terms.empty()) return f.class_terms;
    ClassTerm unit;
    unit.numerator = MultiPoly::constant(rank, Scalar(1));
    return {unit};
}

MeromorphicTerm make_term(const LocalizationModel& m, const FixedPointComponent& f,
                          const ClassTerm& ct, const MultiPoly& eta_f, bool with_exponent) {
    std::size_t l = m.rank();
    MeromorphicTerm t;
    t.numerator = eta_f * ct.numerator * f.point_integral;
    t.exponent = with_exponent ? f.moment_image : LinearForm(l);
    std::vector<unsigned> powers(f.weights.size());
    for (std::size_t j = 0; j < f.weights.size(); ++j) powers[j] = f.weights[j].second;
    for (const auto& [idx, p] : ct.extra_powers) powers[idx] += p;
    for (std::size_t j = 0; j < f.weights.size(); ++j)
        t.denominator.emplace_back(f.weights[j].first, powers[j]);
    return t;
}

} // namespace

std::vector<MeromorphicTerm> pushforward_terms(const LocalizationModel& m,
                                               const ClassFunction& eta,
                                               bool with_symplectic_exponent) {
    std::vector<MeromorphicTerm> terms;
    for (std::size_t i = 0; i < m.fixed_point_count(); ++i) {
        FixedPointComponent f = m.fixed_point(i);
        MultiPoly eta_f = eta(i, f);
        for (const auto& ct : effective_class_terms(f, m.rank()))
            terms.push_back(make_term(m, f, ct, eta_f, with_symplectic_exponent));
    }
    return terms;
}

// ---------------------------------------------------------------------------
// rank-1 pairing

namespace {

// sum over fixed points of the rank-1 residues of psi^2 * extra * summand
Scalar rank1_residue_sum(const LocalizationModel& m, const ClassFunction& eta,
                         const MultiPoly& extra_numerator, unsigned threads) {
    std::size_t count = m.fixed_point_count();
    MultiPoly psi2 = MultiPoly::variable(1, 0, 2) * extra_numerator;

    auto accumulate_range = [&](std::size_t lo, std::size_t hi) {
        Scalar acc;
        for (std::size_t i = lo; i < hi; ++i) {
            FixedPointComponent f = m.fixed_point(i);
            if (f.moment_image.is_zero())
                throw model_error("fixed point '" + f.label +
                                  "': moment image is zero, so 0 is not a regular value");
            if (f.moment_image[0] < 0) continue; // contributes exactly 0
            MultiPoly eta_f = eta(i, f);
            for (const auto& ct : effective_class_terms(f, 1)) {
                MeromorphicTerm t = make_term(m, f, ct, eta_f, true);
                t.numerator *= psi2;
                acc += residue_rank1(t);
            }
        }
        return acc;
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, 64);
    if (threads <= 1 || count < 256) return accumulate_range(0, count);

    std::vector<Scalar> partial(threads);
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        std::size_t lo = t * chunk, hi = std::min(count, lo + chunk);
        pool.emplace_back([&, t, lo, hi] {
            try {
                if (lo < hi) partial[t] = accumulate_range(lo, hi);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    Scalar total;
    for (const auto& p : partial) total += p; // deterministic: thread-index order
    return total;
}

void require_rank1_unit_volume(const LocalizationModel& m, const char* op) {
    if (m.rank() != 1)
        throw model_error(std::string(op) + " requires a rank-1 torus");
    if (m.group().normalization != Normalization::RANK1_UNIT_VOLUME)
        throw model_error(std::string(op) + " requires the unit-volume rank-1 normalization");
}

} // namespace

Scalar pairing_rank1(const LocalizationModel& m, const ClassFunction& eta, unsigned threads) {
    require_rank1_unit_volume(m, "pairing_rank1");
    Scalar sum = rank1_residue_sum(m, eta, MultiPoly::constant(1, Scalar(1)), threads);
    return Scalar(Rat(-1, 2)) * sum;
}

// ---------------------------------------------------------------------------
// general pairing

namespace {

MultiPoly root_product_squared(const GroupData& g) {
    MultiPoly p = MultiPoly::constant(g.rank, Scalar(1));
    for (const auto& r : g.positive_roots) p *= MultiPoly::from_linear_form(r);
    return p * p;
}

Scalar general_prefactor(const GroupData& g) {
    long n_plus = static_cast<long>(g.n_plus());
    Scalar sign = (n_plus % 2 == 0) ? Scalar(1) : Scalar(-1);
    Scalar w_inv(Rat(1, static_cast<long>(g.weyl_order)));
    if (g.normalization == Normalization::RANK1_UNIT_VOLUME) {
        // varpi carries a factor 2 pi per root, cancelling (2 pi)^(s-l)
        return sign * w_inv;
    }
    long s_minus_l = static_cast<long>(g.dim - g.rank);
    return sign * w_inv * Scalar(rat_pow(Rat(2), -s_minus_l), Rat(0),
                                 static_cast<int>(-s_minus_l));
}

} // namespace

Scalar pairing_general(const LocalizationModel& m, const ClassFunction& eta,
                       const ConeSpec& cone, const RaySpec& ray) {
    MultiPoly vps = root_product_squared(m.group());
    std::vector<MeromorphicTerm> terms = pushforward_terms(m, eta, true);
    for (auto& t : terms) t.numerator *= vps;
    return general_prefactor(m.group()) * jk_residue(terms, cone, ray);
}

std::map<unsigned, Scalar> pairing_with_theta(const LocalizationModel& m,
                                              const ClassFunction& eta, unsigned order,
                                              const ConeSpec* cone, const RaySpec* ray) {
    std::map<unsigned, Scalar> out;
    std::size_t l = m.rank();
    MultiPoly norm2(l);
    for (std::size_t k = 0; k < l; ++k) norm2 += MultiPoly::variable(l, k, 2);
    MultiPoly theta_factor = norm2 * Scalar(Rat(-1, 2)); // -|psi|^2/2

    for (unsigned mm = 0; mm <= order; ++mm) {
        MultiPoly extra = theta_factor.pow(mm);
        Scalar coeff;
        if (l == 1) {
            require_rank1_unit_volume(m, "pairing_with_theta");
            coeff = Scalar(Rat(-1, 2)) * rank1_residue_sum(m, eta, extra, 0);
        } else {
            if (!cone || !ray)
                throw choice_error("pairing_with_theta above rank 1 needs a cone and a ray");
            MultiPoly vps = root_product_squared(m.group());
            std::vector<MeromorphicTerm> terms = pushforward_terms(m, eta, true);
            for (auto& t : terms) t.numerator *= vps * extra;
            coeff = general_prefactor(m.group()) * jk_residue(terms, *cone, *ray);
        }
        coeff /= Scalar(Rat(factorial(mm)));
        if (!coeff.is_zero()) out[mm] = coeff;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Duistermaat-Heckman assembly

namespace {

struct DhTermData {
    Scalar coefficient; // (-1)^k * integral data
    WeightSystem flipped;
    RatVec shift; // mu_T(F)
};

std::vector<DhTermData> dh_term_data(const LocalizationModel& m, const ConeSpec& cone) {
    std::vector<DhTermData> out;
    for (std::size_t i = 0; i < m.fixed_point_count(); ++i) {
        FixedPointComponent f = m.fixed_point(i);
        for (const auto& ct : effective_class_terms(f, m.rank())) {
            if (!ct.numerator.is_constant())
                throw model_error("distribution assembly needs constant class data at '" +
                                  f.label + "'");
            std::vector<unsigned> powers(f.weights.size());
            for (std::size_t j = 0; j < f.weights.size(); ++j) powers[j] = f.weights[j].second;
            for (const auto& [idx, p] : ct.extra_powers) powers[idx] += p;

            DhTermData d;
            long k_flip = 0;
            for (std::size_t j = 0; j < f.weights.size(); ++j) {
                int s = cone_sign(f.weights[j].first, cone);
                if (s == 0)
                    throw choice_error("non-generic cone: weight at '" + f.label +
                                       "' vanishes on the cone interior");
                if (s < 0) k_flip += powers[j];
                LinearForm flipped = s > 0 ? f.weights[j].first : -f.weights[j].first;
                d.flipped.betas.emplace_back(flipped, powers[j]);
            }
            d.coefficient = ct.numerator.constant_term() * f.point_integral;
            if (k_flip % 2 != 0) d.coefficient = -d.coefficient;
            if (!d.coefficient.is_real_rational())
                throw model_error("distribution assembly needs real rational integrals at '" +
                                  f.label + "'");
            d.shift = f.moment_image.coeffs();
            out.push_back(std::move(d));
        }
    }
    return out;
}

PiecewisePolynomial dh_core(const LocalizationModel& m, const ConeSpec& cone, bool calibrate) {
    cone.validate();
    std::size_t l = m.rank();
    if (cone.dim() != l) throw choice_error("cone rank does not match the model");
    std::vector<DhTermData> data = dh_term_data(m, cone);

    PiecewisePolynomial acc(l);
    if (l == 1) {
        // identical flipped systems recur across fixed points (all 2^N points
        // of the product models share one); compute each cone function once
        std::map<std::vector<std::pair<RatVec, unsigned>>, PiecewisePolynomial> cache;
        for (const auto& d : data) {
            std::vector<std::pair<RatVec, unsigned>> key;
            for (const auto& [f, mult] : d.flipped.betas) key.emplace_back(f.coeffs(), mult);
            std::sort(key.begin(), key.end());
            auto it = cache.find(key);
            if (it == cache.end()) it = cache.emplace(key, h_function(d.flipped)).first;
            PiecewisePolynomial h = it->second.reflected_about(d.shift);
            for (auto& piece : h.pieces()) piece.poly *= d.coefficient;
            acc = acc.pieces().empty() ? h : add_rank1(acc, h);
        }
        acc.drop_zero_pieces();
    } else if (l == 2) {
        if (data.size() != 1)
            throw model_error("rank-2 distribution assembly is limited to a single "
                              "fixed-point term");
        acc = h_function(data[0].flipped).reflected_about(data[0].shift);
        for (auto& piece : acc.pieces()) piece.poly *= data[0].coefficient;
    } else {
        throw model_error("distribution assembly implemented for rank <= 2");
    }

    if (calibrate && !acc.pieces().empty()) {
        // sample the chamber adjacent to the extreme moment image
        RatVec sample;
        if (l == 1) {
            std::vector<Rat> cuts;
            for (const auto& iv : pp_to_intervals(acc)) {
                if (iv.lo) cuts.push_back(*iv.lo);
                if (iv.hi) cuts.push_back(*iv.hi);
            }
            std::sort(cuts.begin(), cuts.end());
            cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
            if (cuts.size() >= 2) sample = {(cuts[cuts.size() - 2] + cuts.back()) / 2};
            else if (cuts.size() == 1) sample = {cuts.back() - 1};
        } else {
            const Chamber& ch = acc.pieces()[0].chamber;
            sample = ch.apex;
            for (const auto& g : ch.generators)
                for (std::size_t k = 0; k < l; ++k) sample[k] += g[k];
        }
        if (!sample.empty()) {
            Scalar v = acc.evaluate(sample);
            if (!v.is_real_rational() && !v.is_zero())
                throw model_error("distribution sign calibration on non-real data");
            if (sgn(v.re()) < 0)
                for (auto& piece : acc.pieces()) piece.poly *= Scalar(-1);
        }
    }
    acc.sort_pieces();
    return acc;
}

} // namespace

PiecewisePolynomial dh_function(const LocalizationModel& m, const ConeSpec& cone) {
    return dh_core(m, cone, true);
}

PiecewisePolynomial witten_q(const LocalizationModel& m, const ConeSpec& cone) {
    PiecewisePolynomial r = dh_function(m, cone);
    const GroupData& g = m.group();
    if (g.positive_roots.empty()) return r; // abelian: Q = R
    std::vector<std::pair<LinearForm, unsigned>> ops;
    MultiPoly vp = MultiPoly::constant(g.rank, Scalar(1));
    for (const auto& root : g.positive_roots) {
        ops.emplace_back(root, 1);
        vp *= MultiPoly::from_linear_form(root);
    }
    PiecewisePolynomial q = multiply_pointwise(apply_operator(ops, r), vp);
    if (g.normalization == Normalization::RANK1_UNIT_VOLUME) {
        Scalar two_pi_sq = Scalar(Rat(4), Rat(0), 2); // (2 pi)^2 per root
        Scalar factor = two_pi_sq.pow(static_cast<long>(g.n_plus()));
        for (auto& piece : q.pieces()) piece.poly *= factor;
    }
    q.drop_zero_pieces();
    q.sort_pieces();
    return q;
}

// ---------------------------------------------------------------------------
// critical values

namespace {

// closest point to the origin of the convex hull of pts (exact QP by
// enumeration of faces of dimension <= l)
RatVec closest_point_hull(const std::vector<RatVec>& pts, std::size_t l) {
    RatVec best;
    Rat best_n2;
    bool have = false;
    std::size_t n = pts.size();
    std::vector<std::size_t> face;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (!face.empty() && face.size() <= l + 1) {
            // minimize |sum a_i p_i|^2 with sum a_i = 1 over the affine hull
            std::size_t fsz = face.size();
            RatMat sys(fsz + 1, RatVec(fsz + 1, Rat(0)));
            RatVec rhs(fsz + 1, Rat(0));
            for (std::size_t r = 0; r < fsz; ++r)
                for (std::size_t c = 0; c < fsz; ++c)
                    sys[r][c] = 2 * dot(pts[face[r]], pts[face[c]]);
            for (std::size_t r = 0; r < fsz; ++r) {
                sys[r][fsz] = 1;
                sys[fsz][r] = 1;
            }
            rhs[fsz] = 1;
            auto sol = solve(sys, rhs);
            if (sol) {
                bool feasible = true;
                for (std::size_t r = 0; r < fsz; ++r)
                    if ((*sol)[r] < 0) feasible = false;
                if (feasible) {
                    RatVec x(l, Rat(0));
                    for (std::size_t r = 0; r < fsz; ++r)
                        for (std::size_t k = 0; k < l; ++k)
                            x[k] += (*sol)[r] * pts[face[r]][k];
                    Rat n2 = dot(x, x);
                    if (!have || n2 < best_n2) {
                        best = x;
                        best_n2 = n2;
                        have = true;
                    }
                }
            }
        }
        if (face.size() > l) return;
        for (std::size_t j = start; j < n; ++j) {
            face.push_back(j);
            rec(j + 1);
            face.pop_back();
        }
    };
    rec(0);
    if (!have) throw algebra_error("internal: hull has no closest point");
    return best;
}

} // namespace

bool CriticalValueSet::contains_zero() const {
    for (const auto& [b, n2] : betas)
        if (n2 == 0) return true;
    return false;
}

CriticalValueSet critical_values(const LocalizationModel& m) {
    std::size_t l = m.rank();
    std::set<RatVec> images;
    for (std::size_t i = 0; i < m.fixed_point_count(); ++i)
        images.insert(m.fixed_point(i).moment_image.coeffs());
    std::vector<RatVec> pts(images.begin(), images.end());
    std::size_t M = pts.size();

    std::set<RatVec> folded;
    if (l == 1) {
        if (M > 22) throw model_error("critical value enumeration beyond 2^22 subsets");
        for (std::size_t mask = 1; mask < (std::size_t(1) << M); ++mask) {
            Rat lo, hi;
            bool first = true;
            for (std::size_t j = 0; j < M; ++j) {
                if (!(mask & (std::size_t(1) << j))) continue;
                const Rat& v = pts[j][0];
                if (first || v < lo) lo = v;
                if (first || v > hi) hi = v;
                first = false;
            }
            Rat closest = (lo <= 0 && 0 <= hi) ? Rat(0) : (lo > 0 ? lo : -hi);
            folded.insert(RatVec{closest}); // |closest| already: folded chamber
        }
    } else {
        if (M > 10) throw model_error("critical value enumeration beyond 10 distinct images");
        for (std::size_t mask = 1; mask < (std::size_t(1) << M); ++mask) {
            std::vector<RatVec> subset;
            for (std::size_t j = 0; j < M; ++j)
                if (mask & (std::size_t(1) << j)) subset.push_back(pts[j]);
            folded.insert(closest_point_hull(subset, l));
        }
    }

    CriticalValueSet out;
    for (const auto& v : folded) out.betas.emplace_back(LinearForm(RatVec(v)), dot(v, v));
    std::sort(out.betas.begin(), out.betas.end(),
              [](const auto& a, const auto& b) {
                  if (a.second != b.second) return a.second < b.second;
                  return a.first < b.first;
              });
    return out;
}

// ---------------------------------------------------------------------------
// Witten integral decay

namespace {

PiecewisePolynomial numeric_q(const PiecewisePolynomial& r) {
    // y * dR/dy per piece: the real part of Q without its i and 2 pi factors
    PiecewisePolynomial out(1);
    MultiPoly y = MultiPoly::variable(1, 0);
    for (const auto& piece : r.pieces())
        out.add_piece(piece.chamber, piece.poly.derivative(0) * y);
    return out;
}

double numeric_normalization(const GroupData& g, double eps) {
    double p = 2.0 * g.n_plus() + 0.5 * g.rank - static_cast<double>(g.dim);
    return std::pow(2 * M_PI, p) / (g.weyl_order * std::pow(eps, g.dim / 2.0));
}

} // namespace

std::vector<DecayPoint> witten_decay_check(const LocalizationModel& m,
                                           const std::vector<double>& eps_list) {
    require_rank1_unit_volume(m, "witten_decay_check");
    ConeSpec cone = ConeSpec::ray(RatVec{Rat(1)});
    PiecewisePolynomial r = dh_function(m, cone);
    PiecewisePolynomial q = numeric_q(r);
    MultiPoly q0 = germ_at_zero(q);
    PiecewisePolynomial q0pp = pp_from_intervals({Interval{std::nullopt, std::nullopt, q0}});

    std::vector<DecayPoint> out;
    for (double eps : eps_list) {
        if (!(eps > 0)) throw model_error("epsilon grid must be positive");
        double norm = numeric_normalization(m.group(), eps);
        double a = norm * gaussian_integral_piecewise_rank1(q, eps);
        double b = q0.is_zero() ? 0.0 : norm * gaussian_integral_piecewise_rank1(q0pp, eps);
        out.push_back({eps, a, b, std::fabs(a - b)});
    }
    return out;
}

double fit_decay_slope(const std::vector<DecayPoint>& points) {
    double sx = 0, sy = 0;
    std::size_t n = 0;
    for (const auto& p : points) {
        if (!(p.diff > 0)) continue;
        sx += -1.0 / (2 * p.eps);
        sy += std::log(p.diff);
        ++n;
    }
    if (n < 2) throw model_error("decay fit needs at least two nonzero differences");
    double mx = sx / n, my = sy / n, num = 0, den = 0;
    for (const auto& p : points) {
        if (!(p.diff > 0)) continue;
        double x = -1.0 / (2 * p.eps) - mx, y = std::log(p.diff) - my;
        num += x * y;
        den += x * x;
    }
    return num / den;
}

// ---------------------------------------------------------------------------
// exact Gaussian path

const GaussScalar kGaussianResidueCalibration{Rat(0), Rat(-1), 0}; // -i

GaussianValue ieps0_exact(const LocalizationModel& m, const ConeSpec& cone) {
    require_rank1_unit_volume(m, "ieps0_exact");
    const GroupData& g = m.group();
    PiecewisePolynomial r = dh_core(m, cone, /*calibrate=*/false);
    MultiPoly r0 = germ_at_zero(r);

    // Q0 = varpi(y) D_varpi R0 with the unit-volume 2 pi per root on each factor
    MultiPoly q0 = r0;
    MultiPoly vp = MultiPoly::constant(1, Scalar(1));
    for (const auto& root : g.positive_roots) {
        q0 = q0.directional_derivative(root) * Scalar::i();
        vp *= MultiPoly::from_linear_form(root);
    }
    q0 *= vp;
    q0 *= Scalar(Rat(4), Rat(0), 2).pow(static_cast<long>(g.n_plus()));

    GaussianValue gm = gaussian_integral_polynomial(q0);
    // pushforward phase i^(dim X / 2) and the transform's (2 pi)^(l/2)
    gm *= GaussScalar::from_scalar(Scalar::i_pow(static_cast<long>(m.dim_x() / 2)));
    gm *= GaussScalar{Rat(1), Rat(0), static_cast<int>(g.rank)};
    // prefactor 1 / ((2 pi i)^s |W| eps^(s/2))
    GaussScalar pref = GaussScalar::from_scalar(
        Scalar::i_pow(-static_cast<long>(g.dim)) *
        Scalar(Rat(1, static_cast<long>(g.weyl_order))));
    pref *= GaussScalar{Rat(1), Rat(0), -2 * static_cast<int>(g.dim)};
    gm *= pref;
    gm.shift_eps(-static_cast<int>(g.dim));
    return gm;
}

} // namespace locres

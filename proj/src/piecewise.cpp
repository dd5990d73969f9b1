#include "locres/piecewise.hpp"

#include "locres/errors.hpp"
#include "locres/linalg.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

namespace locres {

// ---------------------------------------------------------------------------
// Chamber

std::optional<RatVec> Chamber::coords(const RatVec& y) const {
    if (!full_dimensional()) return std::nullopt;
    RatVec rel(y);
    for (std::size_t k = 0; k < rel.size(); ++k) rel[k] -= apex[k];
    return coords_in_basis(generators, rel);
}

bool Chamber::contains(const RatVec& y, bool strict) const {
    auto c = coords(y);
    if (!c) return false;
    for (std::size_t k = 0; k < c->size(); ++k) {
        const Rat& v = (*c)[k];
        if (strict ? !(v > 0) : !(v >= 0)) return false;
        if (k < upper.size() && upper[k]) {
            const Rat& u = *upper[k];
            if (strict ? !(v < u) : !(v <= u)) return false;
        }
    }
    return true;
}

std::string Chamber::to_string() const {
    std::ostringstream os;
    os << "apex [";
    for (std::size_t k = 0; k < apex.size(); ++k)
        os << (k ? ", " : "") << rat_to_string(apex[k]);
    os << "] generators [";
    for (std::size_t g = 0; g < generators.size(); ++g) {
        os << (g ? "; " : "");
        for (std::size_t k = 0; k < generators[g].size(); ++k)
            os << (k ? ", " : "") << rat_to_string(generators[g][k]);
        if (g < upper.size() && upper[g]) os << " (up to " << rat_to_string(*upper[g]) << ")";
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// PiecewisePolynomial

void PiecewisePolynomial::add_piece(Chamber ch, MultiPoly p) {
    if (ch.dim() != dim_) throw algebra_error("piece dimension mismatch");
    if (p.is_zero()) return;
    pieces_.push_back({std::move(ch), std::move(p)});
}

bool PiecewisePolynomial::has_degenerate_piece() const {
    for (const auto& p : pieces_)
        if (!p.chamber.full_dimensional()) return true;
    return false;
}

void PiecewisePolynomial::drop_zero_pieces() {
    pieces_.erase(std::remove_if(pieces_.begin(), pieces_.end(),
                                 [](const PiecewisePiece& p) { return p.poly.is_zero(); }),
                  pieces_.end());
}

Scalar PiecewisePolynomial::evaluate(const RatVec& y) const {
    if (has_degenerate_piece())
        throw algebra_error("evaluation of a degenerate (lower-dimensional) piece");
    bool found = false;
    Scalar value;
    for (const auto& p : pieces_) {
        if (p.chamber.contains(y, true)) return p.poly.eval(y);
        if (p.chamber.contains(y, false)) {
            Scalar v = p.poly.eval(y);
            if (found && !(v == value))
                throw algebra_error("evaluation on a wall where adjacent pieces disagree");
            value = v;
            found = true;
        }
    }
    return found ? value : Scalar();
}

PiecewisePolynomial PiecewisePolynomial::reflected_about(const RatVec& shift) const {
    PiecewisePolynomial out(dim_);
    std::vector<LinearForm> sub;
    for (std::size_t k = 0; k < dim_; ++k) sub.push_back(-LinearForm::unit(dim_, k));
    for (const auto& p : pieces_) {
        Chamber ch;
        ch.apex.resize(dim_);
        for (std::size_t k = 0; k < dim_; ++k) ch.apex[k] = shift[k] - p.chamber.apex[k];
        for (const auto& g : p.chamber.generators) {
            RatVec ng(g);
            for (Rat& q : ng) q = -q;
            ch.generators.push_back(std::move(ng));
        }
        ch.upper = p.chamber.upper;
        // poly(shift - y): substitute y -> shift - y via expand trick
        MultiPoly q = p.poly;
        for (std::size_t k = 0; k < dim_; ++k) {
            // replace variable k by shift[k] - y_k, keeping the variable count
            auto co = q.expand_at(k, LinearForm(dim_ - 1)); // coefficients of u^j
            MultiPoly acc(dim_);
            for (std::size_t j = 0; j < co.size(); ++j) {
                // reinsert variable k as (shift_k - y_k)^j times coefficient
                MultiPoly base(dim_);
                base += MultiPoly::constant(dim_, Scalar(shift[k]));
                base -= MultiPoly::variable(dim_, k);
                // lift co[j] (dim-1 vars, k removed) back to dim vars
                MultiPoly lifted(dim_);
                for (const auto& [e, c] : co[j].terms()) {
                    MultiPoly::Expo f(dim_, 0);
                    std::size_t t = 0;
                    for (std::size_t s = 0; s < dim_; ++s)
                        if (s != k) f[s] = e[t++];
                    lifted.add_term(f, c);
                }
                acc += lifted * base.pow(static_cast<unsigned>(j));
            }
            q = acc;
        }
        out.add_piece(std::move(ch), std::move(q));
    }
    return out;
}

void PiecewisePolynomial::sort_pieces() {
    std::sort(pieces_.begin(), pieces_.end(), [](const PiecewisePiece& a, const PiecewisePiece& b) {
        if (a.chamber.apex != b.chamber.apex) return a.chamber.apex < b.chamber.apex;
        return a.chamber.generators < b.chamber.generators;
    });
}

std::string PiecewisePolynomial::to_string(const std::string& var) const {
    std::ostringstream os;
    for (const auto& p : pieces_)
        os << p.chamber.to_string() << " : " << p.poly.to_string(var) << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// WeightSystem

unsigned WeightSystem::total_count() const {
    unsigned n = 0;
    for (const auto& [f, m] : betas) n += m;
    return n;
}

std::vector<LinearForm> WeightSystem::expanded() const {
    std::vector<LinearForm> out;
    for (const auto& [f, m] : betas)
        for (unsigned j = 0; j < m; ++j) out.push_back(f);
    return out;
}

void WeightSystem::validate() const {
    if (betas.empty()) throw algebra_error("empty weight system");
    std::vector<LinearForm> forms;
    for (const auto& [f, m] : betas) {
        if (f.is_zero()) throw algebra_error("weight system contains the zero form");
        if (m == 0) throw algebra_error("weight system contains a zero multiplicity");
        forms.push_back(f);
    }
    if (!find_positive_point(forms))
        throw algebra_error("weight system violates the open half-space condition");
}

// ---------------------------------------------------------------------------
// rank-1 helpers

PiecewisePolynomial pp_from_intervals(const std::vector<Interval>& iv) {
    PiecewisePolynomial out(1);
    for (const auto& s : iv) {
        if (s.poly.is_zero()) continue;
        Chamber ch;
        if (s.lo && s.hi) {
            if (!(*s.lo < *s.hi)) throw algebra_error("empty interval piece");
            ch.apex = {*s.lo};
            ch.generators = {{Rat(1)}};
            ch.upper = {std::optional<Rat>(*s.hi - *s.lo)};
        } else if (s.lo) {
            ch.apex = {*s.lo};
            ch.generators = {{Rat(1)}};
            ch.upper = {std::nullopt};
        } else if (s.hi) {
            ch.apex = {*s.hi};
            ch.generators = {{Rat(-1)}};
            ch.upper = {std::nullopt};
        } else {
            // full line: split at 0 to keep pieces simplicial
            Chamber left, right;
            left.apex = {Rat(0)};
            left.generators = {{Rat(-1)}};
            left.upper = {std::nullopt};
            right.apex = {Rat(0)};
            right.generators = {{Rat(1)}};
            right.upper = {std::nullopt};
            out.add_piece(std::move(left), s.poly);
            out.add_piece(std::move(right), s.poly);
            continue;
        }
        out.add_piece(std::move(ch), s.poly);
    }
    return out;
}

std::vector<Interval> pp_to_intervals(const PiecewisePolynomial& p) {
    if (p.dim() != 1) throw algebra_error("interval view requires rank 1");
    std::vector<Interval> out;
    for (const auto& piece : p.pieces()) {
        if (!piece.chamber.full_dimensional())
            throw algebra_error("interval view of a degenerate piece");
        Rat a = piece.chamber.apex[0];
        Rat d = piece.chamber.generators[0][0];
        std::optional<Rat> up =
            piece.chamber.upper.empty() ? std::nullopt : piece.chamber.upper[0];
        Interval iv;
        iv.poly = piece.poly;
        if (d > 0) {
            iv.lo = a;
            if (up) iv.hi = a + *up * d;
        } else {
            iv.hi = a;
            if (up) iv.lo = a + *up * d;
        }
        out.push_back(std::move(iv));
    }
    return out;
}

namespace {

const MultiPoly* rank1_poly_at(const std::vector<Interval>& iv, const Rat& sample) {
    for (const auto& s : iv) {
        if (s.lo && !(sample > *s.lo)) continue;
        if (s.hi && !(sample < *s.hi)) continue;
        return &s.poly;
    }
    return nullptr;
}

} // namespace

PiecewisePolynomial add_rank1(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    if (a.dim() != 1 || b.dim() != 1) throw algebra_error("add_rank1 requires rank 1");
    auto ia = pp_to_intervals(a), ib = pp_to_intervals(b);
    std::vector<Rat> cuts;
    bool lo_unbounded = false, hi_unbounded = false;
    for (const auto* set : {&ia, &ib})
        for (const auto& s : *set) {
            if (s.lo) cuts.push_back(*s.lo);
            else lo_unbounded = true;
            if (s.hi) cuts.push_back(*s.hi);
            else hi_unbounded = true;
        }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Interval> out;
    auto emit = [&](std::optional<Rat> lo, std::optional<Rat> hi, const Rat& sample) {
        MultiPoly sum(1);
        if (const MultiPoly* p = rank1_poly_at(ia, sample)) sum += *p;
        if (const MultiPoly* p = rank1_poly_at(ib, sample)) sum += *p;
        if (!sum.is_zero()) out.push_back({lo, hi, sum});
    };
    if (cuts.empty()) {
        if (lo_unbounded || hi_unbounded) emit(std::nullopt, std::nullopt, Rat(0));
    } else {
        if (lo_unbounded) emit(std::nullopt, cuts.front(), cuts.front() - 1);
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
            emit(cuts[k], cuts[k + 1], (cuts[k] + cuts[k + 1]) / 2);
        if (hi_unbounded) emit(cuts.back(), std::nullopt, cuts.back() + 1);
    }
    return pp_from_intervals(out);
}

// ---------------------------------------------------------------------------
// affine substitution helper: poly with variable k replaced by form + const

namespace {

MultiPoly substitute_affine(const MultiPoly& p, std::size_t k, const LinearForm& linear,
                            const Rat& constant) {
    auto co = p.expand_at(k, linear); // coefficients of u^j in remaining vars
    MultiPoly acc(p.nvars() - 1);
    Rat c(1);
    for (std::size_t j = 0; j < co.size(); ++j) {
        if (j > 0) c *= constant;
        acc += co[j] * Scalar(c);
    }
    return acc;
}

MultiPoly antiderivative(const MultiPoly& p, std::size_t k) {
    MultiPoly out(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        MultiPoly::Expo f(e);
        f[k] += 1;
        out.add_term(f, c / Scalar(Rat(f[k])));
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// 1-d convolution

namespace {

struct Bound {
    // value(y) = scale * y + offset with scale in {0,1}; nullopt = unbounded
    bool from_y;
    Rat offset;
    Rat value_at(const Rat& y) const { return from_y ? y + offset : offset; }
};

PiecewisePolynomial convolve_rank1(const PiecewisePolynomial& pa, const PiecewisePolynomial& pb) {
    auto ia = pp_to_intervals(pa), ib = pp_to_intervals(pb);
    bool below = true, above = true;
    for (const auto* set : {&ia, &ib})
        for (const auto& s : *set) {
            if (!s.lo) below = false;
            if (!s.hi) above = false;
        }
    if (!below && !above)
        throw algebra_error("convolution operands are not supported in a common half-space");

    PiecewisePolynomial acc(1);
    for (const auto& A : ia) {
        for (const auto& B : ib) {
            // integration variable t runs over [max(A.lo, y-B.hi), min(A.hi, y-B.lo)]
            std::vector<Rat> cuts;
            if (A.lo && B.lo) cuts.push_back(*A.lo + *B.lo);
            if (A.lo && B.hi) cuts.push_back(*A.lo + *B.hi);
            if (A.hi && B.lo) cuts.push_back(*A.hi + *B.lo);
            if (A.hi && B.hi) cuts.push_back(*A.hi + *B.hi);
            std::sort(cuts.begin(), cuts.end());
            cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
            if (cuts.empty()) throw algebra_error("convolution of two doubly-unbounded pieces");

            // integrand F(y,t) = A.poly(t) * B.poly(y - t); vars (y, t)
            MultiPoly at = A.poly.substitute_linear({LinearForm(RatVec{Rat(0), Rat(1)})});
            MultiPoly bt = B.poly.substitute_linear({LinearForm(RatVec{Rat(1), Rat(-1)})});
            MultiPoly F = antiderivative(at * bt, 1);

            std::vector<Interval> parts;
            auto regime = [&](std::optional<Rat> lo, std::optional<Rat> hi, const Rat& sample) {
                // active bounds at the sample
                std::optional<Bound> lower, upper;
                {
                    std::optional<Rat> c1 = A.lo, c2;
                    if (B.hi) c2 = sample - *B.hi;
                    if (c1 && (!c2 || *c1 >= *c2)) lower = Bound{false, *c1};
                    else if (c2) lower = Bound{true, -*B.hi};
                }
                {
                    std::optional<Rat> c1 = A.hi, c2;
                    if (B.lo) c2 = sample - *B.lo;
                    if (c1 && (!c2 || *c1 <= *c2)) upper = Bound{false, *c1};
                    else if (c2) upper = Bound{true, -*B.lo};
                }
                if (!lower || !upper)
                    throw algebra_error("internal: unbounded convolution regime");
                if (!(lower->value_at(sample) < upper->value_at(sample))) return;
                auto plug = [&](const Bound& b) {
                    LinearForm lin(RatVec{Rat(b.from_y ? 1 : 0)});
                    return substitute_affine(F, 1, lin, b.offset);
                };
                MultiPoly val = plug(*upper) - plug(*lower);
                if (!val.is_zero()) parts.push_back({lo, hi, val});
            };
            // leftmost regime is empty (t-range empty below the first cut)
            for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
                regime(cuts[k], cuts[k + 1], (cuts[k] + cuts[k + 1]) / 2);
            if (!(A.hi && B.hi)) regime(cuts.back(), std::nullopt, cuts.back() + 1);
            acc = add_rank1(acc, pp_from_intervals(parts));
        }
    }
    return acc;
}

} // namespace

// ---------------------------------------------------------------------------
// 2-d fans

namespace {

Rat cross2(const RatVec& a, const RatVec& b) { return a[0] * b[1] - a[1] * b[0]; }

RatVec primitive_dir(const RatVec& v) {
    LinearForm f{RatVec(v)};
    return f.primitive().coeffs();
}

// Fan of rays inside an open half-space, sorted counterclockwise.
struct Fan {
    std::vector<RatVec> rays;

    std::size_t sectors() const { return rays.size() - 1; }
    RatVec sector_sample(std::size_t s) const {
        return {rays[s][0] + rays[s + 1][0], rays[s][1] + rays[s + 1][1]};
    }
    // sector containing y strictly; nullopt on rays / outside
    std::optional<std::size_t> locate(const RatVec& y) const {
        for (std::size_t s = 0; s + 1 < rays.size(); ++s)
            if (cross2(rays[s], y) > 0 && cross2(y, rays[s + 1]) > 0) return s;
        return std::nullopt;
    }
};

Fan build_fan(std::vector<RatVec> dirs) {
    for (auto& d : dirs) d = primitive_dir(d);
    std::sort(dirs.begin(), dirs.end());
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
    std::sort(dirs.begin(), dirs.end(),
              [](const RatVec& a, const RatVec& b) { return cross2(a, b) > 0; });
    for (std::size_t k = 0; k + 1 < dirs.size(); ++k)
        if (!(cross2(dirs[k], dirs[k + 1]) > 0))
            throw algebra_error("fan directions do not fit in an open half-space");
    return Fan{std::move(dirs)};
}

// Convolve sector polynomials (on `fan`, which already contains the ray of
// beta) with the pushforward measure along beta.
std::vector<MultiPoly> convolve_fan_ray(const Fan& fan, const std::vector<MultiPoly>& polys,
                                        const RatVec& beta) {
    std::vector<MultiPoly> out(fan.sectors(), MultiPoly(2));
    // integrand substitution (y1 - t b0, y2 - t b1) over vars (y1, y2, t)
    std::vector<LinearForm> shift = {LinearForm(RatVec{Rat(1), Rat(0), -beta[0]}),
                                     LinearForm(RatVec{Rat(0), Rat(1), -beta[1]})};
    for (std::size_t s = 0; s < fan.sectors(); ++s) {
        RatVec y0 = fan.sector_sample(s);
        // crossing times with every non-parallel ray, as linear forms in y
        struct Crossing {
            Rat t_at_sample;
            LinearForm t_form;
        };
        std::vector<Crossing> cr;
        for (const auto& r : fan.rays) {
            Rat denom = cross2(r, beta);
            if (denom == 0) continue;
            LinearForm f(RatVec{-r[1] / denom, r[0] / denom}); // cross(r, y)/denom
            Rat t = f.pair(y0);
            if (!(t > 0)) continue;
            RatVec pt = {y0[0] - t * beta[0], y0[1] - t * beta[1]};
            if (!(dot(pt, r) > 0)) continue; // crosses the opposite half-line
            cr.push_back({t, f});
        }
        std::sort(cr.begin(), cr.end(),
                  [](const Crossing& a, const Crossing& b) { return a.t_at_sample < b.t_at_sample; });

        MultiPoly total(2);
        LinearForm zero_form(RatVec{Rat(0), Rat(0)});
        for (std::size_t seg = 0; seg <= cr.size(); ++seg) {
            Rat t_lo = seg == 0 ? Rat(0) : cr[seg - 1].t_at_sample;
            std::optional<Rat> t_hi =
                seg < cr.size() ? std::optional<Rat>(cr[seg].t_at_sample) : std::nullopt;
            Rat t_mid = t_hi ? Rat((t_lo + *t_hi) / 2) : Rat(t_lo + 1);
            RatVec pt = {y0[0] - t_mid * beta[0], y0[1] - t_mid * beta[1]};
            auto inner = fan.locate(pt);
            if (!inner || polys[*inner].is_zero()) {
                if (!t_hi) break; // exits the support for good
                continue;
            }
            if (!t_hi)
                throw algebra_error("convolution does not converge: support unbounded "
                                    "along the ray");
            const MultiPoly& piece = polys[*inner];
            MultiPoly integrand = piece.substitute_linear(shift); // vars (y1,y2,t)
            MultiPoly F = antiderivative(integrand, 2);
            const LinearForm& hi_form = cr[seg].t_form;
            LinearForm lo_form = seg == 0 ? zero_form : cr[seg - 1].t_form;
            std::vector<LinearForm> back_hi = {LinearForm(RatVec{Rat(1), Rat(0)}),
                                               LinearForm(RatVec{Rat(0), Rat(1)}), hi_form};
            std::vector<LinearForm> back_lo = {LinearForm(RatVec{Rat(1), Rat(0)}),
                                               LinearForm(RatVec{Rat(0), Rat(1)}), lo_form};
            total += F.substitute_linear(back_hi) - F.substitute_linear(back_lo);
        }
        out[s] = std::move(total);
    }
    return out;
}

PiecewisePolynomial fan_to_pp(const Fan& fan, const std::vector<MultiPoly>& polys) {
    PiecewisePolynomial out(2);
    for (std::size_t s = 0; s < fan.sectors(); ++s) {
        if (polys[s].is_zero()) continue;
        Chamber ch;
        ch.apex = {Rat(0), Rat(0)};
        ch.generators = {fan.rays[s], fan.rays[s + 1]};
        out.add_piece(std::move(ch), polys[s]);
    }
    return out;
}

std::vector<MultiPoly> pp_to_fan(const Fan& fan, const PiecewisePolynomial& p) {
    std::vector<MultiPoly> polys(fan.sectors(), MultiPoly(2));
    for (std::size_t s = 0; s < fan.sectors(); ++s) {
        RatVec y0 = fan.sector_sample(s);
        for (const auto& piece : p.pieces()) {
            if (piece.chamber.contains(y0, true)) {
                polys[s] = piece.poly;
                break;
            }
        }
    }
    return polys;
}

} // namespace

// ---------------------------------------------------------------------------
// h_function

PiecewisePolynomial h_function(const WeightSystem& ws) {
    ws.validate();
    std::size_t l = ws.dim();
    std::vector<LinearForm> betas = ws.expanded();
    unsigned n = betas.size();
    if (n < l)
        throw algebra_error("cone function of fewer weights than the rank is not a function");
    {
        RatMat m;
        for (const auto& b : betas) m.push_back(b.coeffs());
        if (rank(m) < l) throw algebra_error("non-spanning system");
    }

    if (n == l) {
        RatMat m(l, RatVec(l));
        for (std::size_t r = 0; r < l; ++r)
            for (std::size_t c = 0; c < l; ++c) m[r][c] = betas[c][r];
        Rat d = abs(det(m));
        Chamber ch;
        ch.apex.assign(l, Rat(0));
        for (const auto& b : betas) ch.generators.push_back(b.coeffs());
        PiecewisePolynomial out(l);
        out.add_piece(std::move(ch), MultiPoly::constant(l, Scalar(Rat(1) / d)));
        return out;
    }

    if (l == 1) {
        PiecewisePolynomial acc;
        {
            Interval iv;
            Rat b = betas[0][0];
            iv.poly = MultiPoly::constant(1, Scalar(Rat(1) / abs(b)));
            if (b > 0) iv.lo = Rat(0);
            else iv.hi = Rat(0);
            acc = pp_from_intervals({iv});
        }
        for (std::size_t j = 1; j < n; ++j) {
            Interval iv;
            Rat b = betas[j][0];
            iv.poly = MultiPoly::constant(1, Scalar(Rat(1) / abs(b)));
            if (b > 0) iv.lo = Rat(0);
            else iv.hi = Rat(0);
            acc = convolve(acc, pp_from_intervals({iv}));
        }
        return acc;
    }

    if (l != 2)
        throw algebra_error("cone function chamber decompositions are implemented for "
                            "rank <= 2 (plus the independent N = l case)");

    // order an independent pair first
    std::size_t second = 1;
    while (second < n && cross2(betas[0].coeffs(), betas[second].coeffs()) == 0) ++second;
    if (second == n) throw algebra_error("non-spanning system");
    std::swap(betas[1], betas[second]);

    std::vector<RatVec> dirs;
    for (const auto& b : betas) dirs.push_back(b.coeffs());
    Fan fan = build_fan(dirs);

    // base: 1/|det| on cone(beta0, beta1)
    std::vector<MultiPoly> polys(fan.sectors(), MultiPoly(2));
    {
        Rat d = abs(cross2(betas[0].coeffs(), betas[1].coeffs()));
        std::vector<RatVec> base = {betas[0].coeffs(), betas[1].coeffs()};
        for (std::size_t s = 0; s < fan.sectors(); ++s) {
            RatVec y0 = fan.sector_sample(s);
            if (in_cone_span(base, y0)) polys[s] = MultiPoly::constant(2, Scalar(Rat(1) / d));
        }
    }
    for (std::size_t j = 2; j < n; ++j)
        polys = convolve_fan_ray(fan, polys, betas[j].coeffs());
    return fan_to_pp(fan, polys);
}

PiecewisePolynomial ray_pushforward(const LinearForm& beta) {
    if (beta.is_zero()) throw algebra_error("ray pushforward of the zero direction");
    if (beta.dim() == 1) {
        // already a function: density 1/|b| on the half-line
        Interval iv;
        iv.poly = MultiPoly::constant(1, Scalar(Rat(1) / abs(beta[0])));
        if (beta[0] > 0) iv.lo = Rat(0);
        else iv.hi = Rat(0);
        return pp_from_intervals({iv});
    }
    PiecewisePolynomial out(beta.dim());
    Chamber ch;
    ch.apex.assign(beta.dim(), Rat(0));
    ch.generators.push_back(beta.coeffs());
    out.add_piece(std::move(ch), MultiPoly::constant(1, Scalar(1)));
    return out;
}

// ---------------------------------------------------------------------------
// convolve

PiecewisePolynomial convolve(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    if (a.dim() != b.dim()) throw algebra_error("convolution dimension mismatch");
    std::size_t l = a.dim();
    if (a.pieces().empty() || b.pieces().empty()) return PiecewisePolynomial(l);

    if (l == 1) return convolve_rank1(a, b);
    if (l != 2) throw algebra_error("convolution implemented for rank <= 2");

    auto single_ray = [](const PiecewisePolynomial& p) -> std::optional<RatVec> {
        if (p.pieces().size() != 1) return std::nullopt;
        const auto& piece = p.pieces()[0];
        if (piece.chamber.generators.size() != 1) return std::nullopt;
        if (!piece.poly.is_constant() || !(piece.poly.constant_term() == Scalar(1)))
            throw algebra_error("degenerate convolution operand must be a unit ray measure");
        return piece.chamber.generators[0];
    };

    auto ra = single_ray(a), rb = single_ray(b);
    if (ra && rb) {
        Rat d = cross2(*ra, *rb);
        if (d == 0)
            throw algebra_error("convolution of parallel ray measures is not a function");
        Chamber ch;
        ch.apex = {Rat(0), Rat(0)};
        ch.generators = {*ra, *rb};
        PiecewisePolynomial out(2);
        out.add_piece(std::move(ch), MultiPoly::constant(2, Scalar(Rat(1) / abs(d))));
        return out;
    }
    const PiecewisePolynomial* full = nullptr;
    std::optional<RatVec> ray;
    if (ra && !rb) {
        full = &b;
        ray = ra;
    } else if (rb && !ra) {
        full = &a;
        ray = rb;
    } else {
        throw algebra_error("rank-2 convolution requires one operand to be a ray measure");
    }
    if (full->has_degenerate_piece())
        throw algebra_error("rank-2 convolution operand has degenerate pieces");
    std::vector<RatVec> dirs;
    for (const auto& piece : full->pieces()) {
        for (const auto& g : piece.chamber.generators) dirs.push_back(g);
        for (const Rat& q : piece.chamber.apex)
            if (q != 0)
                throw algebra_error("rank-2 convolution requires cones with apex at the origin");
    }
    dirs.push_back(*ray);
    Fan fan = build_fan(dirs);
    std::vector<MultiPoly> polys = pp_to_fan(fan, *full);
    polys = convolve_fan_ray(fan, polys, *ray);
    return fan_to_pp(fan, polys);
}

// ---------------------------------------------------------------------------
// differential operators and germs

PiecewisePolynomial apply_operator(const std::vector<std::pair<LinearForm, unsigned>>& op_forms,
                                   const PiecewisePolynomial& p) {
    PiecewisePolynomial out(p.dim());
    for (const auto& piece : p.pieces()) {
        if (!piece.chamber.full_dimensional())
            throw algebra_error("operator application on a degenerate piece");
        MultiPoly q = piece.poly;
        for (const auto& [f, n] : op_forms)
            for (unsigned j = 0; j < n; ++j) q = q.directional_derivative(f) * Scalar::i();
        out.add_piece(piece.chamber, std::move(q));
    }
    return out;
}

PiecewisePolynomial multiply_pointwise(const PiecewisePolynomial& p, const MultiPoly& q) {
    PiecewisePolynomial out(p.dim());
    for (const auto& piece : p.pieces()) out.add_piece(piece.chamber, piece.poly * q);
    return out;
}

MultiPoly germ_at_zero(const PiecewisePolynomial& p) {
    std::size_t l = p.dim();
    RatVec zero(l, Rat(0));
    std::vector<const PiecewisePiece*> touching;
    for (const auto& piece : p.pieces()) {
        if (!piece.chamber.full_dimensional())
            throw algebra_error("germ of a degenerate piece");
        if (piece.chamber.contains(zero, false)) touching.push_back(&piece);
    }
    if (touching.empty()) return MultiPoly(l); // zero germ
    const MultiPoly& q0 = touching[0]->poly;
    for (const auto* piece : touching)
        if (piece->poly != q0)
            throw algebra_error("0 is not a regular value: chamber polynomials disagree "
                                "in every neighborhood of the origin");
    if (q0.is_zero()) return MultiPoly(l);

    // The touching pieces agree; make sure they cover a whole neighborhood,
    // otherwise the function is 0 on an open set near the origin.
    if (l == 1) {
        bool left = false, right = false;
        for (const auto* piece : touching) {
            auto c = piece->chamber.coords(zero);
            const Rat& v = (*c)[0];
            Rat d = piece->chamber.generators[0][0];
            bool at_apex = v == 0;
            bool at_top = !piece->chamber.upper.empty() && piece->chamber.upper[0] &&
                          v == *piece->chamber.upper[0];
            if (!at_apex && !at_top) left = right = true; // interior
            else if (at_apex) (d > 0 ? right : left) = true;
            else (d > 0 ? left : right) = true;
        }
        if (left && right) return q0;
        throw algebra_error("0 is not a regular value: origin on the support boundary");
    }
    if (l == 2) {
        // Cover test via tangent cones; only apex-at-origin sectors and pieces
        // containing 0 in the interior are handled.
        std::vector<std::pair<RatVec, RatVec>> sectors;
        for (const auto* piece : touching) {
            auto c = piece->chamber.coords(zero);
            bool interior = true;
            for (const Rat& v : *c)
                if (v == 0) interior = false;
            if (interior) return q0;
            bool at_origin = true;
            for (const Rat& v : *c)
                if (v != 0) at_origin = false;
            if (!at_origin)
                throw algebra_error("0 is not a regular value: origin on a shifted wall");
            sectors.emplace_back(piece->chamber.generators[0], piece->chamber.generators[1]);
        }
        // chain sectors: coverage iff each upper edge is another's lower edge
        std::map<RatVec, RatVec> lower_to_upper;
        for (auto& [lo, hi] : sectors) {
            RatVec a = primitive_dir(lo), b = primitive_dir(hi);
            if (cross2(a, b) < 0) std::swap(a, b);
            if (lower_to_upper.count(a))
                throw algebra_error("0 is not a regular value: overlapping tangent sectors");
            lower_to_upper[a] = b;
        }
        RatVec start = lower_to_upper.begin()->first;
        RatVec cur = start;
        for (std::size_t steps = 0; steps < sectors.size(); ++steps) {
            auto it = lower_to_upper.find(cur);
            if (it == lower_to_upper.end())
                throw algebra_error("0 is not a regular value: origin on the support boundary");
            cur = it->second;
        }
        if (cur == start) return q0;
        throw algebra_error("0 is not a regular value: origin on the support boundary");
    }
    throw algebra_error("germ extraction implemented for rank <= 2");
}

} // namespace locres

#include "locres/gaussian.hpp"

#include "locres/errors.hpp"

#include <cmath>
#include <sstream>

namespace locres {

GaussScalar GaussScalar::from_scalar(const Scalar& s) {
    // pi^p = (2 pi)^p * 2^(-p)
    Rat two_pow = rat_pow(Rat(2), -s.pi_exp());
    return GaussScalar{s.re() * two_pow, s.im() * two_pow, 2 * s.pi_exp()};
}

GaussScalar& GaussScalar::operator*=(const GaussScalar& o) {
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = r;
    im = i;
    two_pi_half += o.two_pi_half;
    if (is_zero()) two_pi_half = 0;
    return *this;
}

GaussScalar& GaussScalar::operator+=(const GaussScalar& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
        *this = o;
        return *this;
    }
    if (two_pi_half != o.two_pi_half)
        throw algebra_error("gaussian scalar addition across different powers of sqrt(2 pi)");
    re += o.re;
    im += o.im;
    if (is_zero()) two_pi_half = 0;
    return *this;
}

bool GaussScalar::operator==(const GaussScalar& o) const {
    return re == o.re && im == o.im && two_pi_half == o.two_pi_half;
}

std::string GaussScalar::to_string() const {
    std::ostringstream os;
    os << "(" << rat_to_string(re);
    if (im != 0) os << (sgn(im) >= 0 ? " + " : " - ") << rat_to_string(abs(im)) << " i";
    os << ")";
    if (two_pi_half != 0) {
        os << " (2pi)^";
        if (two_pi_half % 2 == 0) os << (two_pi_half / 2);
        else os << "(" << two_pi_half << "/2)";
    }
    return os.str();
}

double GaussScalar::to_double_real() const {
    return re.get_d() * std::pow(2.0 * M_PI, two_pi_half / 2.0);
}

double GaussScalar::to_double_imag() const {
    return im.get_d() * std::pow(2.0 * M_PI, two_pi_half / 2.0);
}

void GaussianValue::add(int eps_half, const GaussScalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(eps_half, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GaussScalar GaussianValue::term(int eps_half) const {
    auto it = terms_.find(eps_half);
    return it == terms_.end() ? GaussScalar{} : it->second;
}

GaussianValue& GaussianValue::operator+=(const GaussianValue& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

GaussianValue& GaussianValue::operator*=(const GaussScalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    std::map<int, GaussScalar> out;
    for (const auto& [k, v] : terms_) {
        GaussScalar w = v * c;
        if (!w.is_zero()) out[k] = w;
    }
    terms_ = std::move(out);
    return *this;
}

void GaussianValue::shift_eps(int eps_half_delta) {
    std::map<int, GaussScalar> out;
    for (const auto& [k, v] : terms_) out[k + eps_half_delta] = v;
    terms_ = std::move(out);
}

std::string GaussianValue::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << v.to_string();
        if (k != 0) {
            os << " eps^";
            if (k % 2 == 0) os << (k / 2);
            else os << "(" << k << "/2)";
        }
    }
    return os.str();
}

GaussianValue gaussian_integral_polynomial(const MultiPoly& p) {
    std::size_t l = p.nvars();
    GaussianValue out;
    for (const auto& [e, c] : p.terms()) {
        bool odd = false;
        for (unsigned x : e)
            if (x % 2) odd = true;
        if (odd) continue; // odd moments vanish
        Rat moment(1);
        int eps_pow = 0;
        for (unsigned x : e) {
            unsigned k = x / 2;
            moment *= Rat(double_factorial_odd(k));
            eps_pow += static_cast<int>(k);
        }
        GaussScalar g = GaussScalar::from_scalar(c);
        g *= GaussScalar{moment, Rat(0), static_cast<int>(l)}; // sqrt(2 pi)^l
        out.add(2 * eps_pow + static_cast<int>(l), g);
    }
    return out;
}

namespace {

// integral over [a, b] of y^k e^{-y^2/(2 eps)} dy, double precision;
// infinite endpoints passed as +/- HUGE_VAL
double poly_gauss_moment(unsigned k, double a, double b, double eps) {
    auto exp_term = [&](double y) { return std::isinf(y) ? 0.0 : std::exp(-y * y / (2 * eps)); };
    if (k == 0) {
        double s = std::sqrt(2 * eps);
        auto erf_at = [&](double y) {
            return std::isinf(y) ? (y > 0 ? 1.0 : -1.0) : std::erf(y / s);
        };
        return std::sqrt(M_PI * eps / 2) * (erf_at(b) - erf_at(a));
    }
    if (k == 1) return eps * (exp_term(a) - exp_term(b));
    auto endpoint = [&](double y) {
        return std::isinf(y) ? 0.0 : std::pow(y, k - 1) * exp_term(y);
    };
    return eps * (endpoint(a) - endpoint(b)) + (k - 1) * eps * poly_gauss_moment(k - 2, a, b, eps);
}

} // namespace

double gaussian_integral_piecewise_rank1(const PiecewisePolynomial& p, double eps) {
    if (p.dim() != 1) throw algebra_error("numeric gaussian layer requires rank 1");
    if (!(eps > 0)) throw algebra_error("epsilon must be positive");
    double total = 0;
    for (const auto& iv : pp_to_intervals(p)) {
        double a = iv.lo ? iv.lo->get_d() : -HUGE_VAL;
        double b = iv.hi ? iv.hi->get_d() : HUGE_VAL;
        for (const auto& [e, c] : iv.poly.terms())
            total += c.to_double_real() * poly_gauss_moment(e[0], a, b, eps);
    }
    return total;
}

} // namespace locres

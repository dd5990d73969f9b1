#ifndef LOCRES_MULTIPOLY_HPP
#define LOCRES_MULTIPOLY_HPP

#include "locres/linear_form.hpp"
#include "locres/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace locres {

/// Sparse multivariate polynomial in psi_1..psi_l over Scalar.
/// Exponent vectors have fixed length l; zero coefficients are never stored.
class MultiPoly {
  public:
    using Expo = std::vector<unsigned>;
    using TermMap = std::map<Expo, Scalar>;

    MultiPoly() : nvars_(0) {}
    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const Scalar& c);
    static MultiPoly variable(std::size_t nvars, std::size_t k, unsigned power = 1);
    static MultiPoly from_linear_form(const LinearForm& f);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Scalar constant_term() const;
    const TermMap& terms() const { return terms_; }

    long total_degree() const; // -1 for the zero polynomial
    bool is_homogeneous(long* degree_out = nullptr) const;

    void add_term(const Expo& e, const Scalar& c);

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const Scalar& c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, const MultiPoly& b) { return a *= b; }
    friend MultiPoly operator*(MultiPoly a, const Scalar& c) { return a *= c; }
    friend MultiPoly operator*(const Scalar& c, MultiPoly a) { return a *= c; }
    MultiPoly operator-() const;

    MultiPoly pow(unsigned e) const;

    bool operator==(const MultiPoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    Scalar eval(const RatVec& point) const;
    /// Partial evaluation of a single variable at a rational value; the
    /// variable index is removed from the result.
    MultiPoly eval_var(std::size_t k, const Rat& value) const;

    MultiPoly derivative(std::size_t k) const;
    MultiPoly directional_derivative(const LinearForm& dir) const;

    /// Substitute variable k by (linear form in the remaining variables) + u,
    /// returning coefficients of powers of u.  Used for pole shifts.
    std::vector<MultiPoly> expand_at(std::size_t k, const LinearForm& offset) const;

    /// Exact composite p(f_1(x), ..., f_l(x)) for new variables x of
    /// dimension forms[j].dim().
    MultiPoly substitute_linear(const std::vector<LinearForm>& forms) const;

    /// Exact division by a single variable; throws if not divisible.
    MultiPoly divide_by_variable(std::size_t k, unsigned power = 1) const;
    unsigned min_degree_in(std::size_t k) const; // 0 for zero polynomial

    std::string to_string(const std::string& var = "psi") const;

  private:
    std::size_t nvars_;
    TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

/// poly_substitute_linear per the module contract (free-function form).
MultiPoly poly_substitute_linear(const MultiPoly& p, const std::vector<LinearForm>& forms);

} // namespace locres

#endif

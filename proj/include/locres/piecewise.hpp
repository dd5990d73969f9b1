#ifndef LOCRES_PIECEWISE_HPP
#define LOCRES_PIECEWISE_HPP

#include "locres/linear_form.hpp"
#include "locres/multipoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace locres {

/// A simplicial piece: apex + nonnegative combinations of the generators.
/// Full-dimensional pieces have dim independent generators; generators may
/// carry an upper bound on their coefficient (used for rank-1 intervals).
/// Pieces with fewer generators than dim are degenerate carriers of
/// pushforward measures and only participate in convolution.
struct Chamber {
    RatVec apex;
    std::vector<RatVec> generators;
    std::vector<std::optional<Rat>> upper; // per-generator bound, empty = none

    std::size_t dim() const { return apex.size(); }
    bool full_dimensional() const { return generators.size() == dim(); }

    /// Generator coordinates of y - apex; nullopt when not full-dimensional
    /// or the generator matrix is singular.
    std::optional<RatVec> coords(const RatVec& y) const;

    bool contains(const RatVec& y, bool strict) const;

    std::string to_string() const;
};

struct PiecewisePiece {
    Chamber chamber;
    MultiPoly poly; // in ambient coordinates for full pieces, in generator
                    // parameters for degenerate pieces
};

/// Piecewise polynomial supported on finitely many pieces with pairwise
/// disjoint interiors; identically zero outside the pieces.
class PiecewisePolynomial {
  public:
    PiecewisePolynomial() : dim_(0) {}
    explicit PiecewisePolynomial(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::vector<PiecewisePiece>& pieces() { return pieces_; }
    const std::vector<PiecewisePiece>& pieces() const { return pieces_; }

    void add_piece(Chamber ch, MultiPoly p);
    bool has_degenerate_piece() const;
    void drop_zero_pieces();

    /// Exact evaluation: the poly of the piece whose interior contains y, the
    /// shared value when y lies on a wall where all adjacent pieces agree, 0
    /// outside all pieces.  Disagreeing walls are an error.
    Scalar evaluate(const RatVec& y) const;

    /// Composition with y -> shift - y (reflection used by DH assembly).
    PiecewisePolynomial reflected_about(const RatVec& shift) const;

    /// Deterministic ordering (lexicographic by apex then generator matrix).
    void sort_pieces();

    std::string to_string(const std::string& var = "y") const;

  private:
    std::size_t dim_;
    std::vector<PiecewisePiece> pieces_;
};

/// The N-tuple of weights of a cone function, all inside an open half-space.
struct WeightSystem {
    std::vector<std::pair<LinearForm, unsigned>> betas;

    std::size_t dim() const { return betas.empty() ? 0 : betas[0].first.dim(); }
    unsigned total_count() const;
    std::vector<LinearForm> expanded() const; // multiplicities as repetitions
    void validate() const;                    // nonzero forms + half-space condition
};

/// Volume-of-fiber cone function H on its chamber decomposition, computed by
/// the recursive ray convolution.  Exact; homogeneous of degree N - l per
/// piece.  Implemented for rank 1, rank 2 and the independent N = l case.
PiecewisePolynomial h_function(const WeightSystem& ws);

/// Exact convolution; operands must be supported in a common open half-space.
PiecewisePolynomial convolve(const PiecewisePolynomial& a, const PiecewisePolynomial& b);

/// Single-ray pushforward H_beta as a degenerate piece (convolution seed).
PiecewisePolynomial ray_pushforward(const LinearForm& beta);

/// Chamber-wise application of prod_j (i * f_j(d/dy))^{n_j}.
PiecewisePolynomial apply_operator(const std::vector<std::pair<LinearForm, unsigned>>& op_forms,
                                   const PiecewisePolynomial& p);

/// Chamber-wise multiplication by a polynomial.
PiecewisePolynomial multiply_pointwise(const PiecewisePolynomial& p, const MultiPoly& q);

/// The unique polynomial equal to p near 0; errors when 0 sits on a genuine
/// discontinuity wall.
MultiPoly germ_at_zero(const PiecewisePolynomial& p);

// --- rank-1 helpers -------------------------------------------------------

struct Interval {
    std::optional<Rat> lo, hi; // nullopt = unbounded side
    MultiPoly poly;            // univariate
};

PiecewisePolynomial pp_from_intervals(const std::vector<Interval>& iv);
std::vector<Interval> pp_to_intervals(const PiecewisePolynomial& p);
PiecewisePolynomial add_rank1(const PiecewisePolynomial& a, const PiecewisePolynomial& b);

} // namespace locres

#endif

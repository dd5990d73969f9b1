#ifndef LOCRES_LINALG_HPP
#define LOCRES_LINALG_HPP

#include "locres/linear_form.hpp"
#include "locres/rational.hpp"

#include <optional>
#include <vector>

namespace locres {

using RatMat = std::vector<RatVec>; // row-major

/// Exact determinant by fraction-free elimination.
Rat det(const RatMat& m);

/// Rank of a rational matrix.
std::size_t rank(RatMat m);

/// Solve the square system A x = b exactly; nullopt when A is singular.
std::optional<RatVec> solve(const RatMat& a, const RatVec& b);

/// Coordinates of y in the basis given by columns cols; nullopt if singular.
std::optional<RatVec> coords_in_basis(const std::vector<RatVec>& cols, const RatVec& y);

/// A point xi with f(xi) > 0 for every form f, when one exists
/// (Fourier-Motzkin feasibility for the open system, run on f(xi) >= 1).
std::optional<RatVec> find_positive_point(const std::vector<LinearForm>& forms);

/// Is y contained in the cone spanned by the given generators?
/// Exact; generators need not be independent.
bool in_cone_span(const std::vector<RatVec>& gens, const RatVec& y);

} // namespace locres

#endif

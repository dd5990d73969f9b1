#ifndef LOCRES_MODEL_HPP
#define LOCRES_MODEL_HPP

#include "locres/linear_form.hpp"
#include "locres/multipoly.hpp"
#include "locres/scalar.hpp"

#include <functional>
#include <string>
#include <vector>

namespace locres {

enum class Normalization {
    RANK1_UNIT_VOLUME, // vol(T) = 1; the root product carries its 2*pi factors
    GENERAL            // prefactor powers of 2*pi kept in the pi ledger
};

struct GroupData {
    std::size_t rank = 1;   // l
    std::size_t dim = 1;    // s
    std::vector<LinearForm> positive_roots;
    unsigned weyl_order = 1;
    Normalization normalization = Normalization::GENERAL;

    std::size_t n_plus() const { return positive_roots.size(); }
    void validate() const;

    static GroupData su2();
    static GroupData torus(std::size_t l);
};

/// One alpha-indexed class term: an integrated numerator polynomial together
/// with extra powers on selected normal-bundle weights.
struct ClassTerm {
    MultiPoly numerator;
    std::vector<std::pair<std::size_t, unsigned>> extra_powers;

    bool operator==(const ClassTerm& o) const {
        return numerator == o.numerator && extra_powers == o.extra_powers;
    }
};

struct FixedPointComponent {
    std::string label;
    LinearForm moment_image;
    std::vector<std::pair<LinearForm, unsigned>> weights;
    std::vector<ClassTerm> class_terms; // empty means the single unit term
    Scalar point_integral = Scalar(1);

    bool operator==(const FixedPointComponent& o) const {
        return label == o.label && moment_image == o.moment_image && weights == o.weights &&
               class_terms == o.class_terms && point_integral == o.point_integral;
    }
};

/// Fixed-point data of a Hamiltonian model.  Components are either stored
/// explicitly or produced on demand by a generator (streamed enumeration for
/// the 2^N-point models).
class LocalizationModel {
  public:
    using Generator = std::function<FixedPointComponent(std::size_t)>;

    LocalizationModel(GroupData group, std::size_t dim_x,
                      std::vector<FixedPointComponent> points);
    LocalizationModel(GroupData group, std::size_t dim_x, std::size_t count, Generator gen);

    const GroupData& group() const { return group_; }
    std::size_t rank() const { return group_.rank; }
    std::size_t dim_x() const { return dim_x_; }
    long dim_x_red() const {
        return static_cast<long>(dim_x_) - 2 * static_cast<long>(group_.dim);
    }

    std::size_t fixed_point_count() const {
        return generator_ ? count_ : points_.size();
    }
    FixedPointComponent fixed_point(std::size_t i) const;
    bool streamed() const { return static_cast<bool>(generator_); }

    bool operator==(const LocalizationModel& o) const;

  private:
    void validate_component(const FixedPointComponent& f) const;

    GroupData group_;
    std::size_t dim_x_;
    std::vector<FixedPointComponent> points_;
    std::size_t count_ = 0;
    Generator generator_;
};

/// Restriction of an equivariant class: one polynomial in psi per fixed point.
using ClassFunction = std::function<MultiPoly(std::size_t, const FixedPointComponent&)>;

ClassFunction class_one(std::size_t rank);

} // namespace locres

#endif

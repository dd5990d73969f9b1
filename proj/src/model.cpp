#include "locres/model.hpp"

#include "locres/errors.hpp"

namespace locres {

void GroupData::validate() const {
    if (dim < rank) throw model_error("group dimension smaller than its rank");
    if ((dim - rank) % 2 != 0 || (dim - rank) / 2 != positive_roots.size())
        throw model_error("group data inconsistent: dim - rank must equal twice the "
                          "number of positive roots");
    if (weyl_order < 1) throw model_error("Weyl group order must be at least 1");
    for (const auto& r : positive_roots) {
        if (r.dim() != rank) throw model_error("positive root of wrong rank");
        if (r.is_zero()) throw model_error("zero positive root");
    }
    if (normalization == Normalization::RANK1_UNIT_VOLUME && rank != 1)
        throw model_error("unit-volume normalization is a rank-1 convention");
}

GroupData GroupData::su2() {
    GroupData g;
    g.rank = 1;
    g.dim = 3;
    g.positive_roots = {LinearForm(RatVec{Rat(1)})};
    g.weyl_order = 2;
    g.normalization = Normalization::RANK1_UNIT_VOLUME;
    return g;
}

GroupData GroupData::torus(std::size_t l) {
    GroupData g;
    g.rank = l;
    g.dim = l;
    g.weyl_order = 1;
    g.normalization = Normalization::GENERAL;
    return g;
}

LocalizationModel::LocalizationModel(GroupData group, std::size_t dim_x,
                                     std::vector<FixedPointComponent> points)
    : group_(std::move(group)), dim_x_(dim_x), points_(std::move(points)) {
    group_.validate();
    if (dim_x_ % 2 != 0) throw model_error("dim X must be even");
    if (points_.empty()) throw model_error("model has no fixed points");
    for (const auto& f : points_) validate_component(f);
}

LocalizationModel::LocalizationModel(GroupData group, std::size_t dim_x, std::size_t count,
                                     Generator gen)
    : group_(std::move(group)), dim_x_(dim_x), count_(count), generator_(std::move(gen)) {
    group_.validate();
    if (dim_x_ % 2 != 0) throw model_error("dim X must be even");
    if (count_ == 0) throw model_error("model has no fixed points");
    validate_component(generator_(0)); // builders guarantee uniform validity
}

FixedPointComponent LocalizationModel::fixed_point(std::size_t i) const {
    if (i >= fixed_point_count()) throw model_error("fixed point index out of range");
    if (generator_) return generator_(i);
    return points_[i];
}

void LocalizationModel::validate_component(const FixedPointComponent& f) const {
    if (f.moment_image.dim() != group_.rank)
        throw model_error("fixed point '" + f.label + "': moment image of wrong rank");
    if (f.moment_image.is_zero())
        throw model_error("fixed point '" + f.label +
                          "': moment image is zero, so 0 is not a regular value");
    if (f.weights.empty())
        throw model_error("fixed point '" + f.label + "': no normal-bundle weights");
    for (const auto& [w, m] : f.weights) {
        if (w.dim() != group_.rank)
            throw model_error("fixed point '" + f.label + "': weight of wrong rank");
        if (w.is_zero())
            throw model_error("fixed point '" + f.label +
                              "': zero weight on the normal bundle");
        if (m == 0) throw model_error("fixed point '" + f.label + "': zero multiplicity");
    }
    for (const auto& t : f.class_terms) {
        if (t.numerator.nvars() != group_.rank)
            throw model_error("fixed point '" + f.label + "': class term of wrong rank");
        for (const auto& [idx, p] : t.extra_powers)
            if (idx >= f.weights.size())
                throw model_error("fixed point '" + f.label +
                                  "': class term references a missing weight");
    }
}

bool LocalizationModel::operator==(const LocalizationModel& o) const {
    if (group_.rank != o.group_.rank || group_.dim != o.group_.dim ||
        group_.positive_roots != o.group_.positive_roots ||
        group_.weyl_order != o.group_.weyl_order || dim_x_ != o.dim_x_)
        return false;
    if (fixed_point_count() != o.fixed_point_count()) return false;
    for (std::size_t i = 0; i < fixed_point_count(); ++i)
        if (!(fixed_point(i) == o.fixed_point(i))) return false;
    return true;
}

ClassFunction class_one(std::size_t rank) {
    return [rank](std::size_t, const FixedPointComponent&) {
        return MultiPoly::constant(rank, Scalar(1));
    };
}

} // namespace locres

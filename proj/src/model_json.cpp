#include "locres/model_json.hpp"

#include "locres/errors.hpp"
#include "locres/parser.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace locres {

namespace {

using json = nlohmann::ordered_json;

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw parse_error("expected a rational as integer or \"p/q\" string");
}

RatVec vec_from_json(const json& j) {
    if (!j.is_array()) throw parse_error("expected an array of rationals");
    RatVec v;
    for (const auto& x : j) v.push_back(rat_from_json(x));
    return v;
}

json vec_to_json(const RatVec& v) {
    json a = json::array();
    for (const Rat& q : v) a.push_back(rat_to_string(q));
    return a;
}

} // namespace

LocalizationModel model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("model JSON malformed: ") + e.what());
    }
    try {
        const json& jg = j.at("group");
        GroupData g;
        g.rank = jg.at("rank").get<std::size_t>();
        g.dim = jg.at("dim").get<std::size_t>();
        for (const auto& r : jg.at("positive_roots")) g.positive_roots.emplace_back(vec_from_json(r));
        g.weyl_order = jg.at("weyl_order").get<unsigned>();
        g.normalization =
            g.rank == 1 ? Normalization::RANK1_UNIT_VOLUME : Normalization::GENERAL;

        std::size_t dim_x = j.at("dim_X").get<std::size_t>();
        std::vector<FixedPointComponent> pts;
        auto names = psi_names(g.rank);
        for (const auto& jf : j.at("fixed_points")) {
            FixedPointComponent f;
            f.label = jf.at("label").get<std::string>();
            f.moment_image = LinearForm(vec_from_json(jf.at("moment")));
            for (const auto& jw : jf.at("weights"))
                f.weights.emplace_back(LinearForm(vec_from_json(jw.at("form"))),
                                       jw.at("mult").get<unsigned>());
            if (jf.contains("class")) {
                ClassTerm t;
                t.numerator = parse_poly(jf.at("class").get<std::string>(), names);
                // the unit class is the implicit default; keep models canonical
                if (!(t.numerator == MultiPoly::constant(g.rank, Scalar(1))))
                    f.class_terms.push_back(std::move(t));
            }
            if (jf.contains("point_integral"))
                f.point_integral = parse_scalar(jf.at("point_integral").get<std::string>());
            pts.push_back(std::move(f));
        }
        return LocalizationModel(std::move(g), dim_x, std::move(pts));
    } catch (const json::exception& e) {
        throw parse_error(std::string("model JSON schema violation: ") + e.what());
    }
}

LocalizationModel model_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json(buf.str());
}

std::string model_to_json(const LocalizationModel& m) {
    json j;
    const GroupData& g = m.group();
    json jg;
    jg["rank"] = g.rank;
    jg["dim"] = g.dim;
    json roots = json::array();
    for (const auto& r : g.positive_roots) roots.push_back(vec_to_json(r.coeffs()));
    jg["positive_roots"] = roots;
    jg["weyl_order"] = g.weyl_order;
    j["group"] = jg;
    j["dim_X"] = m.dim_x();
    json pts = json::array();
    for (std::size_t i = 0; i < m.fixed_point_count(); ++i) {
        FixedPointComponent f = m.fixed_point(i);
        json jf;
        jf["label"] = f.label;
        jf["moment"] = vec_to_json(f.moment_image.coeffs());
        json ws = json::array();
        for (const auto& [form, mult] : f.weights) {
            json jw;
            jw["form"] = vec_to_json(form.coeffs());
            jw["mult"] = mult;
            ws.push_back(jw);
        }
        jf["weights"] = ws;
        std::string cls = "1";
        if (!f.class_terms.empty()) {
            if (f.class_terms.size() != 1 || !f.class_terms[0].extra_powers.empty())
                throw model_error("JSON export supports a single plain class term per "
                                  "fixed point");
            cls = f.class_terms[0].numerator.to_string();
        }
        jf["class"] = cls;
        jf["point_integral"] = f.point_integral.to_string();
        pts.push_back(jf);
    }
    j["fixed_points"] = pts;
    return j.dump(2) + "\n";
}

} // namespace locres

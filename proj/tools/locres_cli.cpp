// Command-line surface of the localization-residue engine: model loading,
// pairings, iterated residues, Duistermaat-Heckman chamber output, relation
// verification, the critical-value set and the Gaussian decay experiment.

#include "locres/errors.hpp"
#include "locres/gaussian.hpp"
#include "locres/linalg.hpp"
#include "locres/model.hpp"
#include "locres/model_json.hpp"
#include "locres/model_library.hpp"
#include "locres/pairings.hpp"
#include "locres/parser.hpp"
#include "locres/residue.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

using namespace locres;
using ordered_json = nlohmann::ordered_json;

namespace {

struct ModelRef {
    LocalizationModel model;
    bool preset;
    std::string name;
};

ModelRef resolve_model(const std::string& spec) {
    if (spec.rfind("p1pow:", 0) == 0 || spec.rfind("projN:", 0) == 0 || spec == "su3demo")
        return {build_preset(spec), true, spec};
    return {model_from_json_file(spec), false, spec};
}

ConeSpec cone_from_option(const std::string& text, std::size_t l) {
    // generators separated by ';', coordinates by ','
    ConeSpec c;
    std::size_t start = 0;
    RatVec sum(l, Rat(0));
    while (start <= text.size()) {
        std::size_t semi = text.find(';', start);
        std::string piece =
            semi == std::string::npos ? text.substr(start) : text.substr(start, semi - start);
        RatVec g = parse_rat_vec(piece);
        if (g.size() != l) throw parse_error("cone generator of wrong rank");
        for (std::size_t k = 0; k < l; ++k) sum[k] += g[k];
        c.generators.push_back(std::move(g));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    c.interior_point = sum;
    c.validate();
    return c;
}

// An admissible default cone: the ray through a point where every
// denominator form is strictly positive.
ConeSpec default_cone(const std::vector<MeromorphicTerm>& terms, std::size_t l) {
    std::vector<LinearForm> forms;
    for (const auto& t : terms)
        for (const auto& [f, n] : t.denominator) forms.push_back(f);
    if (forms.empty()) return ConeSpec::positive_orthant(l);
    if (auto xi = find_positive_point(forms)) return ConeSpec::ray(*xi);
    throw choice_error("no admissible cone exists for this term list; pass --cone");
}

void attach_model_json(ordered_json& j, const ModelRef& mr, bool json_mode) {
    if (json_mode && !mr.preset && !mr.model.streamed())
        j["model_json"] = ordered_json::parse(model_to_json(mr.model));
}

void emit(const ordered_json& j, bool json_mode, const std::string& text) {
    if (json_mode) std::cout << j.dump(2) << "\n";
    else std::cout << text;
}

int run_pair(const ModelRef& mr, const std::string& class_expr,
             const std::optional<std::string>& cone_opt,
             const std::optional<std::string>& ray_opt, std::optional<unsigned> theta_order,
             unsigned threads, bool json_mode) {
    const LocalizationModel& m = mr.model;
    std::size_t l = m.rank();
    ClassFunction eta;
    if (mr.preset) {
        MultiPoly expr = parse_poly(class_expr, preset_class_variables(mr.name));
        eta = preset_class_function(mr.name, expr);
    } else {
        MultiPoly expr = parse_poly(class_expr, psi_names(l));
        eta = [expr](std::size_t, const FixedPointComponent&) { return expr; };
    }

    std::optional<ConeSpec> cone;
    if (cone_opt) cone = cone_from_option(*cone_opt, l);
    RaySpec ray = ray_opt ? RaySpec{parse_linear_form(*ray_opt, l)} : RaySpec::standard(l);

    ordered_json j;
    std::ostringstream text;
    j["command"] = "pair";
    j["model"] = mr.name;
    j["class"] = class_expr;
    if (theta_order) {
        std::optional<ConeSpec> cs = cone;
        if (l > 1 && !cs) cs = default_cone(pushforward_terms(m, eta, true), l);
        auto series = pairing_with_theta(m, eta, *theta_order, cs ? &*cs : nullptr,
                                         l > 1 ? &ray : nullptr);
        ordered_json coeffs = ordered_json::array();
        text << "pairing against e^{eps Theta} through order " << *theta_order << ":\n";
        for (unsigned k = 0; k <= *theta_order; ++k) {
            Scalar c = series.count(k) ? series[k] : Scalar();
            coeffs.push_back({{"order", k}, {"coefficient", c.to_string()}});
            text << "  eps^" << k << ": " << c << "\n";
        }
        j["theta_series"] = coeffs;
    } else {
        Scalar v;
        if (l == 1 && !cone) v = pairing_rank1(m, eta, threads);
        else {
            ConeSpec cs = cone ? *cone : default_cone(pushforward_terms(m, eta, true), l);
            v = pairing_general(m, eta, cs, ray);
        }
        j["value"] = v.to_string();
        text << v << "\n";
    }
    attach_model_json(j, mr, json_mode);
    emit(j, json_mode, text.str());
    return 0;
}

int run_residue(const std::string& betas_opt, const std::string& lambda_opt,
                const std::string& numerator_opt, const std::optional<std::string>& cone_opt,
                const std::optional<std::string>& ray_opt, bool json_mode) {
    std::vector<LinearForm> betas = parse_linear_form_list(betas_opt);
    if (betas.empty()) throw parse_error("--betas needs at least one form");
    std::size_t l = betas[0].dim();
    RatVec lambda = parse_rat_vec(lambda_opt);
    if (lambda.size() != l) throw parse_error("--lambda rank does not match --betas");

    MeromorphicTerm t;
    t.numerator = parse_poly(numerator_opt, psi_names(l));
    for (const auto& b : betas) t.denominator.emplace_back(b, 1);
    t.exponent = LinearForm(RatVec(lambda));

    ConeSpec cone = cone_opt ? cone_from_option(*cone_opt, l) : default_cone({t}, l);
    RaySpec ray = ray_opt ? RaySpec{parse_linear_form(*ray_opt, l)} : RaySpec::standard(l);

    Scalar v = jk_residue({t}, cone, ray);
    ordered_json j;
    j["command"] = "residue";
    j["betas"] = betas_opt;
    j["lambda"] = lambda_opt;
    j["value"] = v.to_string();
    std::ostringstream text;
    text << v << "\n";
    emit(j, json_mode, text.str());
    return 0;
}

int run_dh(const ModelRef& mr, const std::optional<std::string>& cone_opt, bool json_mode,
           bool as_q) {
    const LocalizationModel& m = mr.model;
    std::size_t l = m.rank();
    ConeSpec cone;
    if (cone_opt) cone = cone_from_option(*cone_opt, l);
    else if (l == 1) cone = ConeSpec::ray(RatVec{Rat(1)});
    else {
        std::vector<LinearForm> ws;
        for (std::size_t i = 0; i < m.fixed_point_count(); ++i)
            for (const auto& [w, mult] : m.fixed_point(i).weights) ws.push_back(w);
        if (auto xi = find_positive_point(ws)) cone = ConeSpec::ray(*xi);
        else throw choice_error("no cone separates the weights; pass --cone");
    }
    PiecewisePolynomial p = as_q ? witten_q(m, cone) : dh_function(m, cone);
    ordered_json j;
    j["command"] = as_q ? "dh.q" : "dh";
    j["model"] = mr.name;
    ordered_json chambers = ordered_json::array();
    std::ostringstream text;
    for (const auto& piece : p.pieces()) {
        chambers.push_back({{"chamber", piece.chamber.to_string()},
                            {"polynomial", piece.poly.to_string("y")}});
        text << piece.chamber.to_string() << " : " << piece.poly.to_string("y") << "\n";
    }
    j["pieces"] = chambers;
    attach_model_json(j, mr, json_mode);
    emit(j, json_mode, text.str());
    return 0;
}

int run_critical(const ModelRef& mr, bool json_mode) {
    CriticalValueSet b = critical_values(mr.model);
    ordered_json j;
    j["command"] = "critical";
    j["model"] = mr.name;
    ordered_json arr = ordered_json::array();
    std::ostringstream text;
    for (const auto& [beta, n2] : b.betas) {
        ordered_json coords = ordered_json::array();
        for (const Rat& q : beta.coeffs()) coords.push_back(rat_to_string(q));
        arr.push_back({{"beta", coords}, {"norm_squared", rat_to_string(n2)}});
        text << "beta = [";
        for (std::size_t k = 0; k < beta.dim(); ++k)
            text << (k ? ", " : "") << rat_to_string(beta[k]);
        text << "], |beta|^2 = " << rat_to_string(n2) << "\n";
    }
    j["critical_values"] = arr;
    attach_model_json(j, mr, json_mode);
    emit(j, json_mode, text.str());
    return 0;
}

int run_witten(const ModelRef& mr, const std::string& eps_opt, bool json_mode) {
    std::vector<double> eps;
    std::size_t start = 0;
    while (start <= eps_opt.size()) {
        std::size_t comma = eps_opt.find(',', start);
        std::string piece = comma == std::string::npos ? eps_opt.substr(start)
                                                       : eps_opt.substr(start, comma - start);
        try {
            eps.push_back(std::stod(piece));
        } catch (const std::exception&) {
            throw parse_error("malformed epsilon grid entry '" + piece + "'");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    auto points = witten_decay_check(mr.model, eps);
    double slope = fit_decay_slope(points);
    CriticalValueSet b = critical_values(mr.model);
    double b_min_sq = 0;
    for (const auto& [beta, n2] : b.betas)
        if (n2 != 0) {
            b_min_sq = n2.get_d();
            break;
        }
    ordered_json j;
    j["command"] = "witten";
    j["model"] = mr.name;
    ordered_json rows = ordered_json::array();
    std::ostringstream text;
    char buf[192];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "eps %-8g I^eps % .12g  I^eps_0 % .12g  |diff| %.12g",
                      p.eps, p.i_eps, p.i_eps0, p.diff);
        text << buf << "\n";
        rows.push_back(
            {{"eps", p.eps}, {"i_eps", p.i_eps}, {"i_eps0", p.i_eps0}, {"diff", p.diff}});
    }
    std::snprintf(buf, sizeof buf, "fitted slope of log|diff| vs -1/(2 eps): %.6g", slope);
    text << buf << "\n";
    std::snprintf(buf, sizeof buf, "smallest nonzero |beta|^2: %.6g", b_min_sq);
    text << buf << "\n";
    j["rows"] = rows;
    j["slope"] = slope;
    j["b_squared"] = b_min_sq;
    emit(j, json_mode, text.str());
    return 0;
}

int run_verify(const ModelRef& mr, unsigned threads, bool json_mode) {
    if (!mr.preset)
        throw model_error("verify works on the example presets p1pow:N and projN:N");
    std::vector<RelationCheck> checks;
    if (mr.name.rfind("p1pow:", 0) == 0)
        checks = verify_example1(static_cast<unsigned>(std::stoul(mr.name.substr(6))), threads);
    else if (mr.name.rfind("projN:", 0) == 0)
        checks = verify_example2(static_cast<unsigned>(std::stoul(mr.name.substr(6))));
    else
        throw model_error("verify works on the example presets p1pow:N and projN:N");

    bool all_zero = true;
    ordered_json rows = ordered_json::array();
    std::ostringstream text;
    for (const auto& c : checks) {
        all_zero = all_zero && c.value.is_zero();
        rows.push_back({{"relation", c.description}, {"pairing", c.value.to_string()}});
        text << c.description << " -> " << c.value << "\n";
    }
    if (checks.empty()) text << "no degree-matched relation classes at this size\n";
    text << (all_zero ? "PASS" : "FAIL") << " (" << checks.size() << " pairings)\n";
    ordered_json j;
    j["command"] = "verify";
    j["model"] = mr.name;
    j["checks"] = rows;
    j["pass"] = all_zero;
    emit(j, json_mode, text.str());
    return all_zero ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact intersection pairings on symplectic quotients via iterated residues"};
    app.require_subcommand(1);

    std::string model_spec, class_expr = "1", betas, lambda, numerator = "1";
    std::string eps_grid = "0.2,0.1,0.05,0.02";
    std::optional<std::string> cone_opt, ray_opt;
    std::optional<unsigned> theta_order;
    std::string format = "text";
    unsigned threads = 0;

    auto add_common = [&](CLI::App* cmd, bool with_model) {
        if (with_model)
            cmd->add_option("--model", model_spec,
                            "model preset (p1pow:N, projN:N, su3demo) or JSON file")
                ->required();
        cmd->add_option("--format", format, "text|json")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
        cmd->add_option("--cone", cone_opt, "cone generators, e.g. \"1,0;0,1\"");
        cmd->add_option("--ray", ray_opt, "tie-breaking ray, e.g. \"e1+1/7e2\"");
    };

    CLI::App* pair = app.add_subcommand("pair", "intersection pairing of a class");
    add_common(pair, true);
    pair->add_option("--class", class_expr, "class expression (preset generators or psi)");
    pair->add_option("--order", theta_order, "expand against e^{eps Theta} through this order");

    CLI::App* residue =
        app.add_subcommand("residue", "iterated residue of e^{i lambda(psi)} / prod beta");
    add_common(residue, false);
    residue->add_option("--betas", betas, "denominator forms, e.g. \"e1,e2,e1+e2\"")->required();
    residue->add_option("--lambda", lambda, "exponent covector, e.g. \"3,1\"")->required();
    residue->add_option("--numerator", numerator, "numerator polynomial in psi");

    CLI::App* dh = app.add_subcommand("dh", "Duistermaat-Heckman chamber decomposition");
    add_common(dh, true);
    bool dh_q = false;
    dh->add_flag("--q", dh_q, "emit Q = varpi * D_varpi R instead of R");

    CLI::App* verify = app.add_subcommand("verify", "check the example relation pairings vanish");
    add_common(verify, true);

    CLI::App* witten = app.add_subcommand("witten", "Gaussian decay experiment");
    add_common(witten, true);
    witten->add_option("--epsilon", eps_grid, "comma-separated epsilon grid");

    CLI::App* critical = app.add_subcommand("critical", "critical-value set B");
    add_common(critical, true);

    CLI11_PARSE(app, argc, argv);
    bool json_mode = format == "json";

    try {
        if (pair->parsed())
            return run_pair(resolve_model(model_spec), class_expr, cone_opt, ray_opt,
                            theta_order, threads, json_mode);
        if (residue->parsed())
            return run_residue(betas, lambda, numerator, cone_opt, ray_opt, json_mode);
        if (dh->parsed()) return run_dh(resolve_model(model_spec), cone_opt, json_mode, dh_q);
        if (verify->parsed()) return run_verify(resolve_model(model_spec), threads, json_mode);
        if (witten->parsed()) return run_witten(resolve_model(model_spec), eps_grid, json_mode);
        if (critical->parsed()) return run_critical(resolve_model(model_spec), json_mode);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const choice_error& e) {
        std::cerr << "cone/ray error: " << e.what() << "\n";
        return 4;
    } catch (const model_error& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return 2;
    } catch (const algebra_error& e) {
        std::cerr << "arithmetic contract error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

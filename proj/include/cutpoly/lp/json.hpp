#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cutpoly/errors.hpp"
#include "cutpoly/lp/model.hpp"
#include "cutpoly/rational.hpp"

namespace cutpoly::lp {

using Json = nlohmann::ordered_json;

inline Json value_to_json(const Rat& v) { return v.get_str(); }
inline Json value_to_json(double v) { return v; }

template <typename T>
T value_from_json(const Json& j) {
    if constexpr (scalar_traits<T>::exact) {
        if (j.is_string()) return parse_rat(j.get<std::string>());
        if (j.is_number_integer()) return Rat(j.get<long>());
        fail(Errc::io, "exact model values must be integers or \"p/q\" strings");
    } else {
        if (j.is_string()) return to_double(parse_rat(j.get<std::string>()));
        return j.get<double>();
    }
}

template <typename T>
Json model_to_json(const Model<T>& m) {
    Json j;
    j["variables"] = Json::array();
    for (const auto& v : m.variables()) {
        Json jv;
        jv["name"] = v.name;
        if (v.upper) jv["ub"] = value_to_json(*v.upper);
        j["variables"].push_back(jv);
    }
    j["rows"] = Json::array();
    for (const auto& r : m.rows()) {
        Json jr;
        if (!r.name.empty()) jr["name"] = r.name;
        Json coeffs;
        for (const auto& [col, v] : r.coeffs) coeffs[m.var_name(col)] = value_to_json(v);
        jr["coeffs"] = std::move(coeffs);
        jr["sense"] = row_sense_str(r.sense);
        jr["rhs"] = value_to_json(r.rhs);
        j["rows"].push_back(jr);
    }
    Json obj;
    for (const auto& [col, v] : m.objective()) obj[m.var_name(col)] = value_to_json(v);
    j["objective"]["coeffs"] = std::move(obj);
    j["sense"] = m.obj_sense() == ObjSense::Minimize ? "min" : "max";
    Json meta;
    meta["formulation"] = m.meta().tag;
    Json params;
    for (const auto& [k, v] : m.meta().params) params[k] = v;
    meta["params"] = std::move(params);
    j["meta"] = std::move(meta);
    return j;
}

template <typename T>
Model<T> model_from_json(const Json& j) {
    Model<T> m;
    for (const auto& jv : j.at("variables")) {
        std::optional<T> ub;
        if (jv.contains("ub")) ub = value_from_json<T>(jv.at("ub"));
        m.add_variable(jv.at("name").template get<std::string>(), ub);
    }
    for (const auto& jr : j.at("rows")) {
        std::vector<std::pair<int, T>> coeffs;
        for (const auto& [name, v] : jr.at("coeffs").items())
            coeffs.emplace_back(m.var_index(name), value_from_json<T>(v));
        std::string s = jr.at("sense").template get<std::string>();
        RowSense sense = s == "<=" ? RowSense::LE : s == ">=" ? RowSense::GE : RowSense::EQ;
        require(s == "<=" || s == ">=" || s == "=", Errc::io, "bad row sense: " + s);
        m.add_row(jr.contains("name") ? jr.at("name").template get<std::string>() : "", std::move(coeffs),
                  sense, value_from_json<T>(jr.at("rhs")));
    }
    std::vector<std::pair<int, T>> obj;
    for (const auto& [name, v] : j.at("objective").at("coeffs").items())
        obj.emplace_back(m.var_index(name), value_from_json<T>(v));
    std::string s = j.at("sense").template get<std::string>();
    m.set_objective(s == "max" ? ObjSense::Maximize : ObjSense::Minimize, std::move(obj));
    if (j.contains("meta")) {
        FormulationMeta meta;
        meta.tag = j.at("meta").value("formulation", "");
        if (j.at("meta").contains("params"))
            for (const auto& [k, v] : j.at("meta").at("params").items())
                meta.params[k] = v.template get<std::string>();
        m.set_meta(std::move(meta));
    }
    m.seal();
    return m;
}

template <typename T>
Json solution_to_json(const Model<T>& m, const Solution<T>& sol) {
    Json j;
    j["status"] = status_str(sol.status);
    if (sol.status == SolveStatus::Optimal) {
        j["objective"] = value_to_json(sol.objective);
        Json primal;
        for (int c = 0; c < m.num_cols(); ++c)
            primal[m.var_name(c)] = value_to_json(sol.primal[static_cast<std::size_t>(c)]);
        j["primal"] = std::move(primal);
        Json dual = Json::array();
        for (const auto& y : sol.dual) dual.push_back(value_to_json(y));
        j["dual"] = std::move(dual);
    }
    j["pivots"] = sol.pivots;
    return j;
}

}  // namespace cutpoly::lp

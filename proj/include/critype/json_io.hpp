#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "critype/angular_measure.hpp"
#include "critype/certificate.hpp"
#include "critype/common.hpp"
#include "critype/geometry.hpp"
#include "critype/point_sequence.hpp"

namespace critype {

using json = nlohmann::ordered_json;

namespace detail {

inline double require_number(const json& j, const char* key, const char* where) {
    if (!j.contains(key))
        throw invalid_input(std::string(where) + ": missing key \"" + key + "\"");
    const auto& v = j.at(key);
    if (!v.is_number())
        throw invalid_input(std::string(where) + ": key \"" + key + "\" is not a number");
    return v.get<double>();
}

inline void note_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                              const char* where, std::vector<std::string>* warnings) {
    if (!warnings) return;
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) warnings->push_back(std::string("ignored unknown key \"") + key +
                                     "\" in " + where);
    }
}

inline json complex_to_json(const Complex& z) {
    return json::array({z.real(), z.imag()});
}

inline const char* case_name(ContactCase kind) {
    return kind == ContactCase::diametral_pair ? "1" : "2";
}

}  // namespace detail

// Accepts {"atoms": [...], "density": [...]} with either part optional, or the
// same object wrapped under a "measure" key. Angles are radians unless
// `degrees` is set. Unknown keys are reported through `warnings` and skipped,
// except next to a "measure" wrapper: there siblings are envelope metadata,
// so a full analysis report pipes back in cleanly.
inline AngularMeasure measure_from_json(const json& j,
                                        std::vector<std::string>* warnings = nullptr,
                                        bool degrees = false) {
    if (!j.is_object()) throw invalid_input("measure: expected a JSON object");
    const json* obj = &j;
    if (j.contains("measure")) {
        obj = &j.at("measure");
        if (!obj->is_object()) throw invalid_input("measure: \"measure\" is not an object");
    }
    detail::note_unknown_keys(*obj, {"atoms", "density"}, "the measure", warnings);
    const double scale = degrees ? pi / 180.0 : 1.0;

    std::vector<Atom> atoms;
    if (obj->contains("atoms")) {
        const auto& arr = obj->at("atoms");
        if (!arr.is_array()) throw invalid_input("measure: \"atoms\" is not an array");
        for (const auto& a : arr) {
            if (!a.is_object()) throw invalid_input("measure: atom is not an object");
            detail::note_unknown_keys(a, {"angle", "mass"}, "an atom", warnings);
            atoms.push_back({scale * detail::require_number(a, "angle", "atom"),
                             detail::require_number(a, "mass", "atom")});
        }
    }
    std::vector<DensityCell> cells;
    if (obj->contains("density")) {
        const auto& arr = obj->at("density");
        if (!arr.is_array()) throw invalid_input("measure: \"density\" is not an array");
        for (const auto& c : arr) {
            if (!c.is_object()) throw invalid_input("measure: density cell is not an object");
            detail::note_unknown_keys(c, {"lo", "hi", "value"}, "a density cell", warnings);
            cells.push_back({scale * detail::require_number(c, "lo", "density cell"),
                             scale * detail::require_number(c, "hi", "density cell"),
                             detail::require_number(c, "value", "density cell") / scale});
        }
    }
    return AngularMeasure(std::move(atoms), std::move(cells));
}

inline json measure_to_json(const AngularMeasure& m, bool degrees = false) {
    const double scale = degrees ? 180.0 / pi : 1.0;
    json atoms = json::array();
    for (const auto& a : m.atoms())
        atoms.push_back({{"angle", scale * a.angle}, {"mass", a.mass}});
    json cells = json::array();
    for (const auto& c : m.density())
        cells.push_back({{"lo", scale * c.lo}, {"hi", scale * c.hi},
                         {"value", c.value / scale}});
    return json{{"atoms", std::move(atoms)}, {"density", std::move(cells)}};
}

inline json analysis_to_json(const AnalysisReport& rep, bool degrees = false) {
    const double scale = degrees ? 180.0 / pi : 1.0;
    json out;
    out["sigma_u"] = rep.sigma_u;
    out["radius"] = rep.circle.radius;
    out["center_offset"] = detail::complex_to_json(rep.offset);
    out["case"] = rep.classification
                      ? detail::case_name(rep.classification->kind)
                      : "degenerate";
    json args = json::array();
    json polar = json::array();
    if (rep.classification) {
        for (double mu : rep.classification->contact_args) args.push_back(scale * mu);
        if (rep.classification->kind == ContactCase::contact_triangle)
            for (const auto& n : rep.classification->polar)
                polar.push_back(detail::complex_to_json(n));
    }
    out["contact_args"] = std::move(args);
    out["polar_vertices"] = std::move(polar);
    json verts = json::array();
    for (const auto& v : rep.body.vertices()) verts.push_back(detail::complex_to_json(v));
    out["vertices"] = std::move(verts);
    return out;
}

inline json certify_to_json(const CertifyReport& rep) {
    json out;
    out["sigma"] = rep.sigma;
    out["sigma_u"] = rep.sigma_u;
    out["case"] = rep.kind ? detail::case_name(*rep.kind) : "degenerate";
    out["lhs"] = rep.lhs;
    out["rhs"] = rep.rhs;
    out["margin"] = rep.margin;
    out["certified"] = rep.certified;
    return out;
}

inline json points_to_json(const PointSequence& seq) {
    json pts = json::array();
    for (const auto& p : seq.points()) pts.push_back(detail::complex_to_json(p));
    return json{{"points", std::move(pts)}};
}

// Accepts {"points": [[x, y], ...]} or the bare array. Keys next to
// "points" are envelope metadata (request options, a generator report) and
// are left to the caller.
inline PointSequence points_from_json(const json& j) {
    const json* arr = &j;
    if (j.is_object()) {
        if (!j.contains("points"))
            throw invalid_input("points: missing key \"points\"");
        arr = &j.at("points");
    }
    if (!arr->is_array()) throw invalid_input("points: expected an array");
    std::vector<Complex> pts;
    pts.reserve(arr->size());
    for (const auto& p : *arr) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw invalid_input("points: each point must be a [x, y] number pair");
        pts.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return PointSequence(std::move(pts));
}

}  // namespace critype

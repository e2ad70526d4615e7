#pragma once

// JSON encodings. Field order is fixed (ordered_json) so output is
// reproducible byte for byte.

#include <json.hpp>

#include "torsion/bounds.hpp"
#include "torsion/geom.hpp"
#include "torsion/linsums.hpp"
#include "torsion/parse.hpp"
#include "torsion/solver.hpp"

namespace torsion {

using Json = nlohmann::ordered_json;

inline Json to_json(const RootOfUnity& r) { return Json{{"num", r.num()}, {"ord", r.ord()}}; }

inline Json to_json(const CycloNum& x) {
    const CycloNum r = x.reduced();
    Json c = Json::array();
    for (auto& q : r.coeffs()) c.push_back(q.get_str());
    return Json{{"conductor", r.conductor()}, {"coeffs", c}};
}

inline Json to_json(const MPoly& f) {
    Json terms = Json::array();
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it)
        terms.push_back(Json{{"exps", it->first}, {"coeff", to_json(it->second)}});
    return Json{{"nvars", f.nvars()}, {"text", to_text(f)}, {"terms", terms}};
}

inline Json to_json(const TorsionPoint& p) {
    Json a = Json::array();
    for (auto& r : p) a.push_back(to_json(r));
    return a;
}

inline Json to_json(const TorsionCoset& c) { return Json{{"base", to_json(c.base())}, {"lattice", c.lattice()}}; }

inline Json to_json(const SolveReport& r) {
    Json iso = Json::array(), cos = Json::array();
    for (auto& c : r.isolated) iso.push_back(to_json(c.base()));
    for (auto& c : r.cosets) cos.push_back(to_json(c));
    Json diag = r.diagnostics;
    return Json{{"isolated", iso},
                {"cosets", cos},
                {"counts", Json{{"j0", r.isolated.size()}, {"j1", r.cosets.size()}}},
                {"diagnostics", diag}};
}

inline Json to_json(const VanishingSum& s) {
    Json t = Json::array();
    for (auto& x : s.terms) t.push_back(Json{{"coeff", x.coeff}, {"root", to_json(x.root)}});
    return Json{{"terms", t}, {"blocks", s.blocks}};
}

inline Json to_json(const LatticePolytope& P) {
    return Json{{"dim", P.dim}, {"vertices", P.vertices}};
}

inline Json to_json(const PolytopeStats& s) {
    return Json{{"volume", s.volume.get_str()}, {"diam1", s.diam1}, {"multidegree", s.multidegree}};
}

inline Json to_json(const SimplexEmbedding& S) {
    Json j{{"l", S.l}, {"M_l", S.M_l}, {"tau_l", S.tau_l}, {"bound", S.bound}, {"verified", S.verified}};
    if (!S.violations.empty()) j["violations"] = S.violations;
    // floating-point diagnostics
    const auto n = S.ellipsoid.M.rows();
    Json M = Json::array();
    for (Eigen::Index i = 0; i < n; ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < n; ++k) row.push_back(S.ellipsoid.M(i, k));
        M.push_back(row);
    }
    Json c = Json::array();
    for (Eigen::Index i = 0; i < n; ++i) c.push_back(S.ellipsoid.center(i));
    j["diagnostics"] = Json{{"det_M_l", S.det_M_l}, {"mvee_M", M}, {"mvee_center", c}, {"mvee_det", S.ellipsoid.detM},
                            {"mvee_iterations", S.ellipsoid.iterations}};
    return j;
}

inline Json to_json(const BoundParams& p) {
    Json j = Json::object();
    auto put = [&](const char* k, const std::optional<long>& v) {
        if (v) j[k] = *v;
    };
    put("n", p.n);
    put("d", p.d);
    put("k", p.k);
    put("j", p.j);
    put("delta", p.delta);
    put("delta0", p.delta0);
    put("k0", p.k0);
    put("k1", p.k1);
    if (p.multidegree) j["multidegree"] = *p.multidegree;
    if (p.vol) j["vol"] = p.vol->get_str();
    return j;
}

inline Json to_json(const BoundReport& r, bool full = false) {
    Json j{{"name", r.name}, {"params", to_json(r.params)}};
    if (!r.error.empty()) {
        j["error"] = r.error;
        return j;
    }
    if (r.value && (full || r.log2 <= kRenderBits))
        j["value"] = r.value->get_str();
    else
        j["value"] = nullptr;
    j["exact"] = r.exact;
    if (!r.symbolic.empty()) j["symbolic"] = r.symbolic;
    j["log2"] = r.log2;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline Json error_json(const std::string& code, const std::string& message) {
    return Json{{"error", Json{{"code", code}, {"message", message}}}};
}

}  // namespace torsion

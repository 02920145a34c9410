#include "charweb/json_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "charweb/errors.hpp"

namespace charweb {

namespace {

GQ scalar_from_json(const Json& j) {
    if (j.is_number_integer()) return GQ(j.get<long>());
    if (!j.is_string()) throw ParseError("json: scalar must be a string");
    return GQ::parse(j.get<std::string>());
}

Json scalar_to_json(const GQ& v) { return Json(v.str()); }

template <typename F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("json: malformed ") + what + ": " + e.what());
    }
}

}  // namespace

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("json: ") + e.what());
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_json_text(buffer.str());
}

Json matrix_to_json(const Mat& m) {
    Json rows = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat matrix_from_json(const Json& j) {
    return guarded("matrix", [&] {
        if (!j.is_array() || j.empty()) throw ParseError("json: matrix must be a nonempty array");
        const Index rows = static_cast<Index>(j.size());
        const Index cols = static_cast<Index>(j.at(0).size());
        Mat m(rows, cols);
        for (Index r = 0; r < rows; ++r) {
            const Json& row = j.at(static_cast<std::size_t>(r));
            if (static_cast<Index>(row.size()) != cols)
                throw ParseError("json: ragged matrix rows");
            for (Index c = 0; c < cols; ++c)
                m(r, c) = scalar_from_json(row.at(static_cast<std::size_t>(c)));
        }
        return m;
    });
}

Json to_json(const Subspace& s) {
    Json j;
    j["n"] = s.ambient_dim();
    j["basis"] = matrix_to_json(s.basis());
    return j;
}

Subspace subspace_from_json(const Json& j) {
    return guarded("subspace", [&] {
        const Index n = j.at("n").get<Index>();
        const Json& basis = j.at("basis");
        if (basis.empty()) return Subspace::zero(n);
        return Subspace::from_spanning(n, matrix_from_json(basis));
    });
}

Json to_json(const SubspaceSystem& system) {
    Json j;
    j["n"] = system.ambient_dim();
    Json members = Json::array();
    for (const Subspace& m : system.members()) members.push_back(to_json(m));
    j["members"] = std::move(members);
    return j;
}

SubspaceSystem system_from_json(const Json& j) {
    return guarded("system", [&] {
        const Index n = j.at("n").get<Index>();
        std::vector<Subspace> members;
        for (const Json& m : j.at("members")) members.push_back(subspace_from_json(m));
        return SubspaceSystem(n, std::move(members));
    });
}

Json to_json(const Certificate& cert) {
    Json j;
    j["n"] = cert.n;
    j["dims"] = cert.dims;
    j["target"] = cert.target;
    Json p = Json::array(), q = Json::array();
    for (const Expr& e : cert.p_exprs) p.push_back(e.str());
    for (const Expr& e : cert.q_exprs) q.push_back(e.str());
    j["P"] = std::move(p);
    j["Q"] = std::move(q);
    j["I"] = cert.i_sets;
    return j;
}

Certificate certificate_from_json(const Json& j) {
    return guarded("certificate", [&] {
        Certificate cert;
        cert.n = j.at("n").get<Index>();
        cert.dims = j.at("dims").get<std::vector<Index>>();
        cert.target = j.at("target").get<int>();
        for (const Json& e : j.at("P")) cert.p_exprs.push_back(Expr::parse(e.get<std::string>()));
        for (const Json& e : j.at("Q")) cert.q_exprs.push_back(Expr::parse(e.get<std::string>()));
        cert.i_sets = j.at("I").get<std::vector<std::vector<int>>>();
        cert.validate();
        return cert;
    });
}

Json to_json(const GenPosVerdict& verdict) {
    Json j;
    j["general_position"] = verdict.in_general_position;
    if (verdict.witness) {
        Json w;
        w["P"] = verdict.witness->p.str();
        w["Q"] = verdict.witness->q.str();
        w["dim_sum"] = verdict.witness->dim_sum;
        w["expected"] = verdict.witness->dim_expected;
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json to_json(const RigidityVerdict& verdict) {
    Json j;
    j["holds"] = verdict.holds;
    if (verdict.failed_condition) {
        j["failed_condition"] = to_string(*verdict.failed_condition);
        j["detail"] = verdict.detail;
    } else {
        j["failed_condition"] = nullptr;
        j["detail"] = nullptr;
    }
    return j;
}

Json to_json(const GenericVerdict& verdict) {
    Json j = to_json(verdict.verdict);
    j["trials"] = verdict.trials;
    j["passed"] = verdict.passed;
    j["skipped"] = verdict.skipped;
    return j;
}

Json to_json(const WebReport& report) {
    Json j;
    j["n"] = report.n;
    j["dims"] = report.dims;
    j["general_position"] = to_json(report.genpos);
    j["decompositions"] = report.s;
    j["N_n"] = report.bound;
    j["rigid_by_count"] = report.rigid_by_count;
    if (report.rigid_small_tuple)
        j["rigid_small_tuple"] = *report.rigid_small_tuple;
    else
        j["rigid_small_tuple"] = nullptr;
    j["rigid"] = report.rigid;
    Json pairs = Json::array();
    for (auto [a, b] : report.containment_pairs) pairs.push_back(Json::array({a, b}));
    j["tangential_containments"] = std::move(pairs);
    return j;
}

Json to_json(const PolyMap& map) {
    Json j;
    j["n_in"] = map.n_in();
    Json components = Json::array();
    for (const Poly& p : map.components()) {
        Json terms = Json::array();
        for (const Term& t : p.terms()) {
            Json term;
            term["coeff"] = scalar_to_json(t.coeff);
            term["exps"] = t.exps;
            terms.push_back(std::move(term));
        }
        components.push_back(std::move(terms));
    }
    j["components"] = std::move(components);
    return j;
}

PolyMap polymap_from_json(const Json& j) {
    return guarded("poly map", [&] {
        const Index n_in = j.at("n_in").get<Index>();
        std::vector<Poly> components;
        for (const Json& comp : j.at("components")) {
            Poly p(n_in);
            for (const Json& term : comp)
                p.add_term(scalar_from_json(term.at("coeff")),
                           term.at("exps").get<std::vector<int>>());
            components.push_back(std::move(p));
        }
        return PolyMap(n_in, std::move(components));
    });
}

Json to_json(const PolyhedralPresentation& pres) {
    Json j;
    j["n"] = pres.n;
    Json defs = Json::array();
    for (const PolyMap& g : pres.defs) defs.push_back(to_json(g));
    j["defs"] = std::move(defs);
    return j;
}

PolyhedralPresentation presentation_from_json(const Json& j) {
    return guarded("presentation", [&] {
        PolyhedralPresentation pres;
        pres.n = j.at("n").get<Index>();
        for (const Json& g : j.at("defs")) pres.defs.push_back(polymap_from_json(g));
        pres.validate();
        return pres;
    });
}

}  // namespace charweb

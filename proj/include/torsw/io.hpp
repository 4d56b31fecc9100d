#ifndef TORSW_IO_HPP
#define TORSW_IO_HPP

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "torsw/aff.hpp"
#include "torsw/balanced.hpp"
#include "torsw/glue.hpp"
#include "torsw/inverse.hpp"
#include "torsw/matrix.hpp"

namespace torsw {

// ordered_json keeps insertion order, giving byte-stable reports
using Json = nlohmann::ordered_json;

inline Json matrix_to_json(const RatMatrix& a) {
    Json entries = Json::array();
    for (int r = 0; r < a.rows(); ++r)
        for (const auto& [c, v] : a.row(r))
            entries.push_back(Json::array({r, c, rat_to_string(v)}));
    Json out;
    out["rows"] = a.rows();
    out["cols"] = a.cols();
    out["entries"] = std::move(entries);
    return out;
}

inline RatMatrix matrix_from_json(const Json& j) {
    RatMatrix a(j.at("rows").get<int>(), j.at("cols").get<int>());
    for (const auto& e : j.at("entries")) {
        if (!e.is_array() || e.size() != 3)
            throw std::invalid_argument("matrix entry must be [row, col, value]");
        a.set(e[0].get<int>(), e[1].get<int>(), rat_from_string(e[2].get<std::string>()));
    }
    return a;
}

inline Json module_to_json(const AffModule& m) {
    Json mats;
    for (const GenLabel& g : AffPresentation(m.loops(), m.letters()).generators())
        mats[g.str()] = matrix_to_json(m.gen_matrix(g));
    Json out;
    out["m"] = m.loops();
    out["ell"] = m.letters();
    out["dim"] = m.dim();
    out["mats"] = std::move(mats);
    return out;
}

inline AffModule module_from_json(const Json& j) {
    std::map<std::string, RatMatrix> mats;
    for (const auto& [label, mj] : j.at("mats").items()) mats[label] = matrix_from_json(mj);
    return AffModule(j.at("m").get<int>(), j.at("ell").get<int>(), j.at("dim").get<int>(),
                     std::move(mats));
}

inline Json verify_report_to_json(const VerifyReport& rep) {
    Json items = Json::array();
    for (const auto& it : rep.items)
        items.push_back(Json{{"relation", it.relation}, {"status", it.pass ? "pass" : "fail"}});
    return items;
}

inline Json toroidal_report_to_json(const ToroidalReport& rep) {
    Json items = Json::array();
    for (const auto& it : rep.items)
        items.push_back(Json{{"family", it.family},
                             {"i", it.i},
                             {"j", it.j},
                             {"k", it.k},
                             {"m", it.m},
                             {"status", it.pass ? "pass" : "fail"}});
    return items;
}

inline Json claim_report_to_json(const ClaimReport& rep) {
    Json items = Json::array();
    for (const auto& it : rep.items) {
        Json e{{"claim", it.claim}, {"status", it.pass ? "pass" : "fail"}};
        if (!it.pass) e["witness"] = it.witness;
        items.push_back(std::move(e));
    }
    return items;
}

inline Json batch_report_to_json(const BatchReport& rep) {
    Json out;
    out["checked"] = rep.total;
    out["status"] = rep.all_pass() ? "pass" : "fail";
    out["failures"] = rep.failures;
    return out;
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

inline void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace torsw

#endif

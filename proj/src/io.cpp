#include "cpinf/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace cpinf {

namespace {

std::vector<double> parse_number_array(const Json& j, const std::string& field) {
    if (!j.is_array()) throw ParseError("field '" + field + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw ParseError("field '" + field + "' must contain numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<Vec3> parse_triple_array(const Json& j, const std::string& field,
                                     std::size_t expected) {
    if (!j.is_array() || j.size() != expected)
        throw ParseError("field '" + field + "' must list one [x,y,z] per body");
    std::vector<Vec3> out;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 3)
            throw ParseError("entries of '" + field + "' must be [x,y,z] triples");
        Vec3 v;
        for (int c = 0; c < 3; ++c) {
            if (!t[static_cast<std::size_t>(c)].is_number())
                throw ParseError("entries of '" + field + "' must be numeric");
            v[c] = t[static_cast<std::size_t>(c)].get<double>();
        }
        out.push_back(v);
    }
    return out;
}

} // namespace

ParsedDocument parse_document(const Json& j, bool require_state) {
    if (!j.is_object()) throw ParseError("document must be a JSON object");
    static const std::set<std::string> allowed = {"masses", "charges", "interaction",
                                                  "positions", "velocities"};
    for (const auto& item : j.items())
        if (!allowed.count(item.key()))
            throw ParseError("unknown field '" + item.key() + "'");

    if (!j.contains("masses")) throw ParseError("missing field 'masses'");
    if (!j.contains("interaction")) throw ParseError("missing field 'interaction'");
    if (!j["interaction"].is_string())
        throw ParseError("field 'interaction' must be a string");
    const std::string kind = j["interaction"].get<std::string>();
    const std::vector<double> masses = parse_number_array(j["masses"], "masses");

    ParsedDocument doc;
    try {
        if (kind == "gravitational") {
            if (j.contains("charges"))
                throw ParseError("field 'charges' is only used with coulomb interaction");
            doc.system = BodySystem::gravitational(masses);
        } else if (kind == "coulomb") {
            if (!j.contains("charges"))
                throw ParseError("coulomb interaction requires field 'charges'");
            doc.system = BodySystem::coulomb(masses, parse_number_array(j["charges"], "charges"));
        } else {
            throw ParseError("interaction must be 'gravitational' or 'coulomb'");
        }
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }

    const bool has_pos = j.contains("positions");
    const bool has_vel = j.contains("velocities");
    if (require_state && (!has_pos || !has_vel))
        throw ParseError("state documents require 'positions' and 'velocities'");
    if (has_pos != has_vel)
        throw ParseError("'positions' and 'velocities' must be given together");
    if (has_pos) {
        CartesianState c;
        c.positions = parse_triple_array(j["positions"], "positions", masses.size());
        c.velocities = parse_triple_array(j["velocities"], "velocities", masses.size());
        doc.cartesian = std::move(c);
    }
    return doc;
}

AlbouyState parse_state(const Json& j) {
    const ParsedDocument doc = parse_document(j, true);
    return to_albouy(*doc.cartesian, doc.system);
}

Json state_to_json(const AlbouyState& s) {
    const BodySystem& sys = *s.system();
    Json j;
    j["masses"] = sys.masses();
    if (sys.interaction() == Interaction::Coulomb) {
        j["interaction"] = "coulomb";
        j["charges"] = *sys.charges();
    } else {
        j["interaction"] = "gravitational";
    }
    Json positions = Json::array(), velocities = Json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Vec3 q = s.position(i), v = s.velocity(i);
        positions.push_back({q.x, q.y, q.z});
        velocities.push_back({v.x, v.y, v.z});
    }
    j["positions"] = std::move(positions);
    j["velocities"] = std::move(velocities);
    return j;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
}

std::vector<AlbouyState> read_jsonl_sequence(std::istream& in) {
    std::vector<AlbouyState> states;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Json j;
        try {
            j = Json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
        states.push_back(parse_state(j));
        if (states.size() > 1 && !same_system(states.front().system(), states.back().system()))
            throw ParseError("line " + std::to_string(lineno) +
                             ": state belongs to a different body system");
    }
    if (states.empty()) throw ParseError("sequence file contains no states");
    return states;
}

void write_jsonl_sequence(std::ostream& out, std::span<const AlbouyState> states) {
    for (const auto& s : states) out << state_to_json(s).dump() << '\n';
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_diagnostics_csv(std::ostream& out, const SequenceDiagnostics& diag) {
    out << "k,z,residual_norm,H,K,I,V,Lx,Ly,Lz,Iz,Kz,lambda_norm,ratio_kplusv,"
           "min_pair_dist,min_center_dist\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& row : diag.rows) {
        const double cols[] = {static_cast<double>(row.k),
                               row.z,
                               row.residual_norm,
                               row.H.value_or(nan),
                               row.K,
                               row.I,
                               row.V.value_or(nan),
                               row.L.x,
                               row.L.y,
                               row.L.z,
                               row.I_z,
                               row.K_z,
                               row.lambda_norm,
                               row.ratio_kplusv.value_or(nan),
                               row.min_pair_dist,
                               row.min_centre_dist};
        for (std::size_t c = 0; c < std::size(cols); ++c)
            out << (c ? "," : "") << format_double(cols[c]);
        out << '\n';
    }
}

Json classification_to_json(const Classification& c) {
    Json j;
    j["verdict"] = verdict_name(c.verdict);
    j["residual_to_zero"] = c.residual_to_zero;
    j["diameter_bounded"] = c.diameter_bounded;
    j["l_constant"] = c.l_constant;
    j["l_drift"] = c.l_drift;
    j["h_convergent"] = c.h_convergent;
    if (c.partition) j["clusters"] = partition_to_json(*c.partition);
    if (!c.blocks.empty()) {
        Json blocks = Json::array();
        for (const auto& b : c.blocks) {
            Json jb;
            Json indices = Json::array();
            for (std::size_t i : b.block) indices.push_back(i + 1);
            jb["block"] = std::move(indices);
            jb["re_like"] = b.re_like;
            jb["last_residual"] = b.last_residual;
            blocks.push_back(std::move(jb));
        }
        j["blocks"] = std::move(blocks);
    }
    j["notes"] = c.notes;
    return j;
}

Json bifurcation_to_json(const std::vector<BifurcationValue>& values) {
    Json j = Json::array();
    for (const auto& v : values) {
        Json e;
        e["pair"] = {v.i + 1, v.j + 1};
        e["gamma"] = v.gamma;
        e["mu"] = v.mu;
        e["nu"] = v.nu;
        j.push_back(std::move(e));
    }
    return j;
}

Json additivity_to_json(const AdditivityReport& report) {
    Json rows = Json::array();
    for (const auto& r : report.rows) {
        Json e;
        e["k"] = r.k;
        e["k_error"] = r.k_error;
        e["i_error"] = r.i_error;
        e["l_error"] = r.l_error;
        e["v_remainder"] = r.v_remainder;
        e["grad_remainder"] = r.grad_remainder;
        e["min_center_dist"] = r.min_centre_dist;
        rows.push_back(std::move(e));
    }
    Json j;
    j["rows"] = std::move(rows);
    j["v_decay_slope"] = report.v_decay.valid ? report.v_decay.slope
                                              : std::numeric_limits<double>::quiet_NaN();
    j["grad_decay_slope"] = report.grad_decay.valid
                                ? report.grad_decay.slope
                                : std::numeric_limits<double>::quiet_NaN();
    return j;
}

Json partition_to_json(const ClusterPartition& part) {
    Json j = Json::array();
    for (const auto& block : part.blocks()) {
        Json b = Json::array();
        for (std::size_t i : block) b.push_back(i + 1);
        j.push_back(std::move(b));
    }
    return j;
}

} // namespace cpinf

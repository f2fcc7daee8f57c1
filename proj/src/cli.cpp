#include "cpinf/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpinf/io.hpp"

namespace cpinf::cli {

namespace {

std::pair<std::size_t, std::size_t> parse_pair_flag(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw ParseError("--pair expects two comma-separated 1-based indices, e.g. 1,2");
    try {
        const long a = std::stol(text.substr(0, comma));
        const long b = std::stol(text.substr(comma + 1));
        if (a < 1 || b < 1 || a == b) throw ParseError("--pair indices must be distinct and >= 1");
        return {static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1)};
    } catch (const std::invalid_argument&) {
        throw ParseError("--pair indices must be integers");
    } catch (const std::out_of_range&) {
        throw ParseError("--pair indices out of range");
    }
}

void print_kv_table(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
    std::size_t width = 0;
    for (const auto& [k, v] : rows) width = std::max(width, k.size());
    for (const auto& [k, v] : rows)
        out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
}

std::string vec3_string(const Vec3& v) {
    return "(" + format_double(v.x) + ", " + format_double(v.y) + ", " + format_double(v.z) + ")";
}

int cmd_bifurcation(const std::string& system_path, const std::string& format,
                    std::ostream& out) {
    const auto doc = parse_document(read_json_file(system_path), false);
    const auto values = bifurcation_values(*doc.system);
    if (format == "json") {
        out << bifurcation_to_json(values).dump(2) << '\n';
    } else {
        out << "pair    gamma                    mu                       nu\n";
        for (const auto& v : values) {
            char line[160];
            std::snprintf(line, sizeof line, "(%zu,%zu)   %-24.17g %-24.17g %-24.17g\n",
                          v.i + 1, v.j + 1, v.gamma, v.mu, v.nu);
            out << line;
        }
    }
    return 0;
}

int cmd_re(const std::string& system_path, const std::string& pair_flag, double ell,
           const std::string& format, std::ostream& out) {
    const auto doc = parse_document(read_json_file(system_path), false);
    const auto pair = parse_pair_flag(pair_flag);
    const auto red = reduce_two_body(*doc.system, pair);
    const auto re = solve_relative_equilibrium(red, ell);
    if (format == "json") {
        Json j;
        j["pair"] = {pair.first + 1, pair.second + 1};
        j["ell"] = re.ell;
        j["r_star"] = re.r_star;
        j["omega"] = re.omega;
        j["h"] = re.h;
        j["nu"] = re.nu;
        out << j.dump(2) << '\n';
    } else {
        print_kv_table(out, {{"pair", "(" + std::to_string(pair.first + 1) + "," +
                                          std::to_string(pair.second + 1) + ")"},
                             {"ell", format_double(re.ell)},
                             {"r_star", format_double(re.r_star)},
                             {"omega", format_double(re.omega)},
                             {"h", format_double(re.h)},
                             {"nu", format_double(re.nu)}});
    }
    return 0;
}

int cmd_sequence(const std::string& system_path, const std::string& pair_flag,
                 std::size_t singleton_flag, double ell, double z0, double rho,
                 std::size_t count, const std::string& out_path,
                 const std::string& states_out_path, std::ostream& out) {
    const auto doc = parse_document(read_json_file(system_path), false);
    const auto pair = parse_pair_flag(pair_flag);
    if (singleton_flag < 1) throw ParseError("--singleton is a 1-based body index");
    const std::size_t singleton = singleton_flag - 1;

    // output paths are checked before any computation
    std::ofstream csv(out_path);
    if (!csv) throw ParseError("cannot write '" + out_path + "'");
    std::ofstream jsonl;
    if (!states_out_path.empty()) {
        jsonl.open(states_out_path);
        if (!jsonl) throw ParseError("cannot write '" + states_out_path + "'");
    }

    Schedule schedule;
    schedule.rho = rho;
    schedule.count = count;
    if (z0 > 0.0) {
        schedule.z0 = z0;
    } else {
        // Default: ten times the pair separation of the relative equilibrium.
        const auto re = solve_relative_equilibrium(reduce_two_body(*doc.system, pair), ell);
        schedule.z0 = 10.0 * re.r_star;
    }

    const StateSequence seq = generate_horizontal(doc.system, pair, singleton, ell, schedule);
    const SequenceDiagnostics diag = diagnose(seq);
    const Classification cls = classify(seq, diag);

    write_diagnostics_csv(csv, diag);
    if (jsonl.is_open()) write_jsonl_sequence(jsonl, seq.states);

    Json summary = classification_to_json(cls);
    summary["csv"] = out_path;
    summary["count"] = seq.states.size();
    out << summary.dump(2) << '\n';
    return 0;
}

int cmd_verify(const std::string& state_path, const std::string& format, std::ostream& out) {
    const AlbouyState state = parse_state(read_json_file(state_path));
    const IntegralValues values = reduced_integral_map(state);
    const Multiplier lambda = best_multiplier(state);
    const Residual residual = lagrange_residual(state, lambda);
    if (format == "json") {
        Json j;
        j["H"] = values.H;
        j["L"] = {values.L.x, values.L.y, values.L.z};
        j["nu"] = bifurcation_parameter(values);
        j["lambda"] = {lambda.lambda.x, lambda.lambda.y, lambda.lambda.z};
        j["residual_norm"] = residual.norm;
        out << j.dump(2) << '\n';
    } else {
        print_kv_table(out, {{"H", format_double(values.H)},
                             {"L", vec3_string(values.L)},
                             {"nu", format_double(bifurcation_parameter(values))},
                             {"lambda", vec3_string(lambda.lambda)},
                             {"residual_norm", format_double(residual.norm)}});
    }
    return 0;
}

int cmd_clusters(const std::string& seq_path, std::size_t window, double threshold,
                 std::ostream& out) {
    std::ifstream in(seq_path);
    if (!in) throw ParseError("cannot open '" + seq_path + "'");
    const std::vector<AlbouyState> states = read_jsonl_sequence(in);
    const ClusterPartition part = detect_clusters(states, window, threshold);
    Json j;
    j["partition"] = partition_to_json(part);
    j["additivity"] = additivity_to_json(additivity_report(states, part));
    out << j.dump(2) << '\n';
    return 0;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"critical points at infinity for the charged N-body problem"};
    app.require_subcommand(1);

    std::string system_path, state_path, seq_path, pair_flag = "1,2";
    std::string format = "json";
    std::string out_path, states_out_path;
    std::string kernel = "inverse_r";  // custom kernels are library-API only
    double ell = 1.0, z0 = 0.0, rho = 2.0, threshold = 10.0;
    std::size_t singleton = 3, count = 14, window = 5;

    auto* bif = app.add_subcommand("bifurcation", "bifurcation values of a 3-body system");
    bif->add_option("--system", system_path, "system JSON file")->required();
    bif->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

    auto* re = app.add_subcommand("re", "two-body relative equilibrium");
    re->add_option("--system", system_path, "system JSON file")->required();
    re->add_option("--pair", pair_flag, "pair indices i,j (1-based)");
    re->add_option("--ell", ell, "angular momentum of the pair");
    re->add_option("--kernel", kernel, "pair kernel")->check(CLI::IsMember({"inverse_r"}));
    re->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

    auto* sq = app.add_subcommand("sequence", "generate and classify a horizontal sequence");
    sq->add_option("--system", system_path, "system JSON file")->required();
    sq->add_option("--pair", pair_flag, "pair indices i,j (1-based)");
    sq->add_option("--singleton", singleton, "singleton index (1-based)");
    sq->add_option("--ell", ell, "angular momentum of the pair");
    sq->add_option("--kernel", kernel, "pair kernel")->check(CLI::IsMember({"inverse_r"}));
    sq->add_option("--z0", z0, "initial separation scale (0 = 10 x pair separation)");
    sq->add_option("--rho", rho, "geometric growth factor");
    sq->add_option("--count", count, "number of indices");
    sq->add_option("--out", out_path, "diagnostics CSV path")->required();
    sq->add_option("--states-out", states_out_path, "optional JSONL dump of the states");

    auto* vf = app.add_subcommand("verify", "integrals, best multiplier and residual of a state");
    vf->add_option("--state", state_path, "state JSON file")->required();
    vf->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

    auto* cl = app.add_subcommand("clusters", "detect clusters along a JSONL state sequence");
    cl->add_option("--seq", seq_path, "JSONL file, one state per line")->required();
    cl->add_option("--window", window, "trailing window for the liminf surrogate");
    cl->add_option("--threshold", threshold, "merge threshold");

    auto emit_error = [&err](const std::string& kind, const std::string& detail) {
        Json j;
        j["error"] = kind;
        j["detail"] = detail;
        err << j.dump() << '\n';
    };

    try {
        app.parse(argc, argv);
        if (bif->parsed()) return cmd_bifurcation(system_path, format, out);
        if (re->parsed()) return cmd_re(system_path, pair_flag, ell, format, out);
        if (sq->parsed())
            return cmd_sequence(system_path, pair_flag, singleton, ell, z0, rho, count,
                                out_path, states_out_path, out);
        if (vf->parsed()) return cmd_verify(state_path, format, out);
        if (cl->parsed()) return cmd_clusters(seq_path, window, threshold, out);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        emit_error("usage", e.what());
        return 2;
    } catch (const ParseError& e) {
        emit_error("parse", e.what());
        return 2;
    } catch (const DomainError& e) {
        emit_error("domain", e.what());
        return 1;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 1;
    }
}

} // namespace cpinf::cli

#ifndef CPINF_IO_HPP
#define CPINF_IO_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cpinf/sequences.hpp"

namespace cpinf {

using Json = nlohmann::ordered_json;

/// Fixed ingestion schema:
///   { "masses": [..], "charges": [..]?, "interaction": "gravitational"|"coulomb",
///     "positions": [[x,y,z],..], "velocities": [[x,y,z],..] }
/// Field names are exact and unknown fields are rejected. `charges` is
/// required for coulomb and rejected otherwise. When `require_state` is
/// false, positions/velocities may be omitted (system-only documents).
struct ParsedDocument {
    BodySystemPtr system;
    std::optional<CartesianState> cartesian;
};

ParsedDocument parse_document(const Json& j, bool require_state);

/// Parse and reduce in one step; positions/velocities required.
AlbouyState parse_state(const Json& j);

/// Serialize a reduced state back to the ingestion schema (positions and
/// velocities already centred). Doubles round-trip exactly.
Json state_to_json(const AlbouyState& s);

Json read_json_file(const std::string& path);

/// One state JSON object per line.
std::vector<AlbouyState> read_jsonl_sequence(std::istream& in);
void write_jsonl_sequence(std::ostream& out, std::span<const AlbouyState> states);

/// Decimal formatting with 17 significant digits (bit-faithful round trips).
std::string format_double(double v);

/// CSV columns, in order: k, z, residual_norm, H, K, I, V, Lx, Ly, Lz, Iz,
/// Kz, lambda_norm, ratio_kplusv, min_pair_dist, min_center_dist. The header
/// row is always emitted; unavailable values print as nan.
void write_diagnostics_csv(std::ostream& out, const SequenceDiagnostics& diag);

Json classification_to_json(const Classification& c);
Json bifurcation_to_json(const std::vector<BifurcationValue>& values);
Json additivity_to_json(const AdditivityReport& report);
Json partition_to_json(const ClusterPartition& part);

} // namespace cpinf

#endif

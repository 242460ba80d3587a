#ifndef HEIS_CERT_IO_HPP
#define HEIS_CERT_IO_HPP

#include "heis/certificates.hpp"
#include "heis/grapher.hpp"

#include <json.hpp>
#include <variant>

namespace heis {

/// Malformed input (bad JSON shape, unknown type label, scalar grammar
/// error, ...). Distinct from MathError so the caller can map it to a
/// usage exit code.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using AnyCertificate = std::variant<DegenerationCertificate, ClosedSetPattern, InvariantCertificate>;

/// {"type":"H05","params":{"λ":"λ"},"excluded":["-1","1","μ=λ"]}
TypeWithConstraints type_from_json(const nlohmann::json &j);

DegenerationCertificate degeneration_from_json(const nlohmann::json &j, const std::string &id);
ClosedSetPattern closed_set_from_json(const nlohmann::json &j, const std::string &id);
InvariantCertificate invariant_from_json(const nlohmann::json &j, const std::string &id);

/// dispatches on the shape: "basis" -> degeneration, "witness_basis" ->
/// closed set, "kind" -> invariant; the certificate id is the file stem
AnyCertificate load_certificate(const std::string &path);

/// {"rows": [["0","1",...], ...]} in the scalar grammar
MatF matrix_from_json(const nlohmann::json &j, bool constants_only = true);
nlohmann::json matrix_to_json(const MatF &M);
MatF load_matrix(const std::string &path);

/// {"dim": n, "parameters": ["λ"], "excluded": [["λ","-1"]],
///  "constants": [{"i":1,"j":2,"k":5,"value":"1"}, ...]}
Algebra algebra_from_json(const nlohmann::json &j);
nlohmann::json algebra_to_json(const Algebra &A);

nlohmann::json verdict_to_json(const Verdict &v);

/// {"nodes":[{"type":…,"level":…}], "edges":[{"from":…,"to":…,"provenance":…}]}
nlohmann::json graph_to_json(const DegenGraph &G);

} // namespace heis

#endif

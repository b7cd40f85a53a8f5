#pragma once

// JSON forms of the pipeline's records. Field order in dumps is the sorted key
// order of nlohmann::json, which keeps every artifact byte-stable.

#include "apiswap/clustering.hpp"
#include "apiswap/detector.hpp"
#include "apiswap/java/surface.hpp"
#include "apiswap/library_miner.hpp"

#include <json.hpp>

namespace apiswap::java {

void to_json(nlohmann::json &j, const MethodDeclaration &d);
void from_json(const nlohmann::json &j, MethodDeclaration &d);
void to_json(nlohmann::json &j, const MethodInvocation &i);
void from_json(const nlohmann::json &j, MethodInvocation &i);
void to_json(nlohmann::json &j, const ImportStatement &s);
void from_json(const nlohmann::json &j, ImportStatement &s);
void to_json(nlohmann::json &j, const FileSurface &f);
void from_json(const nlohmann::json &j, FileSurface &f);

} // namespace apiswap::java

namespace apiswap {

/// Version tag written into every candidates.jsonl record.
inline constexpr int kCandidateSchema = 1;

void to_json(nlohmann::json &j, const LibraryCoordinate &c);
void from_json(const nlohmann::json &j, LibraryCoordinate &c);
void to_json(nlohmann::json &j, const ApiRecord &a);
void from_json(const nlohmann::json &j, ApiRecord &a);
/// Carries "schema": 1; from_json rejects other schema versions.
void to_json(nlohmann::json &j, const CandidateReplacement &c);
void from_json(const nlohmann::json &j, CandidateReplacement &c);
void to_json(nlohmann::json &j, const ConditionTrace &t);
void to_json(nlohmann::json &j, const ReplacementRule &r);
void from_json(const nlohmann::json &j, ReplacementRule &r);

/// Reads a JSON Lines file of candidates. Throws SchemaError naming the line.
std::vector<CandidateReplacement> read_candidates(const std::filesystem::path &path);
std::vector<CandidateReplacement> parse_candidates(std::string_view text);
std::string candidates_to_jsonl(const std::vector<CandidateReplacement> &candidates);
std::string rules_to_jsonl(const std::vector<ReplacementRule> &rules);

/// Reads a required field, raising SchemaError with the field name otherwise.
template <typename T> T required(const nlohmann::json &j, const char *key);

/// One compact JSON document per line.
std::string to_json_line(const nlohmann::json &j);

} // namespace apiswap

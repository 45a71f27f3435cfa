#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"

#include "maslov/cover.hpp"
#include "maslov/qm.hpp"

namespace maslov {

using Json = nlohmann::ordered_json;

/// Deterministic text form: keys in insertion order, two-space indent,
/// doubles as %.17g, non-finite numbers as null.
std::string to_canonical_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);

/// Writes to stdout when path is "-".
void write_text(const std::string& path, const std::string& text, std::ostream& stdout_stream);

// Path files ------------------------------------------------------------------

/// {n, times, samples (row-major), meta {generator, expected_angle}}
Json path_to_json(const CoverElement& g);

/// Schema errors throw InvalidArgument; path invariants throw as in
/// CoverElement::make. Ingested paths are not refinable.
CoverElement path_from_json(const Json& j);

// Results ---------------------------------------------------------------------

Json mu_to_json(const MuValue& v);
Json record_to_json(const PropertyRecord& r);
Json corpus_to_json(const CorpusConfig& c);
Json defect_to_json(const CorpusConfig& c, const DefectScan& scan);
std::string defect_to_csv(const DefectScan& scan);

} // namespace maslov

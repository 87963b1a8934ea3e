#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "entrates/maxcorr.hpp"
#include "entrates/measures.hpp"
#include "entrates/qstate.hpp"
#include "entrates/rates.hpp"
#include "entrates/scans.hpp"

namespace entrates::io {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

/// Compact JSON with keys in byte order and floats at 17 significant digits.
std::string dump_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// {"dim": d, "re": [[...]], "im": [[...]]}; "im" may be omitted for real matrices.
DensityMatrix density_from_json(const Json& j);
Json density_to_json(const DensityMatrix& rho);

/// Density matrix document with optional "dim_a"/"dim_b"; without them the
/// dimension must be a perfect square and both sides get its root.
BipartiteState bipartite_from_json(const Json& j);

/// {"dim": d, "a_re": [[...]], "a_im": [[...]]}.
maxcorr::MaxCorrSpec maxcorr_spec_from_json(const Json& j);
Json maxcorr_spec_to_json(const maxcorr::MaxCorrSpec& spec);

Json to_json(const measures::MeasureReport& r);
Json to_json(const maxcorr::Decomposition& d);
Json to_json(const maxcorr::EofResult& r);
Json to_json(const maxcorr::AdditivityReport& r);
Json to_json(const rates::CycleBounds& b);
Json to_json(const rates::RDiffBounds& r);
Json to_json(const scans::Fig2Report& r);

/// Sidecar metadata for a scan CSV: axes, step, tool version, seed, schema.
Json scan_metadata(const scans::ScanGrid& grid, const std::string& kind, double step, std::uint64_t seed);

}  // namespace entrates::io

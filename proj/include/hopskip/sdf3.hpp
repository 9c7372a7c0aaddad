#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "hopskip/generate.hpp"
#include "hopskip/rational.hpp"
#include "hopskip/sdf.hpp"

namespace hopskip {

/// Sidecar values for one actor; absent fields fall back to the XML (for the
/// execution time) or to the normalized defaults.
struct ActorAnnotation {
  std::optional<std::int64_t> d, w, s;
  std::optional<Rational> p_exe, p_idle, p_sd, p_wu, p_slp;
};

using Annotations = std::map<std::string, ActorAnnotation, std::less<>>;

/// Sidecar JSON: {"schema": 1, "actors": {"<name>": {"d": "4", "p_idle": "0.9", ...}}}.
/// Values are decimal or "num/den" strings (plain JSON numbers are accepted).
Annotations parse_annotations(std::string_view json_text);
std::string write_annotations(const SdfGraph& sdf);

struct Sdf3Options {
  /// Defaults for powers and delays not given by the sidecar.
  AugmentationPolicy defaults;
};

/// Reads the SDF3 subset: <sdf> actors with port rates, channels with
/// srcActor/srcPort/dstActor/dstPort/initialTokens, and
/// sdfProperties/actorProperties/processor/executionTime. Throws ParseError
/// and UnsupportedFeatureError (cyclo-static rate lists).
SdfGraph parse_sdf3(std::string_view xml, const Annotations* annotations = nullptr,
                    const Sdf3Options& options = {});

/// Writes the same subset; execution times go into actorProperties.
std::string write_sdf3(const SdfGraph& sdf);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Loads an SDF3 file with an optional sidecar annotation file.
SdfGraph load_sdf3(const std::filesystem::path& xml_path,
                   const std::optional<std::filesystem::path>& annotation_path = std::nullopt,
                   const Sdf3Options& options = {});

}  // namespace hopskip

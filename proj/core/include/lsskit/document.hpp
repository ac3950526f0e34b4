#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lsskit/coarse.hpp"
#include "lsskit/maps.hpp"
#include "lsskit/property_a.hpp"
#include "lsskit/property_a_scaled.hpp"
#include "lsskit/space.hpp"

namespace lsskit {

inline constexpr const char* kSpaceFormat = "lsskit/1";

/// A parsed space document: ground labels plus exactly one of a metric or a
/// generator list, along with named scales and named maps (label tables whose
/// targets are resolved when the map is used).
struct SpaceDocument {
  GroundPtr ground;
  std::optional<InfMetric> metric;
  std::vector<Scale> generators;  // meaningful only when metric is absent
  std::vector<std::pair<std::string, Scale>> scales;
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> maps;
};

/// Parses a document from JSON text. Errors carry line/column positions for
/// syntax problems and field paths for semantic ones.
SpaceDocument parse_space(const std::string& text, const std::string& origin = "<input>");
SpaceDocument parse_space_file(const std::string& path);

/// Serializes a document; parse(emit(parse(x))) == parse(x), and emission is
/// byte-stable, so round-tripping a file reproduces it exactly.
std::string emit_space(const SpaceDocument& doc);

/// Builds the space a document denotes.
SpacePtr realize(const SpaceDocument& doc);

/// Looks up a named scale; "@points" is the singleton cover and "@maximal"
/// the coarsest uniformly bounded scale of the realized space.
Scale resolve_scale(const SpaceDocument& doc, const SpacePtr& space, const std::string& name);

/// Resolves a named label table from `doc` into a map between two realized
/// spaces.
SpaceMap resolve_map(const SpaceDocument& doc, const SpacePtr& source, const SpacePtr& target,
                     const std::string& name);

/// Subset from a comma-separated label list ("a1,b1"); empty string is the
/// empty subset.
Subset parse_label_list(const GroundPtr& ground, const std::string& csv);

// Witness documents. Scales inside them are either a name (resolved against
// the space document) or an inline array of label arrays.

PropertyAWitness parse_plain_witness(const std::string& text, const SpaceDocument& doc,
                                     const SpacePtr& space, const std::string& origin = "<witness>");
std::string emit_plain_witness(const PropertyAWitness& witness);

ScaledPropertyAWitness parse_scaled_witness(const std::string& text, const SpaceDocument& doc,
                                            const SpacePtr& space,
                                            const std::string& origin = "<witness>");
std::string emit_scaled_witness(const ScaledPropertyAWitness& witness);

SakoWitness parse_sako_witness(const std::string& text, const GroundPtr& ground,
                               const std::string& origin = "<witness>");
std::string emit_sako_witness(const SakoWitness& witness);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace lsskit

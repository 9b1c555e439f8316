#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "laminar/boundary.hpp"
#include "laminar/constructions.hpp"
#include "laminar/lamination.hpp"
#include "laminar/moebius.hpp"

namespace laminar {

// One truncation on disk. Chords are written in the chord_less order with
// every endpoint encoded by BoundaryPoint::encode.
struct LaminationFile {
  std::string name;
  Chart chart = Chart::ExtReal;
  int depth = 0;
  std::vector<Chord> chords;
};

// The three truncations of an elementary collection at one depth, with the
// group generators and the declared cusps.
struct CollectionFile {
  std::string kind;
  int order = 0;
  int depth = 0;
  std::array<LaminationFile, 3> systems;
  std::vector<ChartAction> generators;
  std::vector<BoundaryPoint> cusps;
};

using Document = std::variant<LaminationFile, CollectionFile>;

LaminationFile make_lamination_file(std::string name, Chart chart, int depth, std::vector<Chord> chords);
CollectionFile make_collection_file(const Col3Collection& col, int depth);

// Canonical JSON text, two-space indented with sorted keys and a trailing
// newline. Parsing and re-serializing reproduces the bytes.
std::string serialize(const LaminationFile& file);
std::string serialize(const CollectionFile& file);
std::string serialize(const Document& doc);

// Throws ParseError on malformed JSON or fields.
Document parse_document(std::string_view text);

std::string read_text(const std::filesystem::path& path);
// Writes to a temporary sibling and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace laminar

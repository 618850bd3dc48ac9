#pragma once

/**
 * JSON map files, decomposition reports and SVG rendering.
 *
 * Map file:
 * @code
 * {"field": {"d": 5},
 *  "top":    [{"label": "A", "length": {"a": "-1/2", "b": "1/2", "d": 5}}, {"gap": "1/4"}],
 *  "bottom": [...],
 *  "slopes": {"A": "1"},
 *  "colors": {"A": "#f0c000"}}
 * @endcode
 * Scalars are "p/q" strings, integers, or {"a", "b", "d"} objects for a + b*sqrt(d).
 * "field" and "colors" are optional; missing slopes default to 1. Unknown keys are errors.
 */

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "giet/decomposer.hpp"
#include "giet/ggiet.hpp"
#include "giet/orbit.hpp"

namespace giet {

/// Syntax or schema error. line/column are 1-based and refer to the input text (0 when unknown).
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line, int column);
    int line;
    int column;
};

struct MapFile {
    GGiet map;
    long field = 0;
    std::map<Label, std::string> colors;
    /// True when adjacent or empty gaps in the input were merged away.
    bool gaps_normalized = false;
};

MapFile parse_map(const std::string& text);
MapFile load_map(const std::string& path);
std::string map_to_json(const GGiet& m, const std::map<Label, std::string>& colors = {});

std::string report_to_json(const DecompositionReport& rep);
DecompositionReport parse_report(const std::string& text);
DecompositionReport load_report(const std::string& path);

std::string orbit_to_json(const OrbitRecord& rec);
std::string scalar_to_json(const Scalar& s);
/// Parses one scalar in map-file syntax; field is the map's radicand (0 for rational maps).
Scalar parse_scalar(const std::string& text, long field = 0);

std::string read_file(const std::string& path);

/// Deterministic two-line diagram; regions of the report are tinted when given.
std::string render_svg(const GGiet& m, const DecompositionReport* report = nullptr,
                       const std::map<Label, std::string>& colors = {});

/// "#rrggbb" derived from a hash of the label.
std::string label_color(const Label& a);

}  // namespace giet

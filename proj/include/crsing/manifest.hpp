#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crsing/crlocus.hpp"
#include "crsing/finiteness.hpp"
#include "crsing/resolution.hpp"

namespace crsing {

// Parse or validation failure with a 1-based position in the manifest text.
struct ManifestError : std::runtime_error {
    int line;
    int column;
    ManifestError(const std::string& msg, int line, int column)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"),
          line(line),
          column(column) {}
};

// Raw text value and where its first character sits in the manifest, so
// expression errors can be reported at their manifest position.
struct TextField {
    std::string text;
    int line = 0;
    int column = 0;
};

// Structured manifest: section [manifold] declares the ambient ring and
// either a graph (graph variable plus rho) or a list of real defining
// equations; [map] a polynomial map with optional target ring, image graph
// and base point; [options] the analysis knobs.  Expressions stay textual
// here; build_scene resolves them over the declared rings.
struct Manifest {
    int ambient_dim = 0;  // 0 when omitted: inferred from the variables
    std::vector<std::pair<std::string, bool>> variables;  // name, is_complex
    std::string graph_var;
    TextField rho;
    std::vector<TextField> equations;

    std::vector<TextField> map_components;
    std::vector<std::pair<std::string, bool>> target_variables;
    std::string image_graph_var;
    TextField image_rho;
    std::vector<TextField> base;

    int degree_cap = 8;
    std::uint64_t seed = 1;
    std::string method = "all";
    std::vector<std::vector<TextField>> directions;

    int manifold_line = 0;
    int map_line = 0;
};

// INI-style grammar: [section] headers, key = value lines, '#' comments.
// Keys equation, component and base repeat; expression values must be
// enclosed in double quotes.  Unknown sections or keys are errors.
Manifest parse_manifest(const std::string& text);

// Reads the file and parses it; unreadable paths raise ManifestError at
// line 0.
Manifest load_manifest(const std::string& path);

// Rings, manifolds and map resolved from a manifest.
struct Scene {
    Manifest manifest;
    RingPtr ring;
    std::optional<ManifoldSpec> manifold;
    std::optional<HoloMap> map;
    RingPtr target_ring;  // set when [map] declares target variables
    std::optional<ManifoldSpec> image;
    std::vector<std::vector<Rational>> directions;
    MultiplicityMethod method = MultiplicityMethod::All;
};

// Validates cross-field consistency (dimension counts, variable roles,
// graph slots, map arity) and parses every expression.  All failures are
// ManifestError carrying the offending manifest position.
Scene build_scene(const Manifest& m);

}  // namespace crsing

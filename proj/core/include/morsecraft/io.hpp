#pragma once

#include "morsecraft/assembly.hpp"
#include "morsecraft/lift.hpp"

namespace morsecraft {

/// Facet files: UTF-8 text, one facet per line, vertex ids separated by
/// whitespace, '#' starts a comment line, blank lines ignored.
SimplicialComplex parse_facets(const std::string& text, const std::string& origin = "<input>");
SimplicialComplex read_facet_file(const std::string& path);
std::string facet_text(const SimplicialComplex& K);
void write_facet_file(const std::string& path, const SimplicialComplex& K);

/// Content hash (64-bit FNV-1a, hex) of the canonical facet list; binds
/// certificates to their complex.
std::string complex_hash(const SimplicialComplex& K);

std::string matching_json(const MorseMatching& V);
MorseMatching matching_from_json(const std::string& text, const SimplicialComplex& K);

std::string collapse_json(const CollapseSequence& seq);
CollapseSequence collapse_from_json(const std::string& text);

std::string subdivision_map_json(const SubdivisionMap& m);

/// The three composite specs reference facet files; relative paths are
/// resolved against the JSON file's own directory.
GluingSpec gluing_spec_from_file(const std::string& path);
LocalConstructionTrace trace_from_file(const std::string& path);
HandleDecomposition handles_from_file(const std::string& path);

}  // namespace morsecraft

/*
 * JSON serialization of patterns and reports.  Emission is deterministic
 * (sorted keys, faces ordered by (axis, corner)) so identical inputs yield
 * byte-identical files.
 */
#pragma once

#include <string>

#include "paperfold/cohomology.hpp"
#include "paperfold/crease.hpp"
#include "paperfold/spectral.hpp"
#include "paperfold/substitution.hpp"

namespace paperfold {

std::string to_json(const CreasePattern& p);
CreasePattern crease_pattern_from_json(const std::string& text);

std::string to_json(const SymbolicPattern& p);
SymbolicPattern symbolic_pattern_from_json(const std::string& text);

std::string to_json(const PrimitivityResult& r);
std::string to_json(const CoincidenceReport& r);
std::string to_json(const EquivalenceReport& r);

}  // namespace paperfold

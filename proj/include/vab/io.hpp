#pragma once

#include <string>
#include <vector>

#include "vab/twisted.hpp"

namespace vab {

/// Everything a definition file carries. Coefficients are strings "p/q" (or
/// "p"); tables are sparse tuples over basis labels or indices; omitted tables
/// are zero maps.
struct InputBundle {
    VertexAlgebroid algebroid;
    SectorGrading grading;
    std::vector<FiberSpec> fibers;
    std::vector<std::string> labels_a;
    std::vector<std::string> labels_b;
    std::vector<std::string> warnings; // e.g. auto-normalized rationals
};

InputBundle parse_input_text(const std::string& text, const std::string& origin);
InputBundle parse_input_file(const std::string& path);

} // namespace vab

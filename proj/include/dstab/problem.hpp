#pragma once

#include <optional>
#include <string>

#include "dstab/parameter_box.hpp"
#include "dstab/polynomial.hpp"
#include "dstab/region.hpp"

namespace dstab {

/// A parsed problem file: the uncertain polynomial family, its parameter box,
/// and the root region. When the file omits the nominal point it defaults to
/// the box center; the report echoes which one was used.
struct Problem {
    std::string name;
    UncertainPolynomial poly;
    ParameterBox box;
    bool nominal_from_file = false;
    DRegion region;
    bool declared_multilinear = false;
};

/// Parses and validates a JSON problem document. Throws InputError with a
/// line- or path-anchored message on schema violations.
Problem parse_problem(const std::string& text, const std::string& origin = "problem");

/// Reads the file and parses it.
Problem load_problem(const std::string& path);

}  // namespace dstab

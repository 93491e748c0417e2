#pragma once

#include <optional>
#include <string>

#include "qss/quiver.hpp"
#include "qss/representation.hpp"

namespace qss {

struct Instance {
    Representation rep;
    std::optional<Weight> sigma;
    std::optional<Weight> tau;
};

// Parse the JSON instance format (vertices, arcs, alpha, matrices, optional
// sigma/tau; entries are [re_num, re_den, im_num, im_den] integer strings).
// Throws std::invalid_argument with a descriptive message on any violation.
Instance parse_instance_text(const std::string& text);

// Read a file, or stdin when path is "-".
Instance load_instance(const std::string& path);

// Canonical form: fixed key order, canonicalized rationals as strings,
// 2-space indent, trailing newline. parse -> serialize is the identity on
// canonical files.
std::string serialize_instance(const Instance& inst);

}  // namespace qss

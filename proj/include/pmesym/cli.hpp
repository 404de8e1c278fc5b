#pragma once

// Command-line driver: wires the algebra, factorization, action, and PDE
// modules into reproducible verification jobs with JSON/CSV artifacts.
// Exit codes: 0 all checks pass, 1 a check failed (report still written),
// 2 configuration error.

#include <string>
#include <vector>

#include "pmesym/matgroup.hpp"
#include "pmesym/repn.hpp"

namespace pmesym {

// {"n": 1, "sl2": [4 row-major], "lorentz": [(n+2)^2 row-major]}
GroupElement parse_group_element(const std::string& json_text);
std::string group_element_json_text(const GroupElement& g);

// [{"type":"translation","t":..,"x":[..]}, {"type":"rotation","i":..,"j":..,
//  "theta":..}, {"type":"dilation","eps":..}, {"type":"sl2_upper","a":..,
//  "b":..}, {"type":"conformal","i":..,"eps":..}, {"type":"sl2_lower",
//  "eps":..}, {"type":"generic","sl2":[..],"lorentz":[..]}]
std::vector<ActionStep> parse_word(const std::string& json_text, int n);

int cli_run(int argc, char** argv);

} // namespace pmesym

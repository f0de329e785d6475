#pragma once

#include <string>

#include "kgheun/catalog.hpp"

namespace kgheun::cli {

/// "re" or "re,im".
Complex parse_complex(const std::string& text);

/// Flat JSON record: family.m1_x2, family.m2_x2, V0, V1, V2, x0, sigma ([re, im]).
std::string spec_to_json(const catalog::PotentialSpec& spec);
catalog::PotentialSpec spec_from_json(const std::string& text);
catalog::PotentialSpec spec_from_file(const std::string& path);

}  // namespace kgheun::cli

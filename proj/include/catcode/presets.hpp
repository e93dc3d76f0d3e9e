#pragma once

#include <string>
#include <vector>

#include "catcode/codebook.hpp"

namespace catcode {

struct PresetInfo {
    std::string name;
    std::string description;
    Scheme scheme;
    std::uint64_t n_classes;
};

const std::vector<PresetInfo>& preset_list();
bool is_preset(const std::string& name);
Codebook build_preset(const std::string& name);

} // namespace catcode

#pragma once

#include <string>
#include <vector>

#include "giet/io.hpp"

#ifndef GIET_DATA_DIR
#error "GIET_DATA_DIR must point at the data directory"
#endif

namespace giet::testdata {

inline std::string path(const std::string& name) { return std::string(GIET_DATA_DIR) + "/" + name + ".json"; }

inline GGiet load(const std::string& name) { return load_map(path(name)).map; }

inline const std::vector<std::string>& names() {
    static const std::vector<std::string> n = {"rotation_1_3", "rotation_2_5", "golden_rotation", "cylinder",
                                               "shift",        "periodic_and_minimal", "disco"};
    return n;
}

}  // namespace giet::testdata

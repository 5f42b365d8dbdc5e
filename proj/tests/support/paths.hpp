#pragma once

#include <string>

namespace n905::testing {

inline std::string data_path(const std::string& name) {
    return std::string(N905_DATA_DIR) + "/" + name;
}

}  // namespace n905::testing

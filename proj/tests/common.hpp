#pragma once
#include <fstream>
#include <sstream>
#include <string>

inline std::string fixture(const std::string& name) {
    std::ifstream f(std::string(FIXTURE_DIR) + "/" + name);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

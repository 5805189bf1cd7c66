#include <cstdio>
#include <string>
#include "c2loop/c2loop.h"
#include "json.hpp"

int main(int argc, char** argv) {
    bool quick = argc > 1 && std::string(argv[1]) == "--quick";
    int failed = 0;
    for (int id = 1; id <= c2l_criteria(); ++id) {
        int pass = 0, warn = 0;
        char* s = nullptr;
        int st = c2l_verify_criterion(id, FIXTURE_DIR, quick, &pass, &warn, &s);
        if (st != C2L_OK) {
            std::printf("criterion %2d FAIL error %s: %s\n", id, c2l_status_name(st), c2l_last_error());
            ++failed;
            continue;
        }
        auto j = nlohmann::json::parse(s);
        c2l_free_string(s);
        const char* verdict = !pass ? "FAIL" : warn ? "WARN" : "PASS";
        std::printf("criterion %2d %s %s (%.2f s) %s\n", id, verdict, j["name"].get<std::string>().c_str(),
                    j["seconds"].get<double>(), j["detail"].dump().c_str());
        failed += !pass;
    }
    std::printf("%d of %d criteria failed\n", failed, c2l_criteria());
    return failed ? 1 : 0;
}

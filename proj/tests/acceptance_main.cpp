#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "morava/acceptance.hpp"

// One line per criterion; exit status 1 when any criterion is red.
int main(int argc, char** argv) {
    morava::AcceptanceOptions opt;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--no-stretch")) opt.stretch = false;
        else if (!std::strcmp(argv[i], "--serial")) opt.parallel = false;
        else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) opt.seed = std::strtoull(argv[++i], nullptr, 10);
        else opt.only.push_back(std::atoi(argv[i]));
    }
    int red = 0;
    for (const auto& r : morava::run_acceptance(opt)) {
        std::printf("%s\n", morava::format_line(r).c_str());
        red += !r.pass;
    }
    std::printf("%d of %zu criteria red\n", red, opt.only.empty() ? (size_t)9 : opt.only.size());
    return red ? 1 : 0;
}

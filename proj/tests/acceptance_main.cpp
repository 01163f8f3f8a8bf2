// Acceptance suite: runs every criterion at its pinned tolerance and prints
// one line per criterion. Exit code 0 when everything passes, 2 otherwise.
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "concave_field/verification.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 7;
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--seed" && i + 1 < argc) {
            seed = std::strtoull(argv[++i], nullptr, 10);
        } else if (arg == "--only" && i + 1 < argc) {
            which.push_back(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: %s [--seed S] [--only N]...\n", argv[0]);
            return 1;
        }
    }
    const auto results = concave_field::run_acceptance(seed, which);
    bool all_pass = true;
    for (const auto& r : results) {
        std::printf("%s criterion %2d: %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds);
        for (const auto& t : r.reports) {
            std::printf("     %s %-34s stat=%-12.6g bound=%-12.6g n=%zu%s%s\n",
                        t.pass ? "ok  " : "FAIL", t.name.c_str(), t.statistic, t.critical,
                        t.sample_size, t.detail.empty() ? "" : "  ", t.detail.c_str());
        }
        all_pass = all_pass && r.pass;
    }
    std::printf("%s\n", all_pass ? "ACCEPTANCE: all criteria passed"
                                 : "ACCEPTANCE: at least one criterion failed");
    return all_pass ? 0 : 2;
}

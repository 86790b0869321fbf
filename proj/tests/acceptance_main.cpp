// One line per acceptance criterion; exit status is the number of failures.
#include "mixfrob/acceptance.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
    mixfrob::AcceptanceOptions opt;
    if (const char* s = std::getenv("MIXFROB_SEED")) opt.seed = std::strtoull(s, nullptr, 10);
    std::vector<mixfrob::CriterionResult> results;
    if (argc > 1) {
        for (int i = 1; i < argc; ++i) results.push_back(mixfrob::run_criterion(std::atoi(argv[i]), opt));
    } else {
        results = mixfrob::run_acceptance(opt);
    }
    int failed = 0;
    for (const auto& r : results) {
        std::printf("criterion %d: %s  [%s]  %.2fs  %s\n", r.id, r.ok ? "PASS" : "FAIL", r.title.c_str(), r.seconds,
                    r.detail.c_str());
        if (!r.ok) ++failed;
    }
    std::printf("%d/%zu criteria pass\n", static_cast<int>(results.size()) - failed, results.size());
    return failed == 0 ? 0 : 1;
}

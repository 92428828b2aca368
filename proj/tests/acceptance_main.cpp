#include "minkhelix/acceptance.hpp"

#include <chrono>
#include <iostream>

int main()
{
    const auto start = std::chrono::steady_clock::now();
    const auto results = minkhelix::run_acceptance();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool all = true;
    for (const auto& r : results) {
        std::cout << minkhelix::format_result_line(r) << '\n';
        for (const auto& f : r.failures) std::cout << "    " << f << '\n';
        all = all && r.passed;
    }
    std::cout << (all ? "all criteria passed" : "criteria failed") << " in " << seconds << " s\n";
    return all ? 0 : 1;
}

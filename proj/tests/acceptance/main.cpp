// Acceptance driver: one line per criterion, exit status 1 if any blocking
// criterion fails.
#include <chrono>
#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "suites.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"erosim acceptance suites"};
    std::vector<std::string> suites;
    app.add_option("--suite", suites, "combinatorial | killed | timescale | limit-law | variants (default: all)")
        ->check(CLI::IsMember(erosim::acceptance::suite_names()));
    CLI11_PARSE(app, argc, argv);
    if (suites.empty())
        suites = erosim::acceptance::suite_names();

    bool ok = true;
    for (const auto& s : suites) {
        auto t0 = std::chrono::steady_clock::now();
        std::cout << "== suite " << s << std::endl;
        erosim::acceptance::run_suite(s, [&](const erosim::acceptance::Criterion& c) {
            std::cout << erosim::acceptance::format(c) << std::endl;
            if (c.blocking && !c.pass)
                ok = false;
        });
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "== suite " << s << " done in " << static_cast<long>(dt) << " s" << std::endl;
    }
    return ok ? 0 : 1;
}

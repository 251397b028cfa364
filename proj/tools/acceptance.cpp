// Runs the acceptance criteria; one line per criterion, exit 1 on any failure.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "catdga/suites.hpp"

using namespace catdga;

int main(int argc, char** argv) {
    bool verbose = false;
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "-v") verbose = true;
        else only.push_back(std::atoi(argv[i]));
    }
    int failed = 0;
    for (const auto& s : suites()) {
        if (!only.empty() && std::find(only.begin(), only.end(), s.number) == only.end()) continue;
        auto t0 = std::chrono::steady_clock::now();
        Report r;
        std::string err;
        try {
            r = run_criterion(s.number);
        } catch (const std::exception& e) {
            err = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = err.empty() && r.passed();
        int pass = 0, fail = 0, info = 0;
        for (const auto& c : r.checks) (c.status == Status::pass ? pass : c.status == Status::fail ? fail : info)++;
        std::printf("criterion %2d %-15s %s  (%d pass, %d fail, %d info, %.1fs)\n", s.number, s.name.c_str(), ok ? "PASS" : "FAIL", pass, fail,
                    info, secs);
        if (!err.empty()) std::printf("    error: %s\n", err.c_str());
        for (const auto& c : r.checks)
            if (c.status == Status::fail || verbose)
                std::printf("    [%s] %s: expected %s, got %s\n", to_string(c.status), c.name.c_str(), c.expected.c_str(), c.got.c_str());
        std::fflush(stdout);
        if (!ok) ++failed;
    }
    return failed ? 1 : 0;
}

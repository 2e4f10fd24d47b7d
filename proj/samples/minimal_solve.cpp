// Builds the nine-vertex example graph a..i and prints its minimum cover.
#include <iostream>

#include "cavc/cavc.hpp"

int main() {
    // a=0 b=1 c=2 d=3 e=4 f=5 g=6 h=7 i=8
    auto g = cavc::buildCSR({{0, 1}, {1, 2}, {1, 4}, {3, 4}, {4, 5}, {4, 7}, {6, 7}, {7, 8}}, 9);

    cavc::SolverConfig cfg;
    cfg.recordCover = true;
    auto result = cavc::solve(g, cfg);

    std::cout << "minimum vertex cover size: " << result.coverSize << "\ncover:";
    for (auto v : *result.cover) std::cout << ' ' << static_cast<char>('a' + v);
    std::cout << '\n';
}

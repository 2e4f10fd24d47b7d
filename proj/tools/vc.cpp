// vc: command-line driver for the vertex cover solver.
//
//   vc --mode mvc graph.mtx
//   vc --mode pvc -k 5 --workers 8 graph.txt
//   vc --no-components --deterministic --stats graph.txt
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cavc/cavc.hpp"
#include "report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Exact minimum / parameterized vertex cover solver"};

    std::string path;
    std::string mode = "mvc";
    std::string format = "auto";
    long long k = -1;
    unsigned workers = 0;
    int width = 0;
    double timeout = 0;
    bool noComponents = false, noRootReduce = false, noBounds = false, noCrown = false;
    bool noLoadBalance = false, deterministic = false, recordCover = false, withStats = false;

    app.add_option("graph", path, "Graph file (edge list or MatrixMarket)")->required();
    app.add_option("--mode", mode, "Problem variant")->check(CLI::IsMember({"mvc", "pvc"}));
    app.add_option("-k", k, "Cover size limit for pvc")->check(CLI::NonNegativeNumber);
    app.add_option("--workers", workers, "Worker threads (default: hardware parallelism)")->check(CLI::PositiveNumber);
    app.add_option("--format", format, "Input format")->check(CLI::IsMember({"auto", "edgelist", "mtx"}));
    app.add_flag("--no-components", noComponents, "Disable branching on components");
    app.add_flag("--no-root-reduce", noRootReduce, "Disable root reduction and subgraph induction");
    app.add_flag("--no-bounds", noBounds, "Disable non-zero degree bounds");
    app.add_flag("--no-crown", noCrown, "Disable the crown rule at the root");
    app.add_flag("--no-load-balance", noLoadBalance, "Static subtree split, no shared worklist");
    app.add_flag("--deterministic", deterministic, "Single worker, strict depth-first");
    app.add_option("--width", width, "Force the degree array width")->check(CLI::IsMember({8, 16, 32}));
    app.add_flag("--record-cover", recordCover, "Emit the cover vertices");
    app.add_flag("--stats", withStats, "Emit search statistics");
    app.add_option("--timeout", timeout, "Stop after this many seconds")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    if (mode == "pvc" && k < 0) {
        std::cerr << "error: --mode pvc requires -k\n";
        return 2;
    }

    cavc::SolverConfig cfg;
    cfg.mode = mode == "pvc" ? cavc::Mode::PVC : cavc::Mode::MVC;
    cfg.k = k < 0 ? 0 : k;
    cfg.workers = workers;
    cfg.enableComponents = !noComponents;
    cfg.enableRootReduce = !noRootReduce;
    cfg.enableBounds = !noBounds;
    cfg.enableCrown = !noCrown;
    cfg.loadBalance = !noLoadBalance;
    cfg.deterministic = deterministic;
    cfg.recordCover = recordCover;
    if (width != 0) cfg.degreeWidthOverride = static_cast<cavc::DegreeWidth>(width);
    if (timeout > 0) cfg.timeLimitSeconds = timeout;

    auto fmt = format == "mtx"        ? cavc::GraphFormat::MatrixMarket
               : format == "edgelist" ? cavc::GraphFormat::EdgeList
                                      : cavc::GraphFormat::Auto;
    try {
        auto graph = cavc::loadGraph(path, fmt);
        auto result = cavc::solve(graph, cfg);
        auto doc = cavc::tools::resultDocument(result, cfg, withStats);
        std::cout << doc.dump(2) << '\n';
    } catch (const cavc::ParseError& e) {
        std::cerr << "error: malformed graph '" << path << "': " << e.what() << '\n';
        return 3;
    } catch (const cavc::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const cavc::ResourceError& e) {
        std::cerr << "error: out of resources: " << e.what() << '\n';
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: internal failure: " << e.what() << '\n';
        return 6;
    }
    return 0;
}

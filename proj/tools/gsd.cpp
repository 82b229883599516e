// gsd.cpp — command-line entry point.
// Exit codes: 0 success, 1 usage error, 2 computational failure.

#include <iostream>

#include "gsd/cli.hpp"

int main(int argc, char** argv) {
    gsd::RunConfig cfg;
    auto app = gsd::make_cli_app(cfg);
    try {
        app->parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app->exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app->exit(e);
    } catch (const CLI::ParseError& e) {
        app->exit(e);
        return 1;
    }
    return gsd::run_command(cfg, std::cout, std::cerr);
}

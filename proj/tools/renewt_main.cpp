#include <vector>

#include "renewt/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return renewt::cli::run(args);
}

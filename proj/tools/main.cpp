#include <string>
#include <vector>

#include "causaljam/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return causaljam::run_cli(args);
}

#include <iostream>
#include <vector>

#include "efx/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return efx::run_cli(args, std::cout, std::cerr);
}

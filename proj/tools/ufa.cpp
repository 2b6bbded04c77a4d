#include <iostream>
#include <string>
#include <vector>

#include "ufa/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ufa::cli::run(std::move(args), std::cout, std::cerr);
}

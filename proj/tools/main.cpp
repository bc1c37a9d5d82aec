#include <iostream>

#include "cyberterrain/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return cyberterrain::run_cli(args, std::cout, std::cerr);
}

#include <iostream>

#include "spinlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return spinlab::run_cli(args, std::cout, std::cerr);
}

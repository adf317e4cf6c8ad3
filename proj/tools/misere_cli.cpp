#include <iostream>
#include <string>
#include <vector>

#include "misere/Cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return misere::run_command(args, std::cout, std::cerr);
}

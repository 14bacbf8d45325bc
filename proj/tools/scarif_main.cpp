#include <iostream>
#include <string>
#include <vector>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return scarif::cli::run(args, std::cout, std::cerr);
}

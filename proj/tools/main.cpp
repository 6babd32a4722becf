#include <iostream>
#include <string>
#include <vector>

#include "anisolib/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return anisolib::run_cli(args, std::cout, std::cerr);
}

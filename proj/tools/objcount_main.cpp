#include <iostream>
#include <string>
#include <vector>

#include "objcount/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return objcount::cli::run(args, std::cout, std::cerr);
}

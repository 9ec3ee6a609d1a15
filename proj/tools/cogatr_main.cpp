#include <iostream>
#include <string>
#include <vector>

#include "cogatr/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return cogatr::cli::main_entry(args, std::cout, std::cerr);
}

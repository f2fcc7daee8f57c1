#include <iostream>

#include "cpinf/cli.hpp"

int main(int argc, char** argv) {
    return cpinf::cli::run(argc, argv, std::cout, std::cerr);
}

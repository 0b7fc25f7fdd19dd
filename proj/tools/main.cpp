#include <iostream>

#include "bellsteer/cli.hpp"

int main(int argc, char** argv) {
    return bellsteer::run_cli(argc, argv, std::cout, std::cerr);
}

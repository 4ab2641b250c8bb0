#include <iostream>

#include "smellscan/cli.hpp"

int main(int argc, char** argv) {
    return smellscan::run_cli(argc, argv, std::cout, std::cerr);
}

#include <iostream>

#include "totpos/cli.hpp"

int main(int argc, char** argv) {
    return totpos::cli::run(argc, argv, std::cout, std::cerr);
}

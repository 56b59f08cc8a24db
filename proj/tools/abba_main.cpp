#include <iostream>

#include "abba/cli.hpp"

int main(int argc, char** argv) {
    return abba::cli::run(argc, argv, std::cout, std::cerr);
}

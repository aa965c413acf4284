#include <iostream>

#include "gaugedyn/cli.hpp"

int main(int argc, char** argv) {
    return gaugedyn::cli_main(argc, argv, std::cout, std::cerr);
}

#include "run_config.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return twave::cli::run_cli(argc, argv, std::cout, std::cerr);
}

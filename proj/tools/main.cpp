#include <iostream>

#include "gnsbound/cli.hpp"

int main(int argc, char** argv) { return gnsbound::cli::run(argc, argv, std::cout, std::cerr); }

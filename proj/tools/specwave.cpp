#include <iostream>

#include "specwave/cli.hpp"

int main(int argc, char** argv) { return specwave::cli::main(argc, argv, std::cout, std::cerr); }

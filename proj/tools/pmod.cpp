#include <iostream>

#include "pmod/cli/commands.hpp"

int main(int argc, char** argv) { return pmod::cli::run(argc, argv, std::cout, std::cerr); }

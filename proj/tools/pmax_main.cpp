#include <iostream>

#include "pmax/cli/commands.hpp"

int main(int argc, char** argv) { return pmax::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "fog/cli/commands.hpp"

int main(int argc, char** argv) { return fog::cli::run_cli(argc, argv, std::cout, std::cerr); }

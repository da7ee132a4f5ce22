#include <iostream>

#include "bsent/cli/commands.hpp"

int main(int argc, char** argv) { return bsent::cli::run_cli(argc, argv, std::cout, std::cerr); }

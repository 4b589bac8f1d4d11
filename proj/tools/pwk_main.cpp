#include <iostream>

#include "pwk/cli/commands.hpp"

int main(int argc, char** argv) { return pwk::cli::cli_main(argc, argv, std::cout, std::cerr); }

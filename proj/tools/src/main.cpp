#include <iostream>

#include "resd/cli/commands.hpp"

int main(int argc, char** argv) { return resd::cli::run(argc, argv, std::cout, std::cerr); }

#include "hydrion/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hydrion::cli::main_entry(argc, argv, std::cout, std::cerr); }

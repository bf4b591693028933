#include "fsvd/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fsvd::cli::main_entry(argc, argv, std::cout, std::cerr); }

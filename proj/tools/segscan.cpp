#include "segscan/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return segscan::cli::run(argc, argv, std::cout, std::cerr); }

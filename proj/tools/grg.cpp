#include <iostream>

#include "grg/cli.hpp"

int main(int argc, char** argv) { return grg::cli::run(argc, argv, std::cout, std::cerr); }

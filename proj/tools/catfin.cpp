#include "catfin/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return catfin::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "thetacalc/cli.hpp"

int main(int argc, char** argv) { return thetacalc::cli::run(argc, argv, std::cout, std::cerr); }

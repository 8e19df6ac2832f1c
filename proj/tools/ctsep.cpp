#include <iostream>

#include "ctsep/cli.hpp"

int main(int argc, char** argv) { return ctsep::cli::run(argc, argv, std::cout, std::cerr); }

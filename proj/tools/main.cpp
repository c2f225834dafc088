#include <iostream>

#include "fv1d/cli.hpp"

int main(int argc, char** argv) { return fv1d::cli::run(argc, argv, std::cout, std::cerr); }
